/* Copyright 2026 The dlgram Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

// Meta-grammatical coordination.
//
// Each conjunction edge conj(N,M) posts a constraint: some Cat(Z,N) must be
// parallel to a Cat(M,P), and then Cat(Z,P) holds. After every closure layer
// the constraint looks at complete edges adjacent to the conjunction,
// nearest first, predicts the parallel constituent on the other side and
// joins the two by c-unification of their arguments.

#pragma once

#include <functional>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "dlgram/engine.hpp"
#include "dlgram/grammar.hpp"

namespace dlgram {

enum class CandidateSide { LeftComplete, RightComplete };

struct Candidate {
  CandidateSide side;
  std::string category;
  EdgeId edge;
  bool tried = false;
};

enum class ConstraintStatus { Suspended, Resolved, Exhausted };

std::string to_string(ConstraintStatus s);

struct Resolution {
  EdgeId source;
  EdgeId target;
  EdgeId combined;
};

struct CoordConstraint {
  std::size_t id = 0;
  EdgeId conj_edge = 0;
  std::size_t conj_start = 0;  // N
  std::size_t conj_end = 0;    // M
  std::string connective;
  std::vector<Candidate> agenda;
  ConstraintStatus status = ConstraintStatus::Suspended;
  std::vector<Resolution> resolutions;
};

using TraceSink = std::function<void(const std::string&)>;

struct CoordinationOptions {
  /// Try every candidate and keep every resolution instead of stopping at
  /// the first one.
  bool all_coord = false;
  PredictOptions predict;
};

/// Rebuilds the agenda from the chart: complete edges ending at N, nearest
/// start first, then complete edges starting at M, nearest end first.
/// Candidates already tried stay marked.
void refresh_agenda(CoordConstraint& c, const Chart& chart, const Grammar& g,
                    const std::set<std::string>& excluded = {});

/// Joins two parallel edges around a conjunction into one edge spanning
/// both. The result is not inserted; its provenance names left and right as
/// source and target.
Edge combine(const Edge& left, const Edge& right, std::string_view conn,
             const Grammar& g);

/// Categories the grammar already coordinates with explicit rules: heads of
/// rules whose body contains the conjunction category, and the body items
/// next to it. Meta-coordination leaves these to the grammar. With a
/// connective, only rules whose conjunction item accepts it count.
std::set<std::string> grammar_coordinated_categories(
    const Grammar& g, std::optional<std::string> connective = std::nullopt);

class Coordinator {
 public:
  Coordinator(const Grammar& g, CoordinationOptions opts, TraceSink trace = {});

  /// Posts one constraint per conjunction edge that has none yet.
  std::vector<std::size_t> post(const Chart& chart);

  /// Tries untried candidates in agenda order. Returns the combined edge of
  /// the first success.
  std::optional<EdgeId> attempt(CoordConstraint& c, Chart& chart);

  void after_layer(Chart& chart, std::size_t layer);
  bool at_fixpoint(Chart& chart, std::size_t layer);

  ClosureHooks hooks();

  const std::vector<CoordConstraint>& constraints() const { return constraints_; }
  CoordConstraint& constraint(std::size_t id) { return constraints_.at(id - 1); }

 private:
  void log(const std::string& line) const {
    if (trace_) trace_(line);
  }
  bool consumed_by_grammar(const CoordConstraint& c, const Chart& chart) const;
  bool has_full_parse(const Chart& chart) const;
  void step(CoordConstraint& c, Chart& chart);

  const Grammar& g_;
  CoordinationOptions opts_;
  TraceSink trace_;
  std::vector<CoordConstraint> constraints_;
  std::set<EdgeId> posted_;
  bool revived_ = false;
};

}  // namespace dlgram
