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

// Bottom-up chart parsing of Datalog grammars.
//
// The input string is asserted as word facts 'D'(w, i, i+1) forming layer 1.
// close() then derives layer k+1 from every rule seating that uses at least
// one edge of layer k (semi-naive evaluation) until a layer comes out empty.
// Edges are deduplicated up to variable renaming. predict() runs a top-down
// recursive descent anchored at one position, filling at most gap_budget
// missing constituents with zero-width gap edges modelled on a source
// constituent.

#pragma once

#include <functional>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <variant>
#include <vector>

#include "dlgram/grammar.hpp"
#include "dlgram/term.hpp"

namespace dlgram {

using EdgeId = std::size_t;

/// Category of the word facts.
inline const std::string kWordCategory = "'D'";

struct FromInput {};
struct FromLexicalRule {
  RuleId rule;
  std::vector<EdgeId> words;
};
struct FromRule {
  RuleId rule;
  std::vector<EdgeId> children;
};
/// Built by predict(). Gap edges have no rule and no children.
struct FromPrediction {
  std::optional<RuleId> rule;
  std::vector<EdgeId> children;
  bool gap = false;
};
struct FromCoordination {
  std::size_t constraint;
  EdgeId source;
  EdgeId target;
};

using Provenance = std::variant<FromInput, FromLexicalRule, FromRule,
                                FromPrediction, FromCoordination>;

struct Edge {
  EdgeId id = 0;
  std::string category;
  std::vector<Term> args;
  std::size_t start = 0;
  std::size_t end = 0;
  std::size_t layer = 0;
  Provenance provenance = FromInput{};
  /// Arguments of each body item as instantiated in this derivation; they
  /// share variables with `args`. Empty entries for terminal items.
  std::vector<std::vector<Term>> body_args;
  /// True if the edge is a gap or was built on top of one.
  bool has_gap = false;

  bool is_gap() const;
  bool is_word() const { return category == kWordCategory; }
  /// Child edges in surface order.
  std::vector<EdgeId> children() const;
};

/// `cat(args,start,end)`, with canonical variable names.
std::string format_edge(const Edge& e);
std::string format_provenance(const Edge& e);

class ChartError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class LayerLimitExceeded : public std::runtime_error {
 public:
  explicit LayerLimitExceeded(std::size_t cap);
};

/// Append-only edge store with variant deduplication and positional indexes.
class Chart {
 public:
  explicit Chart(std::vector<std::string> tokens);

  const std::vector<std::string>& tokens() const { return tokens_; }
  std::size_t length() const { return tokens_.size(); }

  /// Inserts the edge into the current layer unless a variant with the same
  /// category and span exists. Returns the id of the stored edge and whether
  /// it was newly inserted.
  std::pair<EdgeId, bool> add(Edge e);
  std::optional<EdgeId> find_variant(const std::string& category,
                                     std::size_t start, std::size_t end,
                                     std::span<const Term> args) const;

  const Edge& edge(EdgeId id) const { return edges_.at(id); }
  const std::vector<Edge>& edges() const { return edges_; }
  std::size_t size() const { return edges_.size(); }

  std::span<const EdgeId> starting_at(const std::string& category,
                                      std::size_t pos) const;
  std::span<const EdgeId> ending_at(const std::string& category,
                                    std::size_t pos) const;
  std::span<const EdgeId> of_category(const std::string& category) const;

  /// Layers are numbered from 1. The input words form layer 1.
  std::size_t layer_count() const { return layers_.size(); }
  std::span<const EdgeId> layer(std::size_t k) const { return layers_.at(k - 1); }
  void open_layer() { layers_.emplace_back(); }
  void drop_empty_layer();

  /// Called after every successful insertion.
  void set_observer(std::function<void(const Edge&)> f) { observer_ = std::move(f); }

 private:
  using PosKey = std::pair<std::string, std::size_t>;
  struct SpanKey {
    std::string category;
    std::size_t start;
    std::size_t end;
    friend auto operator<=>(const SpanKey&, const SpanKey&) = default;
  };

  std::vector<std::string> tokens_;
  std::vector<Edge> edges_;
  std::vector<std::vector<EdgeId>> layers_;
  std::map<SpanKey, std::unordered_map<std::string, EdgeId>> variants_;
  std::map<PosKey, std::vector<EdgeId>> by_start_;
  std::map<PosKey, std::vector<EdgeId>> by_end_;
  std::map<std::string, std::vector<EdgeId>> by_category_;
  std::function<void(const Edge&)> observer_;
};

/// Builds a chart whose first layer holds one word fact per token.
Chart assert_input(std::span<const std::string> tokens);

/// All edges derivable by `rule` from chart edges, seated left to right on
/// contiguous spans, using at least one edge from `delta`. Gap edges never
/// take part. The returned edges are not inserted.
std::vector<Edge> match_rule(const Rule& rule, std::span<const EdgeId> delta,
                             const Chart& chart);

struct ClosureHooks {
  /// Runs after each non-empty layer; may add edges to that layer.
  std::function<void(Chart&, std::size_t layer)> after_layer;
  /// Runs when a layer comes out empty; returns true if it added edges to
  /// it, in which case evaluation continues.
  std::function<bool(Chart&, std::size_t layer)> at_fixpoint;
};

struct ClosureOptions {
  std::size_t layer_cap = 64;
};

/// Semi-naive closure. Throws LayerLimitExceeded past the layer cap.
void close(Chart& chart, const Grammar& g, const ClosureHooks& hooks = {},
           const ClosureOptions& opts = {});

enum class Direction { Rightward, Leftward };

struct PredictOptions {
  int gap_budget = 1;
  int depth_cap = 16;
};

/// A constituent inside a derivation tree, with its arguments as
/// instantiated relative to the root edge's variables.
struct Constituent {
  EdgeId edge;
  std::string category;
  std::vector<Term> args;
  std::size_t depth;
  std::size_t start;
  std::size_t end;
};

/// Every proper constituent below `root`, pre-order.
std::vector<Constituent> constituents(const Chart& chart, EdgeId root);

/// Top-down prediction of `category` touching `anchor`: starting there when
/// rightward, ending there when leftward. Missing body constituents become
/// zero-width gaps whose arguments come from the deepest, rightmost
/// constituent of the same category inside `source` (abstracted over the
/// declared scope argument, or fresh when none is declared). On success all
/// predicted edges are added to the chart and the root's id is returned;
/// on failure the chart is untouched.
std::optional<EdgeId> predict(const Grammar& g, Chart& chart,
                              const std::string& category, std::size_t anchor,
                              Direction dir, EdgeId source,
                              const PredictOptions& opts = {});

struct Derivation {
  EdgeId edge;
  std::vector<Derivation> children;
};

Derivation derivation(const Chart& chart, EdgeId root);

struct ParseResult {
  EdgeId root;
  Term logical_form;
  Derivation derivation;
  std::size_t layer_count = 0;
  std::vector<std::string> constraint_log;
};

/// The logical form carried by a start edge: its single argument, the
/// category name when it has none, or cat(args...) otherwise.
Term logical_form(const Edge& root);

/// One result per complete start-category edge spanning the whole input.
std::vector<ParseResult> extract(const Chart& chart, const Grammar& g);

}  // namespace dlgram
