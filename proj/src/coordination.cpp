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

#include "dlgram/coordination.hpp"

#include <algorithm>
#include <map>

namespace dlgram {

std::string to_string(ConstraintStatus s) {
  switch (s) {
    case ConstraintStatus::Suspended: return "suspended";
    case ConstraintStatus::Resolved: return "resolved";
    case ConstraintStatus::Exhausted: return "exhausted";
  }
  return "?";
}

namespace {

bool eligible(const Edge& e, const Grammar& g,
              const std::set<std::string>& excluded) {
  return !e.is_word() && !e.is_gap() && !e.has_gap &&
         e.category != g.conj_category && !excluded.count(e.category);
}

}  // namespace

void refresh_agenda(CoordConstraint& c, const Chart& chart, const Grammar& g,
                    const std::set<std::string>& excluded) {
  std::map<EdgeId, bool> tried;
  for (const auto& cand : c.agenda) tried[cand.edge] = cand.tried;

  std::vector<Candidate> left;
  std::vector<Candidate> right;
  for (const Edge& e : chart.edges()) {
    if (!eligible(e, g, excluded)) continue;
    if (e.end == c.conj_start && e.start < c.conj_start)
      left.push_back({CandidateSide::LeftComplete, e.category, e.id, tried[e.id]});
    else if (e.start == c.conj_end && e.end > c.conj_end)
      right.push_back({CandidateSide::RightComplete, e.category, e.id, tried[e.id]});
  }
  std::stable_sort(left.begin(), left.end(), [&](const Candidate& a, const Candidate& b) {
    return chart.edge(a.edge).start > chart.edge(b.edge).start;
  });
  std::stable_sort(right.begin(), right.end(), [&](const Candidate& a, const Candidate& b) {
    return chart.edge(a.edge).end < chart.edge(b.edge).end;
  });
  c.agenda = std::move(left);
  c.agenda.insert(c.agenda.end(), right.begin(), right.end());
}

Edge combine(const Edge& left, const Edge& right, std::string_view conn,
             const Grammar& g) {
  if (left.category != right.category)
    throw std::logic_error("combine: categories differ: " + left.category +
                           " vs " + right.category);
  const auto arity = g.arity(left.category);
  if (left.args.size() != right.args.size() ||
      (arity && *arity != left.args.size()))
    throw std::logic_error("combine: arity mismatch for " + left.category);

  Substitution s;
  std::vector<Term> parts;
  for (std::size_t i = 0; i < left.args.size(); ++i) {
    auto [t, next] = c_unify(left.args[i], right.args[i], conn, s);
    parts.push_back(std::move(t));
    s = std::move(next);
  }
  Edge e;
  e.category = left.category;
  e.args = dlgram::apply(s, parts);
  e.start = left.start;
  e.end = right.end;
  e.provenance = FromCoordination{0, left.id, right.id};
  return e;
}

std::set<std::string> grammar_coordinated_categories(
    const Grammar& g, std::optional<std::string> connective) {
  std::set<std::string> out;
  for (const auto& r : g.rules) {
    for (std::size_t i = 0; i < r.body.size(); ++i) {
      const auto* nt = std::get_if<NonTerminal>(&r.body[i]);
      if (!nt || nt->category != g.conj_category) continue;
      if (connective && nt->args.size() == 1 &&
          !unify(nt->args[0], Term::constant(*connective), {}))
        continue;
      out.insert(r.head.category);
      for (std::size_t j : {i - 1, i + 1}) {
        if (j >= r.body.size()) continue;  // wraps for i == 0
        if (const auto* adj = std::get_if<NonTerminal>(&r.body[j]))
          out.insert(adj->category);
      }
    }
  }
  out.erase(g.conj_category);
  return out;
}

Coordinator::Coordinator(const Grammar& g, CoordinationOptions opts,
                         TraceSink trace)
    : g_(g),
      opts_(opts),
      trace_(std::move(trace)) {}

std::vector<std::size_t> Coordinator::post(const Chart& chart) {
  std::vector<std::size_t> out;
  const auto ids = chart.of_category(g_.conj_category);
  for (EdgeId id : std::vector<EdgeId>(ids.begin(), ids.end())) {
    if (!posted_.insert(id).second) continue;
    const Edge& e = chart.edge(id);
    if (e.has_gap || std::holds_alternative<FromPrediction>(e.provenance))
      continue;
    if (e.args.size() != 1 || !e.args[0].is_constant() ||
        !g_.connectives.count(e.args[0].name())) {
      log("conjunction " + format_edge(e) + " carries no declared connective");
      continue;
    }
    CoordConstraint c;
    c.id = constraints_.size() + 1;
    c.conj_edge = id;
    c.conj_start = e.start;
    c.conj_end = e.end;
    c.connective = e.args[0].name();
    constraints_.push_back(c);
    out.push_back(c.id);
    log("C" + std::to_string(c.id) + ": posted for " + format_edge(e) +
        " N=" + std::to_string(c.conj_start) + " M=" +
        std::to_string(c.conj_end) + " connective=" + c.connective);
  }
  return out;
}

std::optional<EdgeId> Coordinator::attempt(CoordConstraint& c, Chart& chart) {
  const std::string tag = "C" + std::to_string(c.id) + ": ";
  std::optional<EdgeId> first;
  bool tried_any = false;
  for (auto& cand : c.agenda) {
    if (cand.tried) continue;
    cand.tried = true;
    tried_any = true;

    const Edge source = chart.edge(cand.edge);
    const bool left = cand.side == CandidateSide::LeftComplete;
    std::string line = tag + "try " + (left ? "left-complete " : "right-complete ") +
                       format_edge(source) +
                       (left ? " Z=" + std::to_string(source.start)
                             : " P=" + std::to_string(source.end));

    auto target = predict(g_, chart, cand.category,
                          left ? c.conj_end : c.conj_start,
                          left ? Direction::Rightward : Direction::Leftward,
                          cand.edge, opts_.predict);
    if (!target) {
      log(line + ": failed");
      continue;
    }
    const Edge predicted = chart.edge(*target);
    log(line + ": predicted e" + std::to_string(predicted.id) + " " +
        format_edge(predicted));

    Edge joined = left ? combine(source, predicted, c.connective, g_)
                       : combine(predicted, source, c.connective, g_);
    joined.provenance = FromCoordination{c.id, source.id, predicted.id};
    const auto [cid, inserted] = chart.add(std::move(joined));
    c.resolutions.push_back({source.id, predicted.id, cid});
    c.status = ConstraintStatus::Resolved;
    log(tag + "combined e" + std::to_string(source.id) + " + e" +
        std::to_string(predicted.id) + " -> e" + std::to_string(cid) + " " +
        format_edge(chart.edge(cid)));
    if (!first) first = cid;
    if (!opts_.all_coord) break;
  }
  if (first)
    log(tag + "resolved");
  else if (tried_any)
    log(tag + "suspended");
  return first;
}

bool Coordinator::consumed_by_grammar(const CoordConstraint& c,
                                      const Chart& chart) const {
  for (const Edge& e : chart.edges()) {
    const auto* r = std::get_if<FromRule>(&e.provenance);
    if (r && std::find(r->children.begin(), r->children.end(), c.conj_edge) !=
                 r->children.end())
      return true;
  }
  return false;
}

bool Coordinator::has_full_parse(const Chart& chart) const {
  for (EdgeId id : chart.of_category(g_.start)) {
    const Edge& e = chart.edge(id);
    if (e.start == 0 && e.end == chart.length() && !e.has_gap) return true;
  }
  return false;
}

void Coordinator::step(CoordConstraint& c, Chart& chart) {
  if (c.status == ConstraintStatus::Exhausted) return;
  if (c.status == ConstraintStatus::Resolved && !opts_.all_coord) return;
  if (c.status == ConstraintStatus::Suspended && consumed_by_grammar(c, chart)) {
    c.status = ConstraintStatus::Exhausted;
    log("C" + std::to_string(c.id) +
        ": exhausted, conjunction consumed by a grammar rule");
    return;
  }
  refresh_agenda(c, chart, g_, grammar_coordinated_categories(g_, c.connective));
  attempt(c, chart);
}

void Coordinator::after_layer(Chart& chart, std::size_t) {
  post(chart);
  for (auto& c : constraints_) step(c, chart);
}

bool Coordinator::at_fixpoint(Chart& chart, std::size_t) {
  if (!revived_ && !has_full_parse(chart)) {
    revived_ = true;
    bool injected = false;
    for (auto& c : constraints_) {
      if (c.status != ConstraintStatus::Suspended) continue;
      log("C" + std::to_string(c.id) + ": revived");
      for (auto& cand : c.agenda) cand.tried = false;
      refresh_agenda(c, chart, g_, grammar_coordinated_categories(g_, c.connective));
      if (attempt(c, chart)) injected = true;
    }
    if (injected) return true;
  }
  for (auto& c : constraints_) {
    if (c.status != ConstraintStatus::Suspended) continue;
    c.status = ConstraintStatus::Exhausted;
    log("C" + std::to_string(c.id) + ": exhausted");
  }
  return false;
}

ClosureHooks Coordinator::hooks() {
  return {[this](Chart& chart, std::size_t k) { after_layer(chart, k); },
          [this](Chart& chart, std::size_t k) { return at_fixpoint(chart, k); }};
}

}  // namespace dlgram
