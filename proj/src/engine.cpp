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

#include "dlgram/engine.hpp"

#include <algorithm>
#include <set>
#include <unordered_set>

namespace dlgram {

// ---------------------------------------------------------------------------
// Edge

bool Edge::is_gap() const {
  const auto* p = std::get_if<FromPrediction>(&provenance);
  return p && p->gap;
}

std::vector<EdgeId> Edge::children() const {
  return std::visit(
      [](const auto& p) -> std::vector<EdgeId> {
        using P = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<P, FromLexicalRule>) return p.words;
        else if constexpr (std::is_same_v<P, FromRule>) return p.children;
        else if constexpr (std::is_same_v<P, FromPrediction>) return p.children;
        else if constexpr (std::is_same_v<P, FromCoordination>)
          return {p.source, p.target};
        else return {};
      },
      provenance);
}

std::string format_edge(const Edge& e) {
  std::string out = e.category + "(";
  if (!e.args.empty()) out += to_string(std::span<const Term>(e.args)) + ",";
  out += std::to_string(e.start) + "," + std::to_string(e.end) + ")";
  return out;
}

namespace {

std::string id_list(const std::vector<EdgeId>& ids) {
  std::string out;
  for (auto id : ids) out += " e" + std::to_string(id);
  return out;
}

}  // namespace

std::string format_provenance(const Edge& e) {
  return std::visit(
      [](const auto& p) -> std::string {
        using P = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<P, FromInput>) {
          return "input";
        } else if constexpr (std::is_same_v<P, FromLexicalRule>) {
          return "lexical r" + std::to_string(p.rule) + ":" + id_list(p.words);
        } else if constexpr (std::is_same_v<P, FromRule>) {
          return "rule r" + std::to_string(p.rule) + ":" + id_list(p.children);
        } else if constexpr (std::is_same_v<P, FromPrediction>) {
          if (p.gap) return "gap";
          return "predicted r" + std::to_string(*p.rule) + ":" +
                 id_list(p.children);
        } else {
          return "coordinated c" + std::to_string(p.constraint) + ": source e" +
                 std::to_string(p.source) + " target e" +
                 std::to_string(p.target);
        }
      },
      e.provenance);
}

LayerLimitExceeded::LayerLimitExceeded(std::size_t cap)
    : std::runtime_error("layer limit of " + std::to_string(cap) +
                         " exceeded") {}

// ---------------------------------------------------------------------------
// Chart

Chart::Chart(std::vector<std::string> tokens) : tokens_(std::move(tokens)) {
  open_layer();
}

std::optional<EdgeId> Chart::find_variant(const std::string& category,
                                          std::size_t start, std::size_t end,
                                          std::span<const Term> args) const {
  auto it = variants_.find(SpanKey{category, start, end});
  if (it == variants_.end()) return std::nullopt;
  auto v = it->second.find(to_string(args));
  if (v == it->second.end()) return std::nullopt;
  if (!is_variant(args, edges_[v->second].args)) return std::nullopt;
  return v->second;
}

std::pair<EdgeId, bool> Chart::add(Edge e) {
  if (layers_.empty()) throw ChartError("chart has no open layer");
  if (e.start > e.end || e.end > tokens_.size())
    throw ChartError("edge span out of range: " + format_edge(e));
  if (e.start == e.end && !e.is_gap())
    throw ChartError("zero-width edge that is not a gap: " + format_edge(e));

  auto& bucket = variants_[SpanKey{e.category, e.start, e.end}];
  const std::string key = to_string(std::span<const Term>(e.args));
  if (auto it = bucket.find(key); it != bucket.end()) return {it->second, false};

  e.id = edges_.size();
  e.layer = layers_.size();
  bucket.emplace(key, e.id);
  layers_.back().push_back(e.id);
  by_start_[{e.category, e.start}].push_back(e.id);
  by_end_[{e.category, e.end}].push_back(e.id);
  by_category_[e.category].push_back(e.id);
  edges_.push_back(std::move(e));
  if (observer_) observer_(edges_.back());
  return {edges_.back().id, true};
}

std::span<const EdgeId> Chart::starting_at(const std::string& category,
                                           std::size_t pos) const {
  auto it = by_start_.find({category, pos});
  if (it == by_start_.end()) return {};
  return it->second;
}

std::span<const EdgeId> Chart::ending_at(const std::string& category,
                                         std::size_t pos) const {
  auto it = by_end_.find({category, pos});
  if (it == by_end_.end()) return {};
  return it->second;
}

std::span<const EdgeId> Chart::of_category(const std::string& category) const {
  auto it = by_category_.find(category);
  if (it == by_category_.end()) return {};
  return it->second;
}

void Chart::drop_empty_layer() {
  if (!layers_.empty() && layers_.back().empty()) layers_.pop_back();
}

Chart assert_input(std::span<const std::string> tokens) {
  if (tokens.empty()) throw std::invalid_argument("empty input");
  Chart chart({tokens.begin(), tokens.end()});
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    Edge e;
    e.category = kWordCategory;
    e.args = {Term::constant(tokens[i])};
    e.start = i;
    e.end = i + 1;
    chart.add(std::move(e));
  }
  return chart;
}

// ---------------------------------------------------------------------------
// Semi-naive closure

namespace {

bool token_matches(const Edge& word, const Terminal& t) {
  return word.args.front().name() == t.token;
}

class RuleMatcher {
 public:
  RuleMatcher(const Rule& rule, std::span<const EdgeId> delta,
              const Chart& chart)
      : rule_(rule), chart_(chart), delta_(delta.begin(), delta.end()) {
    Renamer ren;
    head_ = ren(std::span<const Term>(rule.head.args));
    for (const auto& item : rule.body) {
      if (const auto* nt = std::get_if<NonTerminal>(&item))
        items_.push_back(ren(std::span<const Term>(nt->args)));
      else
        items_.emplace_back();
    }
    children_.resize(rule.body.size());
  }

  std::vector<Edge> run() {
    seat(0, 0, Substitution{}, false);
    return std::move(out_);
  }

 private:
  void seat(std::size_t i, std::size_t pos, const Substitution& s, bool used) {
    if (i == rule_.body.size()) {
      if (used) emit(s);
      return;
    }
    const auto& item = rule_.body[i];
    if (const auto* t = std::get_if<Terminal>(&item)) {
      auto ids = i == 0 ? chart_.of_category(kWordCategory)
                        : chart_.starting_at(kWordCategory, pos);
      for (EdgeId id : ids) {
        const Edge& w = chart_.edge(id);
        if (!token_matches(w, *t)) continue;
        children_[i] = id;
        seat(i + 1, w.end, s, used || delta_.count(id));
      }
      return;
    }
    const auto& nt = std::get<NonTerminal>(item);
    auto ids = i == 0 ? chart_.of_category(nt.category)
                      : chart_.starting_at(nt.category, pos);
    for (EdgeId id : ids) {
      const Edge& e = chart_.edge(id);
      if (e.is_gap()) continue;
      auto renamed = rename_fresh(std::span<const Term>(e.args));
      auto s2 = unify(items_[i], renamed, s);
      if (!s2) continue;
      children_[i] = id;
      seat(i + 1, e.end, *s2, used || delta_.count(id));
    }
  }

  void emit(const Substitution& s) {
    Renamer ren;
    Edge e;
    e.category = rule_.head.category;
    e.args = ren(dlgram::apply(s, head_));
    for (const auto& a : items_) e.body_args.push_back(ren(dlgram::apply(s, a)));
    e.start = chart_.edge(children_.front()).start;
    e.end = chart_.edge(children_.back()).end;
    for (EdgeId c : children_) e.has_gap = e.has_gap || chart_.edge(c).has_gap;
    if (rule_.is_lexical())
      e.provenance = FromLexicalRule{rule_.id, children_};
    else
      e.provenance = FromRule{rule_.id, children_};
    out_.push_back(std::move(e));
  }

  const Rule& rule_;
  const Chart& chart_;
  std::unordered_set<EdgeId> delta_;
  std::vector<Term> head_;
  std::vector<std::vector<Term>> items_;
  std::vector<EdgeId> children_;
  std::vector<Edge> out_;
};

}  // namespace

std::vector<Edge> match_rule(const Rule& rule, std::span<const EdgeId> delta,
                             const Chart& chart) {
  return RuleMatcher(rule, delta, chart).run();
}

void close(Chart& chart, const Grammar& g, const ClosureHooks& hooks,
           const ClosureOptions& opts) {
  if (chart.layer_count() == 0) throw ChartError("chart has no input layer");
  for (;;) {
    const std::size_t k = chart.layer_count();
    const std::vector<EdgeId> delta(chart.layer(k).begin(), chart.layer(k).end());

    std::vector<Edge> found;
    for (const auto& rule : g.rules) {
      auto edges = match_rule(rule, delta, chart);
      std::move(edges.begin(), edges.end(), std::back_inserter(found));
    }

    chart.open_layer();
    for (auto& e : found) chart.add(std::move(e));

    if (chart.layer(k + 1).empty()) {
      const bool resumed = hooks.at_fixpoint && hooks.at_fixpoint(chart, k + 1) &&
                           !chart.layer(k + 1).empty();
      if (!resumed) {
        chart.drop_empty_layer();
        return;
      }
    } else if (hooks.after_layer) {
      hooks.after_layer(chart, k + 1);
    }
    if (chart.layer_count() > opts.layer_cap)
      throw LayerLimitExceeded(opts.layer_cap);
  }
}

// ---------------------------------------------------------------------------
// Derivation trees

namespace {

void collect(const Chart& chart, EdgeId id, std::span<const std::vector<Term>> views,
             std::size_t depth, std::vector<Constituent>& out) {
  const Edge& e = chart.edge(id);
  if (std::holds_alternative<FromCoordination>(e.provenance) ||
      std::holds_alternative<FromLexicalRule>(e.provenance))
    return;
  const auto kids = e.children();
  for (std::size_t i = 0; i < kids.size() && i < views.size(); ++i) {
    const Edge& child = chart.edge(kids[i]);
    if (child.is_word()) continue;
    out.push_back({child.id, child.category, views[i], depth + 1, child.start,
                   child.end});
    if (child.body_args.empty()) continue;
    // Re-express the child's own body arguments relative to this view.
    Renamer ren;
    auto cargs = ren(std::span<const Term>(child.args));
    std::vector<std::vector<Term>> cbody;
    for (const auto& b : child.body_args) cbody.push_back(ren(std::span<const Term>(b)));
    auto s = unify(cargs, views[i], Substitution{});
    if (!s) continue;
    for (auto& b : cbody) b = dlgram::apply(*s, b);
    collect(chart, child.id, cbody, depth + 1, out);
  }
}

}  // namespace

std::vector<Constituent> constituents(const Chart& chart, EdgeId root) {
  std::vector<Constituent> out;
  collect(chart, root, chart.edge(root).body_args, 0, out);
  return out;
}

Derivation derivation(const Chart& chart, EdgeId root) {
  Derivation d{root, {}};
  auto kids = chart.edge(root).children();
  std::stable_sort(kids.begin(), kids.end(), [&](EdgeId a, EdgeId b) {
    return chart.edge(a).start < chart.edge(b).start;
  });
  for (EdgeId k : kids) d.children.push_back(derivation(chart, k));
  return d;
}

// ---------------------------------------------------------------------------
// Top-down prediction

namespace {

class Predictor {
 public:
  Predictor(const Grammar& g, Chart& chart, Direction dir,
            const PredictOptions& opts, std::vector<Constituent> parts)
      : g_(g), chart_(chart), dir_(dir), opts_(opts), parts_(std::move(parts)) {}

  std::optional<EdgeId> run(const std::string& category, std::size_t anchor) {
    std::vector<Term> args;
    for (std::size_t i = 0; i < g_.arity(category).value_or(0); ++i)
      args.push_back(Term::fresh_variable());
    std::optional<EdgeId> result;
    solve(category, args, anchor, Substitution{}, opts_.gap_budget, 0,
          /*allow_gap=*/false,
          [&](const Substitution& s, int, ChildRef ref, std::size_t) {
            result = ref.pending ? materialize(s, ref.index) : ref.index;
            return true;
          });
    return result;
  }

 private:
  struct ChildRef {
    bool pending;
    std::size_t index;  // node index when pending, else edge id
  };
  struct Node {
    std::string category;
    std::vector<Term> args;
    std::size_t start;
    std::size_t end;
    std::optional<RuleId> rule;
    std::vector<ChildRef> children;
    std::vector<std::vector<Term>> body_args;
    bool gap;
  };
  using Found =
      std::function<bool(const Substitution&, int, ChildRef, std::size_t)>;

  bool touches(const Edge& e, std::size_t pos) const {
    return dir_ == Direction::Rightward ? e.start == pos : e.end == pos;
  }
  std::size_t far_end(const Edge& e) const {
    return dir_ == Direction::Rightward ? e.end : e.start;
  }
  std::vector<EdgeId> adjacent(const std::string& cat, std::size_t pos) const {
    auto ids = dir_ == Direction::Rightward ? chart_.starting_at(cat, pos)
                                            : chart_.ending_at(cat, pos);
    return {ids.begin(), ids.end()};
  }

  const Constituent* correspondent(const std::string& cat) const {
    const Constituent* best = nullptr;
    for (const auto& c : parts_) {
      if (c.category != cat) continue;
      if (!best || c.depth > best->depth ||
          (c.depth == best->depth && c.start > best->start))
        best = &c;
    }
    return best;
  }

  std::vector<Term> gap_args(const std::string& cat, const Constituent& corr) const {
    const std::size_t arity = g_.arity(cat).value_or(corr.args.size());
    auto pos = g_.scope_position(cat);
    if (pos && *pos <= corr.args.size() && corr.args.size() == arity)
      return abstract_over(corr.args, *pos).first;
    std::vector<Term> fresh;
    for (std::size_t i = 0; i < arity; ++i) fresh.push_back(Term::fresh_variable());
    return fresh;
  }

  bool solve(const std::string& cat, std::span<const Term> args, std::size_t pos,
             const Substitution& s, int budget, int depth, bool allow_gap,
             const Found& k) {
    // (a) an edge already in the chart
    for (EdgeId id : adjacent(cat, pos)) {
      const Edge& e = chart_.edge(id);
      if (e.is_gap()) continue;
      auto renamed = rename_fresh(std::span<const Term>(e.args));
      if (auto s2 = unify(args, renamed, s))
        if (k(*s2, budget, {false, id}, far_end(e))) return true;
    }

    // (b) recursive descent through the category's rules
    const auto key = std::make_pair(cat, pos);
    if (depth < opts_.depth_cap && !active_.count(key)) {
      active_.insert(key);
      for (const auto& rule : g_.rules) {
        if (rule.head.category != cat) continue;
        if (expand(rule, args, pos, s, budget, depth, k)) {
          active_.erase(key);
          return true;
        }
      }
      active_.erase(key);
    }

    // (c) a zero-width gap modelled on the source
    if (allow_gap && budget > 0) {
      if (const Constituent* corr = correspondent(cat)) {
        auto gargs = gap_args(cat, *corr);
        if (auto s2 = unify(args, gargs, s)) {
          nodes_.push_back({cat, gargs, pos, pos, std::nullopt, {}, {}, true});
          const bool ok = k(*s2, budget - 1, {true, nodes_.size() - 1}, pos);
          nodes_.pop_back();
          if (ok) return true;
        }
      }
    }
    return false;
  }

  bool expand(const Rule& rule, std::span<const Term> args, std::size_t pos,
              const Substitution& s, int budget, int depth, const Found& k) {
    Renamer ren;
    auto head = ren(std::span<const Term>(rule.head.args));
    std::vector<std::vector<Term>> items;
    for (const auto& item : rule.body) {
      if (const auto* nt = std::get_if<NonTerminal>(&item))
        items.push_back(ren(std::span<const Term>(nt->args)));
      else
        items.emplace_back();
    }
    auto s1 = unify(args, head, s);
    if (!s1) return false;

    const std::size_t n = rule.body.size();
    std::vector<ChildRef> children(n, ChildRef{false, 0});

    std::function<bool(std::size_t, std::size_t, const Substitution&, int)> step =
        [&](std::size_t j, std::size_t cur, const Substitution& sj, int b) -> bool {
      if (j == n) {
        if (cur == pos) return false;  // only gaps may be zero-width
        const auto [start, end] = dir_ == Direction::Rightward
                                      ? std::make_pair(pos, cur)
                                      : std::make_pair(cur, pos);
        nodes_.push_back({rule.head.category, head, start, end, rule.id,
                          children, items, false});
        const bool ok = k(sj, b, {true, nodes_.size() - 1}, cur);
        nodes_.pop_back();
        return ok;
      }
      const std::size_t i = dir_ == Direction::Rightward ? j : n - 1 - j;
      if (const auto* t = std::get_if<Terminal>(&rule.body[i])) {
        for (EdgeId id : adjacent(kWordCategory, cur)) {
          const Edge& w = chart_.edge(id);
          if (!token_matches(w, *t)) continue;
          children[i] = {false, id};
          if (step(j + 1, far_end(w), sj, b)) return true;
        }
        return false;
      }
      const auto& nt = std::get<NonTerminal>(rule.body[i]);
      return solve(nt.category, items[i], cur, sj, b, depth + 1, true,
                   [&](const Substitution& s2, int b2, ChildRef ref,
                       std::size_t far) {
                     children[i] = ref;
                     return step(j + 1, far, s2, b2);
                   });
    };
    return step(0, pos, *s1, budget);
  }

  EdgeId materialize(const Substitution& s, std::size_t root) {
    std::vector<EdgeId> ids(nodes_.size());
    for (std::size_t i = 0; i <= root; ++i) {
      const Node& n = nodes_[i];
      Edge e;
      e.category = n.category;
      e.args = dlgram::apply(s, n.args);
      for (const auto& b : n.body_args) e.body_args.push_back(dlgram::apply(s, b));
      e.start = n.start;
      e.end = n.end;
      e.has_gap = n.gap;
      FromPrediction prov{n.rule, {}, n.gap};
      for (const auto& c : n.children) {
        const EdgeId cid = c.pending ? ids[c.index] : c.index;
        prov.children.push_back(cid);
        e.has_gap = e.has_gap || chart_.edge(cid).has_gap;
      }
      e.provenance = std::move(prov);
      ids[i] = chart_.add(std::move(e)).first;
    }
    return ids[root];
  }

  const Grammar& g_;
  Chart& chart_;
  Direction dir_;
  PredictOptions opts_;
  std::vector<Constituent> parts_;
  std::vector<Node> nodes_;
  std::set<std::pair<std::string, std::size_t>> active_;
};

}  // namespace

std::optional<EdgeId> predict(const Grammar& g, Chart& chart,
                              const std::string& category, std::size_t anchor,
                              Direction dir, EdgeId source,
                              const PredictOptions& opts) {
  return Predictor(g, chart, dir, opts, constituents(chart, source))
      .run(category, anchor);
}

// ---------------------------------------------------------------------------
// Extraction

Term logical_form(const Edge& root) {
  if (root.args.size() == 1) return root.args.front();
  return Term::compound(root.category, root.args);
}

std::vector<ParseResult> extract(const Chart& chart, const Grammar& g) {
  std::vector<ParseResult> out;
  for (EdgeId id : chart.of_category(g.start)) {
    const Edge& e = chart.edge(id);
    if (e.start != 0 || e.end != chart.length() || e.has_gap) continue;
    out.push_back({id, logical_form(e), derivation(chart, id),
                   chart.layer_count(), {}});
  }
  return out;
}

}  // namespace dlgram
