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

#include "dlgram/reshape.hpp"

#include <set>

namespace dlgram {

namespace {

void collect_vars(const Term& t, std::set<VarId>& out) {
  if (t.is_variable()) out.insert(t.var_id());
  for (const auto& a : t.args()) collect_vars(a, out);
}

bool match_into(const Term& p, const Term& t, Substitution& s) {
  if (p.is_variable()) {
    if (auto bound = s.lookup(p.var_id())) return *bound == t;
    s = s.extended(p.var_id(), t);
    return true;
  }
  if (p.kind() != t.kind() || p.name() != t.name() || p.arity() != t.arity())
    return false;
  for (std::size_t i = 0; i < p.arity(); ++i)
    if (!match_into(p.arg(i), t.arg(i), s)) return false;
  return true;
}

// Template instantiation: one level of lookup, since bound values belong to
// the rewritten term and must not be rewritten again.
Term instantiate(const Term& templ, const Substitution& s) {
  if (templ.is_variable()) return s.lookup(templ.var_id()).value_or(templ);
  if (!templ.is_compound()) return templ;
  std::vector<Term> args;
  for (const auto& a : templ.args()) args.push_back(instantiate(a, s));
  return Term::compound(templ.name(), std::move(args));
}

Term var(const char* name) { return Term::fresh_variable(name); }

Term fn(const std::string& f, std::vector<Term> args) {
  return Term::compound(f, std::move(args));
}

}  // namespace

RewriteRule::RewriteRule(std::string name_, Term pattern_, Term templ_,
                         std::function<bool(const Substitution&)> guard_)
    : name(std::move(name_)),
      pattern(std::move(pattern_)),
      templ(std::move(templ_)),
      guard(std::move(guard_)) {
  std::set<VarId> pv, tv;
  collect_vars(pattern, pv);
  collect_vars(templ, tv);
  for (VarId v : tv)
    if (!pv.count(v))
      throw std::invalid_argument("rewrite rule " + name +
                                  ": template variable not in pattern");
}

std::optional<Substitution> match(const Term& pattern, const Term& t) {
  Substitution s;
  if (!match_into(pattern, t, s)) return std::nullopt;
  return s;
}

std::vector<RewriteRule> distribution_rules(const Grammar& g) {
  std::vector<RewriteRule> out;
  for (const auto& q : g.quantifiers) {
    for (const auto& c : g.connectives) {
      Term x = var("X"), r1 = var("R1"), r2 = var("R2"), s = var("S");
      out.emplace_back("distribute " + q + "/" + c,
                       fn(q, {x, fn(c, {r1, r2}), s}),
                       fn(c, {fn(q, {x, r1, s}), fn(q, {x, r2, s})}));
    }
  }
  return out;
}

RewriteRule too_rule() {
  Term p1 = var("P1"), c1 = var("C1"), p2 = var("P2"), c2 = var("C2");
  return RewriteRule(
      "too",
      fn("but", {fn("if", {p1, c1}), fn("if", {fn("too", {p2}), c2})}),
      fn("and", {fn("if", {fn("and", {p1, fn("no", {p2})}), c1}),
                 fn("if", {fn("and", {p1, p2}), c2})}));
}

std::vector<RewriteRule> builtin_rules(const Grammar& g,
                                       const ReshapeRules& enabled) {
  std::vector<RewriteRule> out;
  if (enabled.distribute) out = distribution_rules(g);
  if (enabled.too) out.push_back(too_rule());
  return out;
}

RewriteLimitExceeded::RewriteLimitExceeded(std::size_t cap)
    : std::runtime_error("reshape exceeded " + std::to_string(cap) +
                         " rewrite steps") {}

namespace {

class Rewriter {
 public:
  Rewriter(const std::vector<RewriteRule>& rules, std::size_t cap)
      : rules_(rules), cap_(cap) {}

  Term normalize(const Term& t) {
    Term cur = t;
    if (cur.is_compound()) {
      std::vector<Term> args;
      bool changed = false;
      for (const auto& a : cur.args()) {
        args.push_back(normalize(a));
        changed = changed || !args.back().same_node(a);
      }
      if (changed) cur = Term::compound(cur.name(), std::move(args));
    }
    for (const auto& rule : rules_) {
      auto s = match(rule.pattern, cur);
      if (!s || (rule.guard && !rule.guard(*s))) continue;
      if (++steps_ > cap_) throw RewriteLimitExceeded(cap_);
      return normalize(instantiate(rule.templ, *s));
    }
    return cur;
  }

 private:
  const std::vector<RewriteRule>& rules_;
  std::size_t cap_;
  std::size_t steps_ = 0;
};

}  // namespace

std::optional<Term> rewrite_step(const Term& t,
                                 const std::vector<RewriteRule>& rules) {
  for (std::size_t i = 0; i < t.arity(); ++i) {
    if (auto r = rewrite_step(t.arg(i), rules)) {
      std::vector<Term> args(t.args().begin(), t.args().end());
      args[i] = std::move(*r);
      return Term::compound(t.name(), std::move(args));
    }
  }
  for (const auto& rule : rules) {
    auto s = match(rule.pattern, t);
    if (s && (!rule.guard || rule.guard(*s))) return instantiate(rule.templ, *s);
  }
  return std::nullopt;
}

Term reshape(const Term& t, const std::vector<RewriteRule>& rules,
             std::size_t step_cap) {
  return Rewriter(rules, step_cap).normalize(t);
}

Term reshape(const Term& t, const Grammar& g, const ReshapeRules& enabled,
             std::size_t step_cap) {
  return reshape(t, builtin_rules(g, enabled), step_cap);
}

}  // namespace dlgram
