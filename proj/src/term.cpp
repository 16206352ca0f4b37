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

#include "dlgram/term.hpp"

#include <atomic>
#include <cassert>

#include "lexer.hpp"

namespace dlgram {

namespace {

std::atomic<VarId> g_next_var{1};

}  // namespace

Term Term::fresh_variable(std::string name) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Variable;
  n->id = g_next_var.fetch_add(1, std::memory_order_relaxed);
  n->name = std::move(name);
  return Term(std::move(n));
}

Term Term::constant(std::string name) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Constant;
  n->name = std::move(name);
  return Term(std::move(n));
}

Term Term::compound(std::string functor, std::vector<Term> args) {
  if (args.empty()) return constant(std::move(functor));
  auto n = std::make_shared<Node>();
  n->kind = Kind::Compound;
  n->name = std::move(functor);
  n->args = std::move(args);
  return Term(std::move(n));
}

bool operator==(const Term& a, const Term& b) {
  if (a.node_ == b.node_) return true;
  if (a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case Term::Kind::Variable:
      return a.var_id() == b.var_id();
    case Term::Kind::Constant:
      return a.name() == b.name();
    case Term::Kind::Compound:
      if (a.name() != b.name() || a.arity() != b.arity()) return false;
      for (std::size_t i = 0; i < a.arity(); ++i)
        if (!(a.arg(i) == b.arg(i))) return false;
      return true;
  }
  return false;
}

// ---------------------------------------------------------------------------
// Substitution

std::optional<Term> Substitution::lookup(VarId id) const {
  auto it = bindings_.find(id);
  if (it == bindings_.end()) return std::nullopt;
  return it->second;
}

Substitution Substitution::extended(VarId id, Term t) const {
  Substitution out = *this;
  out.bindings_.insert_or_assign(id, std::move(t));
  return out;
}

Term Substitution::walk(const Term& t) const {
  Term cur = t;
  while (cur.is_variable()) {
    auto it = bindings_.find(cur.var_id());
    if (it == bindings_.end()) break;
    cur = it->second;
  }
  return cur;
}

Substitution Substitution::normalized() const {
  Substitution out;
  for (const auto& [id, t] : bindings_) out.bindings_.emplace(id, apply(*this, t));
  return out;
}

namespace {

// Returns nullopt when nothing changed, so unchanged subterms stay shared.
std::optional<Term> apply_changed(const Substitution& s, const Term& t) {
  switch (t.kind()) {
    case Term::Kind::Constant:
      return std::nullopt;
    case Term::Kind::Variable: {
      auto b = s.lookup(t.var_id());
      if (!b) return std::nullopt;
      auto deeper = apply_changed(s, *b);
      return deeper ? *deeper : *b;
    }
    case Term::Kind::Compound: {
      std::vector<Term> args;
      bool changed = false;
      for (std::size_t i = 0; i < t.arity(); ++i) {
        auto a = apply_changed(s, t.arg(i));
        if (a && !changed) {
          changed = true;
          args.assign(t.args().begin(), t.args().begin() + i);
        }
        if (changed) args.push_back(a ? *a : t.arg(i));
      }
      if (!changed) return std::nullopt;
      return Term::compound(t.name(), std::move(args));
    }
  }
  return std::nullopt;
}

}  // namespace

Term apply(const Substitution& s, const Term& t) {
  if (s.empty()) return t;
  auto r = apply_changed(s, t);
  return r ? *r : t;
}

std::vector<Term> apply(const Substitution& s, std::span<const Term> ts) {
  std::vector<Term> out;
  out.reserve(ts.size());
  for (const auto& t : ts) out.push_back(apply(s, t));
  return out;
}

bool occurs(VarId id, const Term& t, const Substitution& s) {
  Term w = s.walk(t);
  if (w.is_variable()) return w.var_id() == id;
  for (const auto& a : w.args())
    if (occurs(id, a, s)) return true;
  return false;
}

// ---------------------------------------------------------------------------
// Unification

namespace {

bool unify_into(const Term& t1, const Term& t2, Substitution& s,
                std::map<VarId, Term>& bindings) {
  Term a = s.walk(t1);
  Term b = s.walk(t2);
  if (a.is_variable() && b.is_variable() && a.var_id() == b.var_id())
    return true;
  if (a.is_variable()) {
    if (occurs(a.var_id(), b, s)) return false;
    bindings.emplace(a.var_id(), b);
    return true;
  }
  if (b.is_variable()) {
    if (occurs(b.var_id(), a, s)) return false;
    bindings.emplace(b.var_id(), a);
    return true;
  }
  if (a.kind() != b.kind() || a.name() != b.name() || a.arity() != b.arity())
    return false;
  for (std::size_t i = 0; i < a.arity(); ++i)
    if (!unify_into(a.arg(i), b.arg(i), s, bindings)) return false;
  return true;
}

}  // namespace

std::optional<Substitution> unify(const Term& t1, const Term& t2,
                                  const Substitution& s) {
  Substitution out = s;
  if (!unify_into(t1, t2, out, out.bindings_)) return std::nullopt;
  return out;
}

std::optional<Substitution> unify(std::span<const Term> a,
                                  std::span<const Term> b,
                                  const Substitution& s) {
  if (a.size() != b.size()) return std::nullopt;
  std::optional<Substitution> cur = s;
  for (std::size_t i = 0; i < a.size() && cur; ++i) cur = unify(a[i], b[i], *cur);
  return cur;
}

// ---------------------------------------------------------------------------
// Renaming and variants

Term Renamer::operator()(const Term& t) {
  switch (t.kind()) {
    case Term::Kind::Constant:
      return t;
    case Term::Kind::Variable: {
      auto it = map_.find(t.var_id());
      if (it != map_.end()) return it->second;
      Term v = Term::fresh_variable(t.name());
      map_.emplace(t.var_id(), v);
      return v;
    }
    case Term::Kind::Compound: {
      std::vector<Term> args;
      args.reserve(t.arity());
      for (const auto& a : t.args()) args.push_back((*this)(a));
      return Term::compound(t.name(), std::move(args));
    }
  }
  return t;
}

std::vector<Term> Renamer::operator()(std::span<const Term> ts) {
  std::vector<Term> out;
  out.reserve(ts.size());
  for (const auto& t : ts) out.push_back((*this)(t));
  return out;
}

Term rename_fresh(const Term& t) { return Renamer{}(t); }

std::vector<Term> rename_fresh(std::span<const Term> ts) { return Renamer{}(ts); }

namespace {

struct Bijection {
  std::unordered_map<VarId, VarId> fwd;
  std::unordered_map<VarId, VarId> bwd;

  bool match(const Term& a, const Term& b) {
    if (a.kind() != b.kind()) return false;
    switch (a.kind()) {
      case Term::Kind::Variable: {
        auto [fi, fnew] = fwd.emplace(a.var_id(), b.var_id());
        auto [bi, bnew] = bwd.emplace(b.var_id(), a.var_id());
        return fi->second == b.var_id() && bi->second == a.var_id();
      }
      case Term::Kind::Constant:
        return a.name() == b.name();
      case Term::Kind::Compound:
        if (a.name() != b.name() || a.arity() != b.arity()) return false;
        for (std::size_t i = 0; i < a.arity(); ++i)
          if (!match(a.arg(i), b.arg(i))) return false;
        return true;
    }
    return false;
  }
};

}  // namespace

bool is_variant(const Term& a, const Term& b) { return Bijection{}.match(a, b); }

bool is_variant(std::span<const Term> a, std::span<const Term> b) {
  if (a.size() != b.size()) return false;
  Bijection bij;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!bij.match(a[i], b[i])) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Abstraction and c-unification

namespace {

Term replace_all(const Term& t, const Term& target, const Term& with) {
  if (t == target) return with;
  if (!t.is_compound()) return t;
  std::vector<Term> args;
  args.reserve(t.arity());
  for (const auto& a : t.args()) args.push_back(replace_all(a, target, with));
  return Term::compound(t.name(), std::move(args));
}

}  // namespace

std::pair<std::vector<Term>, Term> abstract_over(std::span<const Term> args,
                                                 std::size_t scope_position) {
  if (scope_position == 0 || scope_position > args.size())
    throw std::out_of_range("abstract_over: scope position out of range");
  const Term scope = args[scope_position - 1];
  Term v = Term::fresh_variable("Scope");
  std::vector<Term> out;
  out.reserve(args.size());
  for (const auto& a : args) out.push_back(replace_all(a, scope, v));
  return {std::move(out), v};
}

std::pair<Term, Substitution> c_unify(const Term& t1, const Term& t2,
                                      std::string_view conn,
                                      const Substitution& s) {
  if (auto u = unify(t1, t2, s)) return {apply(*u, t1), std::move(*u)};

  Term a = apply(s, t1);
  Term b = apply(s, t2);
  if (a.is_compound() && b.is_compound() && a.name() == b.name() &&
      a.arity() == b.arity()) {
    Substitution cur = s;
    std::vector<Term> parts;
    parts.reserve(a.arity());
    for (std::size_t i = 0; i < a.arity(); ++i) {
      auto [part, next] = c_unify(a.arg(i), b.arg(i), conn, cur);
      parts.push_back(std::move(part));
      cur = std::move(next);
    }
    Term joined = apply(cur, Term::compound(a.name(), std::move(parts)));
    return {std::move(joined), std::move(cur)};
  }
  return {Term::compound(std::string(conn), {a, b}), s};
}

// ---------------------------------------------------------------------------
// Printing and parsing

std::string CanonicalNamer::name_of(const Term& var) {
  auto it = names_.find(var.var_id());
  if (it != names_.end()) return it->second;
  std::string n = "V" + std::to_string(names_.size());
  names_.emplace(var.var_id(), n);
  return n;
}

void CanonicalNamer::write(const Term& t, std::string& out) {
  switch (t.kind()) {
    case Term::Kind::Variable:
      out += name_of(t);
      return;
    case Term::Kind::Constant:
      out += t.name();
      return;
    case Term::Kind::Compound:
      out += t.name();
      out += '(';
      for (std::size_t i = 0; i < t.arity(); ++i) {
        if (i) out += ',';
        write(t.arg(i), out);
      }
      out += ')';
      return;
  }
}

std::string CanonicalNamer::format(const Term& t) {
  std::string out;
  write(t, out);
  return out;
}

std::string to_string(const Term& t) { return CanonicalNamer{}.format(t); }

std::string to_string(std::span<const Term> ts) {
  CanonicalNamer namer;
  std::string out;
  for (std::size_t i = 0; i < ts.size(); ++i) {
    if (i) out += ',';
    out += namer.format(ts[i]);
  }
  return out;
}

TermSyntaxError::TermSyntaxError(const std::string& msg, std::size_t line,
                                 std::size_t column)
    : std::runtime_error(std::to_string(line) + ":" + std::to_string(column) +
                         ": " + msg),
      line_(line),
      column_(column) {}

Term parse_term(std::string_view text) {
  detail::Lexer lex(text);
  detail::VarScope scope;
  Term t = detail::read_term(lex, scope);
  lex.expect(detail::Tok::End, "end of input");
  return t;
}

std::vector<Term> parse_terms(std::string_view text) {
  detail::Lexer lex(text);
  detail::VarScope scope;
  std::vector<Term> out;
  if (lex.peek().kind == detail::Tok::End) return out;
  out.push_back(detail::read_term(lex, scope));
  while (lex.peek().kind == detail::Tok::Comma) {
    lex.next();
    out.push_back(detail::read_term(lex, scope));
  }
  lex.expect(detail::Tok::End, "end of input");
  return out;
}

}  // namespace dlgram
