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

// First-order terms and the operations over them: substitution, unification
// with occurs-check, variant testing, renaming, scope abstraction and
// c-unification.

#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace dlgram {

using VarId = std::uint64_t;

/// Immutable first-order term. Copies share structure.
class Term {
 public:
  enum class Kind { Variable, Constant, Compound };

  /// A variable with a globally fresh id. The name is for display only.
  static Term fresh_variable(std::string name = "_");
  static Term constant(std::string name);
  /// Compound with at least one argument; zero-arity symbols are constants.
  static Term compound(std::string functor, std::vector<Term> args);

  Kind kind() const { return node_->kind; }
  bool is_variable() const { return kind() == Kind::Variable; }
  bool is_constant() const { return kind() == Kind::Constant; }
  bool is_compound() const { return kind() == Kind::Compound; }

  VarId var_id() const { return node_->id; }
  /// Display name of a variable, name of a constant, functor of a compound.
  const std::string& name() const { return node_->name; }
  std::span<const Term> args() const { return node_->args; }
  std::size_t arity() const { return node_->args.size(); }
  const Term& arg(std::size_t i) const { return node_->args.at(i); }

  bool same_node(const Term& other) const { return node_ == other.node_; }

  /// Structural equality; variables compare by id.
  friend bool operator==(const Term& a, const Term& b);

 private:
  struct Node {
    Kind kind;
    VarId id = 0;
    std::string name;
    std::vector<Term> args;
  };
  explicit Term(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

  std::shared_ptr<const Node> node_;
};

/// Mapping from variable ids to terms. Extension yields a new value, so an
/// older substitution stays valid for backtracking.
class Substitution {
 public:
  Substitution() = default;

  std::optional<Term> lookup(VarId id) const;
  bool binds(VarId id) const { return bindings_.count(id) != 0; }
  std::size_t size() const { return bindings_.size(); }
  bool empty() const { return bindings_.empty(); }

  /// Returns a copy with id bound to t. Does not check for cycles.
  Substitution extended(VarId id, Term t) const;

  /// Follows variable bindings at the root only.
  Term walk(const Term& t) const;

  /// Returns the equivalent substitution whose range is fully resolved, so
  /// that applying it twice equals applying it once.
  Substitution normalized() const;

  const std::map<VarId, Term>& bindings() const { return bindings_; }

  friend bool operator==(const Substitution&, const Substitution&) = default;

 private:
  friend std::optional<Substitution> unify(const Term&, const Term&,
                                           const Substitution&);
  std::map<VarId, Term> bindings_;
};

/// Replaces bound variables recursively until no bound variable remains.
Term apply(const Substitution& s, const Term& t);
std::vector<Term> apply(const Substitution& s, std::span<const Term> ts);

/// Most general unifier of s(t1) and s(t2) extending s, or nullopt.
/// The occurs-check is always on.
std::optional<Substitution> unify(const Term& t1, const Term& t2,
                                  const Substitution& s);
/// Pairwise unification of two argument vectors of equal length.
std::optional<Substitution> unify(std::span<const Term> a,
                                  std::span<const Term> b,
                                  const Substitution& s);

bool occurs(VarId id, const Term& t, const Substitution& s);

/// Consistent renaming of variables to fresh ones across several calls.
class Renamer {
 public:
  Term operator()(const Term& t);
  std::vector<Term> operator()(std::span<const Term> ts);

 private:
  std::unordered_map<VarId, Term> map_;
};

Term rename_fresh(const Term& t);
std::vector<Term> rename_fresh(std::span<const Term> ts);

/// True iff a variable bijection makes the two terms identical.
bool is_variant(const Term& a, const Term& b);
bool is_variant(std::span<const Term> a, std::span<const Term> b);

/// Replaces every occurrence of args[scope_position - 1] inside args by one
/// fresh variable, which is returned alongside. scope_position is 1-based,
/// matching the @scope grammar directive. Other variables are kept.
std::pair<std::vector<Term>, Term> abstract_over(std::span<const Term> args,
                                                 std::size_t scope_position);

/// Unifies the parallel parts of t1 and t2 and joins the parts that do not
/// unify with the connective: conn(t1', t2'). Never fails.
std::pair<Term, Substitution> c_unify(const Term& t1, const Term& t2,
                                      std::string_view conn,
                                      const Substitution& s);

/// Assigns V0, V1, ... to variables in order of first occurrence. One namer
/// shared across several terms gives them a joint canonical form.
class CanonicalNamer {
 public:
  std::string name_of(const Term& var);
  std::string format(const Term& t);

 private:
  void write(const Term& t, std::string& out);
  std::unordered_map<VarId, std::string> names_;
};

/// Canonical text of a term (variables renamed V0, V1, ...).
std::string to_string(const Term& t);
/// Canonical text of an argument vector, comma separated, with joint naming.
std::string to_string(std::span<const Term> ts);

class TermSyntaxError : public std::runtime_error {
 public:
  TermSyntaxError(const std::string& msg, std::size_t line, std::size_t column);
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

/// Parses the canonical text syntax. Variables with the same name denote the
/// same variable within one call, except `_` which is always fresh.
Term parse_term(std::string_view text);
std::vector<Term> parse_terms(std::string_view text);

}  // namespace dlgram
