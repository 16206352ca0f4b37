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

// Datalog grammars: rules with term arguments plus the declarations used by
// meta-grammatical coordination. Grammars are read from `.dlg` text:
//
//   % comment
//   @start sent.
//   @conj conj.
//   @scope np 2.
//   @quant exists.
//   @connective and.
//   sent(Sem) --> np(X, Scope, Sem), vp(X, Scope).
//   noun(X, window(X)) --> [window].

#pragma once

#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "dlgram/term.hpp"

namespace dlgram {

using RuleId = std::size_t;

struct NonTerminal {
  std::string category;
  std::vector<Term> args;
};

struct Terminal {
  std::string token;
};

using RuleItem = std::variant<NonTerminal, Terminal>;

struct Rule {
  RuleId id = 0;
  NonTerminal head;
  std::vector<RuleItem> body;
  std::size_t line = 0;

  /// A rule whose body consists of terminals only.
  bool is_lexical() const;
};

struct Grammar {
  std::vector<Rule> rules;
  std::string start;
  std::string conj_category = "conj";
  std::map<std::string, std::size_t> scope_args;  // 1-based positions
  std::set<std::string> quantifiers;
  std::set<std::string> connectives = {"and", "or", "but"};
  std::map<std::string, std::size_t> category_arities;

  const Rule& rule(RuleId id) const { return rules.at(id); }
  std::optional<std::size_t> arity(const std::string& category) const;
  std::optional<std::size_t> scope_position(const std::string& category) const;
  bool has_rules_for(const std::string& category) const;
};

enum class Severity { Error, Warning };

struct Diagnostic {
  Severity severity;
  std::string message;
  std::size_t line = 0;
};

std::string to_string(const Diagnostic& d);

class GrammarError : public std::runtime_error {
 public:
  GrammarError(const std::string& msg, std::size_t line, std::size_t column);
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

/// Parses `.dlg` source. Throws GrammarError on syntax errors, duplicate
/// directives, arity conflicts and directives naming unknown categories.
/// When @start is omitted the head of the first rule is the start category.
Grammar parse_grammar(std::string_view text);
Grammar load_grammar(const std::string& path);

/// One diagnostic per violated invariant; empty iff the grammar is sound.
std::vector<Diagnostic> validate(const Grammar& g);

bool has_errors(const std::vector<Diagnostic>& diags);

/// Renders a grammar back to `.dlg` source that parses to an equivalent one.
std::string to_source(const Grammar& g);
std::string to_source(const Rule& r);

}  // namespace dlgram
