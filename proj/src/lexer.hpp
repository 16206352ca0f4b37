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

// Tokenizer shared by the term and grammar readers. Internal header.

#pragma once

#include <string>
#include <string_view>
#include <unordered_map>

#include "dlgram/term.hpp"

namespace dlgram::detail {

enum class Tok {
  Atom,      // lowercase identifier
  Var,       // uppercase or '_' identifier
  Number,
  LParen,
  RParen,
  Comma,
  LBracket,
  RBracket,
  Arrow,     // -->
  Dot,
  At,
  End,
};

struct Token {
  Tok kind;
  std::string text;
  std::size_t line;
  std::size_t column;
};

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) { advance(); }

  const Token& peek() const { return cur_; }
  Token next() {
    Token t = cur_;
    advance();
    return t;
  }
  Token expect(Tok kind, std::string_view what) {
    if (cur_.kind != kind) fail(std::string("expected ") + std::string(what));
    return next();
  }
  [[noreturn]] void fail(const std::string& msg) const {
    throw TermSyntaxError(msg, cur_.line, cur_.column);
  }

 private:
  void advance();

  std::string_view src_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t col_ = 1;
  Token cur_{Tok::End, "", 1, 1};
};

/// Variable names scoped to one term or one grammar rule.
class VarScope {
 public:
  Term get(const std::string& name) {
    if (name == "_") return Term::fresh_variable("_");
    auto it = vars_.find(name);
    if (it != vars_.end()) return it->second;
    Term v = Term::fresh_variable(name);
    vars_.emplace(name, v);
    return v;
  }
  void clear() { vars_.clear(); }

 private:
  std::unordered_map<std::string, Term> vars_;
};

/// term := Var | atom | atom '(' term {',' term} ')'
Term read_term(Lexer& lex, VarScope& scope);

}  // namespace dlgram::detail
