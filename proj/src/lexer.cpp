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

#include "lexer.hpp"

#include <cctype>

namespace dlgram::detail {

namespace {

bool ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}

}  // namespace

void Lexer::advance() {
  auto bump = [this] {
    if (src_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  };

  for (;;) {
    while (pos_ < src_.size() &&
           std::isspace(static_cast<unsigned char>(src_[pos_])))
      bump();
    if (pos_ < src_.size() && src_[pos_] == '%') {
      while (pos_ < src_.size() && src_[pos_] != '\n') bump();
      continue;
    }
    break;
  }

  cur_.line = line_;
  cur_.column = col_;
  cur_.text.clear();
  if (pos_ >= src_.size()) {
    cur_.kind = Tok::End;
    return;
  }

  const char c = src_[pos_];
  auto single = [&](Tok k) {
    cur_.kind = k;
    cur_.text = std::string(1, c);
    bump();
  };
  switch (c) {
    case '(': return single(Tok::LParen);
    case ')': return single(Tok::RParen);
    case ',': return single(Tok::Comma);
    case '[': return single(Tok::LBracket);
    case ']': return single(Tok::RBracket);
    case '.': return single(Tok::Dot);
    case '@': return single(Tok::At);
    default: break;
  }
  if (src_.substr(pos_, 3) == "-->") {
    cur_.kind = Tok::Arrow;
    cur_.text = "-->";
    bump();
    bump();
    bump();
    return;
  }
  if (std::isdigit(static_cast<unsigned char>(c))) {
    cur_.kind = Tok::Number;
    while (pos_ < src_.size() &&
           std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
      cur_.text += src_[pos_];
      bump();
    }
    return;
  }
  if (ident_char(c)) {
    cur_.kind = (std::isupper(static_cast<unsigned char>(c)) || c == '_')
                    ? Tok::Var
                    : Tok::Atom;
    while (pos_ < src_.size() && ident_char(src_[pos_])) {
      cur_.text += src_[pos_];
      bump();
    }
    return;
  }
  throw TermSyntaxError(std::string("unexpected character '") + c + "'",
                        line_, col_);
}

Term read_term(Lexer& lex, VarScope& scope) {
  const Token& t = lex.peek();
  if (t.kind == Tok::Var) return scope.get(lex.next().text);
  if (t.kind != Tok::Atom && t.kind != Tok::Number) lex.fail("expected a term");
  std::string functor = lex.next().text;
  if (lex.peek().kind != Tok::LParen) return Term::constant(std::move(functor));
  lex.next();
  std::vector<Term> args;
  args.push_back(read_term(lex, scope));
  while (lex.peek().kind == Tok::Comma) {
    lex.next();
    args.push_back(read_term(lex, scope));
  }
  lex.expect(Tok::RParen, "')'");
  return Term::compound(std::move(functor), std::move(args));
}

}  // namespace dlgram::detail
