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

#include "dlgram/grammar.hpp"

#include <fstream>
#include <sstream>

#include "lexer.hpp"

namespace dlgram {

using detail::Lexer;
using detail::Tok;
using detail::Token;

bool Rule::is_lexical() const {
  for (const auto& item : body)
    if (!std::holds_alternative<Terminal>(item)) return false;
  return true;
}

std::optional<std::size_t> Grammar::arity(const std::string& category) const {
  auto it = category_arities.find(category);
  if (it == category_arities.end()) return std::nullopt;
  return it->second;
}

std::optional<std::size_t> Grammar::scope_position(
    const std::string& category) const {
  auto it = scope_args.find(category);
  if (it == scope_args.end()) return std::nullopt;
  return it->second;
}

bool Grammar::has_rules_for(const std::string& category) const {
  for (const auto& r : rules)
    if (r.head.category == category) return true;
  return false;
}

std::string to_string(const Diagnostic& d) {
  std::string out = d.severity == Severity::Error ? "error" : "warning";
  if (d.line) out += " (line " + std::to_string(d.line) + ")";
  return out + ": " + d.message;
}

bool has_errors(const std::vector<Diagnostic>& diags) {
  for (const auto& d : diags)
    if (d.severity == Severity::Error) return true;
  return false;
}

GrammarError::GrammarError(const std::string& msg, std::size_t line,
                           std::size_t column)
    : std::runtime_error("line " + std::to_string(line) + ", column " +
                         std::to_string(column) + ": " + msg),
      line_(line),
      column_(column) {}

namespace {

class GrammarReader {
 public:
  explicit GrammarReader(std::string_view text) : lex_(text) {}

  Grammar read() {
    while (lex_.peek().kind != Tok::End) {
      if (lex_.peek().kind == Tok::At)
        directive();
      else
        rule();
    }
    finish();
    return std::move(g_);
  }

 private:
  struct DirectiveRef {
    std::string category;
    std::string what;
    std::size_t line;
    std::size_t column;
  };

  [[noreturn]] void fail(const std::string& msg, const Token& at) const {
    throw GrammarError(msg, at.line, at.column);
  }

  Token atom(std::string_view what) {
    if (lex_.peek().kind != Tok::Atom)
      fail("expected " + std::string(what), lex_.peek());
    return lex_.next();
  }

  void directive() {
    lex_.next();  // '@'
    Token name = atom("directive name");
    if (name.text == "start") {
      Token cat = atom("category");
      if (start_seen_) fail("duplicate directive @start", name);
      start_seen_ = true;
      g_.start = cat.text;
      refs_.push_back({cat.text, "@start", cat.line, cat.column});
    } else if (name.text == "conj") {
      Token cat = atom("category");
      if (conj_seen_) fail("duplicate directive @conj", name);
      conj_seen_ = true;
      g_.conj_category = cat.text;
      conj_ref_ = DirectiveRef{cat.text, "@conj", cat.line, cat.column};
    } else if (name.text == "scope") {
      Token cat = atom("category");
      Token pos = lex_.peek();
      if (pos.kind != Tok::Number) fail("expected argument position", pos);
      lex_.next();
      if (g_.scope_args.count(cat.text))
        fail("duplicate directive @scope " + cat.text, name);
      const auto n = static_cast<std::size_t>(std::stoul(pos.text));
      if (n == 0) fail("argument positions start at 1", pos);
      g_.scope_args[cat.text] = n;
      refs_.push_back({cat.text, "@scope", cat.line, cat.column});
    } else if (name.text == "quant") {
      Token f = atom("functor");
      if (!g_.quantifiers.insert(f.text).second)
        fail("duplicate directive @quant " + f.text, name);
    } else if (name.text == "connective") {
      Token c = atom("connective");
      if (!connectives_seen_) {
        g_.connectives.clear();
        connectives_seen_ = true;
      }
      if (!g_.connectives.insert(c.text).second)
        fail("duplicate directive @connective " + c.text, name);
    } else {
      fail("unknown directive @" + name.text, name);
    }
    lex_.expect(Tok::Dot, "'.'");
  }

  NonTerminal nonterminal(detail::VarScope& scope) {
    Token at = lex_.peek();
    if (at.kind != Tok::Atom) fail("expected a category", at);
    Term t = detail::read_term(lex_, scope);
    NonTerminal nt{t.name(), {t.args().begin(), t.args().end()}};
    note_arity(nt, at);
    return nt;
  }

  void note_arity(const NonTerminal& nt, const Token& at) {
    auto [it, inserted] =
        g_.category_arities.emplace(nt.category, nt.args.size());
    if (!inserted && it->second != nt.args.size())
      fail("arity conflict " + nt.category + " (" +
               std::to_string(it->second) + " vs " +
               std::to_string(nt.args.size()) + ")",
           at);
  }

  void rule() {
    detail::VarScope scope;
    Rule r;
    r.id = g_.rules.size();
    r.line = lex_.peek().line;
    r.head = nonterminal(scope);
    lex_.expect(Tok::Arrow, "'-->'");
    for (;;) {
      if (lex_.peek().kind == Tok::LBracket) {
        lex_.next();
        r.body.push_back(Terminal{atom("terminal word").text});
        while (lex_.peek().kind == Tok::Comma) {
          lex_.next();
          r.body.push_back(Terminal{atom("terminal word").text});
        }
        lex_.expect(Tok::RBracket, "']'");
      } else {
        r.body.push_back(nonterminal(scope));
      }
      if (lex_.peek().kind != Tok::Comma) break;
      lex_.next();
    }
    lex_.expect(Tok::Dot, "'.'");
    g_.rules.push_back(std::move(r));
  }

  void finish() {
    if (g_.rules.empty()) throw GrammarError("grammar has no rules", 1, 1);
    if (!start_seen_) g_.start = g_.rules.front().head.category;
    for (const auto& ref : refs_) {
      if (!g_.has_rules_for(ref.category))
        throw GrammarError(ref.what + " names unknown category " + ref.category,
                           ref.line, ref.column);
    }
    if (conj_ref_ && !g_.category_arities.count(conj_ref_->category))
      throw GrammarError("@conj names unknown category " + conj_ref_->category,
                         conj_ref_->line, conj_ref_->column);
  }

  Lexer lex_;
  Grammar g_;
  bool start_seen_ = false;
  bool conj_seen_ = false;
  bool connectives_seen_ = false;
  std::vector<DirectiveRef> refs_;
  std::optional<DirectiveRef> conj_ref_;
};

}  // namespace

Grammar parse_grammar(std::string_view text) {
  try {
    return GrammarReader(text).read();
  } catch (const TermSyntaxError& e) {
    // Strip the "line:col: " prefix the term reader adds.
    std::string msg = e.what();
    auto p = msg.find(": ");
    throw GrammarError(p == std::string::npos ? msg : msg.substr(p + 2),
                       e.line(), e.column());
  }
}

Grammar load_grammar(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read grammar file " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_grammar(ss.str());
}

std::vector<Diagnostic> validate(const Grammar& g) {
  std::vector<Diagnostic> out;
  auto error = [&](std::string msg, std::size_t line = 0) {
    out.push_back({Severity::Error, std::move(msg), line});
  };

  std::set<std::string> heads;
  for (const auto& r : g.rules) heads.insert(r.head.category);

  std::map<std::string, std::set<std::size_t>> arities;
  std::set<std::string> reported_undefined;
  for (const auto& r : g.rules) {
    arities[r.head.category].insert(r.head.args.size());
    for (const auto& item : r.body) {
      const auto* nt = std::get_if<NonTerminal>(&item);
      if (!nt) continue;
      arities[nt->category].insert(nt->args.size());
      if (!heads.count(nt->category) && nt->category != g.conj_category &&
          reported_undefined.insert(nt->category).second)
        error("undefined category " + nt->category, r.line);
    }
    if (r.body.size() == 1) {
      const auto* nt = std::get_if<NonTerminal>(&r.body.front());
      if (nt && nt->category == r.head.category)
        out.push_back({Severity::Warning, "unit cycle " + r.head.category,
                       r.line});
    }
  }

  for (const auto& [cat, set] : arities)
    if (set.size() > 1) error("arity conflict " + cat);

  if (!heads.count(g.start)) error("start category " + g.start + " has no rules");

  if (auto it = arities.find(g.conj_category);
      it != arities.end() && (it->second.size() != 1 || *it->second.begin() != 1))
    error("conjunction category " + g.conj_category +
          " must have exactly one argument");

  for (const auto& [cat, pos] : g.scope_args) {
    auto it = arities.find(cat);
    if (it == arities.end()) {
      error("scope declared for unknown category " + cat);
      continue;
    }
    for (std::size_t a : it->second)
      if (pos == 0 || pos > a)
        error("scope position " + std::to_string(pos) + " exceeds arity of " +
              cat);
  }
  return out;
}

std::string to_source(const Rule& r) {
  CanonicalNamer namer;
  auto nt = [&](const NonTerminal& n) {
    std::string s = n.category;
    if (!n.args.empty()) {
      s += '(';
      for (std::size_t i = 0; i < n.args.size(); ++i) {
        if (i) s += ", ";
        s += namer.format(n.args[i]);
      }
      s += ')';
    }
    return s;
  };
  std::string out = nt(r.head) + " --> ";
  for (std::size_t i = 0; i < r.body.size(); ++i) {
    if (i) out += ", ";
    if (const auto* t = std::get_if<Terminal>(&r.body[i]))
      out += "[" + t->token + "]";
    else
      out += nt(std::get<NonTerminal>(r.body[i]));
  }
  return out + ".";
}

std::string to_source(const Grammar& g) {
  std::string out;
  out += "@start " + g.start + ".\n";
  // @conj must name a category that occurs; the default may not.
  if (g.category_arities.count(g.conj_category))
    out += "@conj " + g.conj_category + ".\n";
  for (const auto& [cat, pos] : g.scope_args)
    out += "@scope " + cat + " " + std::to_string(pos) + ".\n";
  for (const auto& q : g.quantifiers) out += "@quant " + q + ".\n";
  for (const auto& c : g.connectives) out += "@connective " + c + ".\n";
  for (const auto& r : g.rules) out += to_source(r) + "\n";
  return out;
}

}  // namespace dlgram
