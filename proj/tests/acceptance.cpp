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

// Acceptance suite: one PASS/FAIL line per criterion; exit status is the
// number of failed criteria.

#include <chrono>
#include <functional>
#include <iostream>
#include <random>

#include "dlgram/coordination.hpp"
#include "dlgram/parser.hpp"
#include "dlgram/reshape.hpp"
#include "term_oracle.hpp"
#include "test_util.hpp"

using namespace dlgram;
using namespace dlgram::testing;

namespace {

// Collects the reasons a criterion failed.
struct Check {
  std::vector<std::string> failures;
  void expect(bool ok, const std::string& what) {
    if (!ok) failures.push_back(what);
  }
};

std::vector<std::string> words(const std::string& s) { return tokenize(s); }

std::vector<std::string> constraint_lines(const ParseOutcome& o) {
  std::vector<std::string> out;
  for (const auto& l : o.trace)
    if (l.rfind("C", 0) == 0) out.push_back(l);
  return out;
}

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string l; std::getline(in, l);) out.push_back(l);
  return out;
}

// Index of the first trace line starting with `prefix`, or npos.
std::size_t line_index(const std::vector<std::string>& trace, const std::string& needle) {
  for (std::size_t i = 0; i < trace.size(); ++i)
    if (trace[i].find(needle) != std::string::npos) return i;
  return std::string::npos;
}

const char* kFrench = "jean mange une pomme rouge et une verte";
const char* kWoods = "john drove the car through and demolished a window";
const char* kEachMan = "each man ate an apple and a pear";

// 1 ---------------------------------------------------------------------------
void french_replay(Check& c) {
  auto out = parse(french(), words(kFrench));
  const auto golden = lines_of(read_file(source_path("tests/golden/french_trace.txt")));
  c.expect(!golden.empty(), "golden trace missing");
  c.expect(out.trace == golden, "trace differs from tests/golden/french_trace.txt");

  std::set<std::string> layer2;
  for (EdgeId id : out.chart.layer(2)) {
    const Edge& e = out.chart.edge(id);
    layer2.insert(e.category + "(" + std::to_string(e.start) + "," + std::to_string(e.end) + ")");
  }
  c.expect(layer2 == std::set<std::string>{"name(0,1)", "v(1,2)", "det(2,3)", "n(3,4)",
                                           "adj(4,5)", "conj(5,6)", "det(6,7)", "adj(7,8)"},
           "layer 2 is not exactly the eight lexical edges");
  std::size_t prev = 0;
  for (const char* step : {"np(2,5)", "n(7,7)  [gap]", "np(6,8)", "np(2,8)", "vp(1,8)", "sent(0,8)"}) {
    const std::size_t at = line_index(out.trace, step);
    c.expect(at != std::string::npos && at >= prev, std::string("out of order or missing: ") + step);
    if (at != std::string::npos) prev = at;
  }
  c.expect(out.results.size() == 1, "expected one parse");
}

// 2 ---------------------------------------------------------------------------
void trial_order(Check& c) {
  auto out = parse(french(), words(kFrench));
  const std::vector<std::string> expected{
      "C1: posted for conj(and,5,6) N=5 M=6 connective=and",
      "C1: try left-complete adj(4,5) Z=4: failed",
      "C1: try right-complete det(6,7) P=7: failed",
      "C1: suspended",
      "C1: try left-complete np(2,5) Z=2: predicted e19 np(6,8)",
      "C1: combined e17 + e19 -> e20 np(2,8)",
      "C1: resolved"};
  const auto log = constraint_lines(out);
  c.expect(log == expected, "constraint log differs");
  const auto z4 = line_index(log, "Z=4: failed");
  const auto z2 = line_index(log, "Z=2: predicted");
  c.expect(z4 != std::string::npos && z2 != std::string::npos && z4 < z2,
           "adjective candidate not tried and failed before the np candidate");
}

// 3 ---------------------------------------------------------------------------
void woods(Check& c) {
  const std::string oracle = source_path("tests/oracles/woods_derivation.txt");
  const std::string expected = field(oracle, "expected");
  const std::string expected_vp = field(oracle, "expected-target-vp");
  c.expect(!expected.empty() && !expected_vp.empty(), "oracle lines missing");

  auto out = parse(english(), words(kWoods));
  c.expect(out.results.size() == 1, "expected exactly one logical form");
  if (out.results.size() != 1) return;
  const Term lf = out.results[0].logical_form;
  c.expect(is_variant(lf, parse_term(expected)), "logical form differs from oracle: " + to_string(lf));

  // exists(W, window(W), and(def(Y,car(Y),drove_through(john,Y,W)), demolished(john,W)))
  bool shared = lf.is_compound() && lf.arity() == 3 && lf.arg(2).arity() == 2;
  if (shared) {
    const Term& w = lf.arg(0);
    const Term& left = lf.arg(2).arg(0);
    const Term& right = lf.arg(2).arg(1);
    shared = w.is_variable() && lf.arg(1).arg(0) == w && left.arity() == 3 &&
             left.arg(2).arity() == 3 && left.arg(2).arg(2) == w && right.arity() == 2 &&
             right.arg(1) == w;
  }
  c.expect(shared, "window variable not shared across the conjuncts");

  const auto& res = out.constraints.at(0).resolutions;
  c.expect(res.size() == 1, "expected one resolution");
  if (res.size() == 1) {
    const Edge& target = out.chart.edge(res[0].target);
    const std::string got = target.category + "(" + to_string(target.args) + ")";
    c.expect(got == expected_vp, "resolved target vp differs from oracle: " + got);
  }
}

// 4 ---------------------------------------------------------------------------
void each_man(Check& c) {
  const std::string expected =
      field(source_path("tests/oracles/each_man_derivation.txt"), "expected");
  c.expect(!expected.empty(), "oracle line missing");
  auto out = parse(english(), words(kEachMan));
  c.expect(out.results.size() == 1, "expected exactly one logical form");
  if (out.results.size() == 1)
    c.expect(to_string(out.results[0].logical_form) == expected,
             "logical form differs from oracle: " + to_string(out.results[0].logical_form));
}

// 5 ---------------------------------------------------------------------------
void reshaping(Check& c) {
  Term in = parse_term("each(X, and(man(X),woman(X)), exists(Z,apple(Z),ate(X,Z)))");
  Term want = parse_term(
      "and(each(X,man(X),exists(Z,apple(Z),ate(X,Z))),each(X,woman(X),exists(Z,apple(Z),ate(X,Z))))");
  c.expect(is_variant(reshape(in, english()), want), "DISTRIB result differs");

  Term too = parse_term("but(if(drink(fred),C1), if(too(drink(sam)),C2))");
  Term too_want =
      parse_term("and(if(and(drink(fred),no(drink(sam))),C1), if(and(drink(fred),drink(sam)),C2))");
  c.expect(is_variant(reshape(too, english(), ReshapeRules{true, true}), too_want),
           "TOO result differs");
}

// 6 ---------------------------------------------------------------------------
struct Sample {
  bool is_french;
  std::string sentence;
};

const std::vector<Sample>& corpus() {
  static const std::vector<Sample> c{
      {true, kFrench},
      {true, "jean mange une pomme"},
      {true, "jean mange une pomme rouge"},
      {true, "une pomme rouge mange jean"},
      {true, "jean et jean"},
      {true, "et"},
      {true, "mange mange mange"},
      {true, "jean mange une pomme verte et une pomme rouge"},
      {false, kWoods},
      {false, kEachMan},
      {false, "john drove the car through and a window"},
      {false, "john laughed"},
      {false, "mary saw a man"},
      {false, "the woman ate each pear"},
      {false, "john drove the car through a window"},
      {false, "john and mary laughed"},
      {false, "a man and a woman sat at the table"},
      {false, "each man saw a woman and ate an apple"},
      {false, "john heard"},
      {false, "laughed john"},
      {false, "the train"},
      {false, "john ate an apple or a pear but mary laughed"},
      {false, "john drove a car through the window and mary saw the train"},
  };
  return c;
}

void naive_equivalence(Check& c) {
  int parsed = 0, failed = 0;
  for (const auto& [is_french, sentence] : corpus()) {
    const Grammar& g = is_french ? french() : english();
    const auto w = words(sentence);
    const bool same = edge_keys(plain_closure(g, w)) == NaiveEvaluator(g, w).run();
    c.expect(same, "edge sets differ on \"" + sentence + "\"");
    (parse(g, w).results.empty() ? failed : parsed)++;
  }
  c.expect(corpus().size() >= 20, "fewer than 20 sentences");
  c.expect(parsed > 0 && failed > 0, "corpus must mix parseable and unparseable input");
}

// 7 ---------------------------------------------------------------------------
void properties(Check& c) {
  Gen gen{std::mt19937(424242)};
  GroundOracle oracle;
  int agree = 0;
  for (int i = 0; i < 10000; ++i) {
    Term a = gen.term(2), b = gen.term(2);
    auto s = unify(a, b, {});
    const bool sound = !s || dlgram::apply(*s, a) == dlgram::apply(*s, b);
    if (sound && static_cast<bool>(s) == oracle.unifiable(a, b, gen.x.var_id(), gen.y.var_id()))
      ++agree;
  }
  c.expect(agree == 10000, "unify disagrees with the ground oracle on " +
                               std::to_string(10000 - agree) + " pairs");

  bool cu = true, rt = true;
  for (int i = 0; i < 2000; ++i) {
    Term a = gen.term(3), b = gen.term(3);
    auto [id, s0] = c_unify(a, a, "and", {});
    cu = cu && id == a && s0.empty();
    auto [r, s] = c_unify(a, b, "and", {});  // total: returns, never throws
    cu = cu && dlgram::apply(s, r) == dlgram::apply(s, dlgram::apply(s, r));
    std::vector<Term> args{a, b, gen.term(2)};
    auto [abs, v] = abstract_over(args, 1 + i % 3);
    auto back = unify(v, args[i % 3], {});
    rt = rt && back && dlgram::apply(*back, abs) == args;
  }
  c.expect(cu, "c_unify identity/totality violated");
  c.expect(rt, "abstract_over round-trip violated");

  bool idem = true;
  std::mt19937 rng(17);
  const char* quants[] = {"each", "exists", "def"};
  const char* conns[] = {"and", "or", "but"};
  std::function<Term(int)> form = [&](int d) -> Term {
    Term x = Term::fresh_variable("X");
    if (d == 0) return Term::compound(rng() % 2 ? "man" : "pear", {x});
    if (rng() % 2) return Term::compound(conns[rng() % 3], {form(d - 1), form(d - 1)});
    return Term::compound(quants[rng() % 3], {x, form(d - 1), form(d - 1)});
  };
  for (int i = 0; i < 500; ++i) {
    Term r = reshape(form(4), english(), ReshapeRules{true, true});
    idem = idem && reshape(r, english(), ReshapeRules{true, true}) == r;
  }
  c.expect(idem, "reshape is not idempotent");

  for (const auto& [is_french, sentence] : corpus()) {
    const Grammar& g = is_french ? french() : english();
    Chart ch = plain_closure(g, words(sentence));
    const std::size_t n = ch.size();
    close(ch, g);
    c.expect(ch.size() == n, "second close added edges on \"" + sentence + "\"");
  }
}

// 8 ---------------------------------------------------------------------------
void negative_controls(Check& c) {
  auto bad = parse(english(), words("john drove the car through and a window"));
  c.expect(bad.results.empty(), "unexpected parse");
  const auto log = constraint_lines(bad);
  c.expect(!log.empty() && log.back().size() >= 9 &&
               log.back().compare(log.back().size() - 9, 9, "exhausted") == 0,
           "constraint log does not end in exhausted status");
  auto plain = parse(french(), words("jean mange une pomme"));
  c.expect(plain.constraints.empty(), "constraints posted without a conjunction");
  c.expect(constraint_lines(plain).empty(), "constraint lines without a conjunction");
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<void(Check&)>>> criteria{
      {"French derivation replay", french_replay},
      {"constraint trial order", trial_order},
      {"Wood's sentence", woods},
      {"grammar-level isomorphic coordination", each_man},
      {"reshaping", reshaping},
      {"semi-naive/naive equivalence", naive_equivalence},
      {"property suites", properties},
      {"negative controls", negative_controls},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Check c;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      criteria[i].second(c);
    } catch (const std::exception& e) {
      c.failures.push_back(std::string("exception: ") + e.what());
    }
    const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                        std::chrono::steady_clock::now() - t0).count();
    const bool ok = c.failures.empty();
    failed += !ok;
    std::cout << "criterion " << i + 1 << ": " << (ok ? "PASS" : "FAIL") << "  "
              << criteria[i].first << " (" << ms << " ms)\n";
    for (const auto& f : c.failures) std::cout << "    " << f << "\n";
  }
  return failed;
}
