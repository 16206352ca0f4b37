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

#include "doctest.h"
#include "dlgram/term.hpp"
#include "term_oracle.hpp"

using namespace dlgram;
using dlgram::testing::Gen;
using dlgram::testing::GroundOracle;

namespace {

Term T(std::string_view s) { return parse_term(s); }

// Parses several terms with one variable scope, so names are shared.
std::vector<Term> Ts(std::string_view s) { return parse_terms(s); }

bool same_up_to_renaming(const Term& a, const Term& b) { return is_variant(a, b); }

}  // namespace

TEST_CASE("unify: examples") {
  auto v = Ts("X, john");
  auto s = unify(v[0], v[1], {});
  REQUIRE(s);
  CHECK(dlgram::apply(*s, v[0]) == Term::constant("john"));

  auto w = Ts("f(X,b), f(a,Y), X, Y");
  s = unify(w[0], w[1], {});
  REQUIRE(s);
  CHECK(to_string(dlgram::apply(*s, w[2])) == "a");
  CHECK(to_string(dlgram::apply(*s, w[3])) == "b");

  auto o = Ts("X, f(X)");
  CHECK_FALSE(unify(o[0], o[1], {}));

  auto a = Ts("window(W), window(V), W, V");
  s = unify(a[0], a[1], {});
  REQUIRE(s);
  CHECK(s->size() == 1);
  CHECK(dlgram::apply(*s, a[2]) == dlgram::apply(*s, a[3]));
}

TEST_CASE("unify: failure leaves the input substitution usable") {
  auto v = Ts("X, Y, f(X), g(Y)");
  auto s = unify(v[0], Term::constant("a"), {});
  REQUIRE(s);
  const Substitution before = *s;
  CHECK_FALSE(unify(v[2], v[3], *s));
  CHECK(*s == before);
}

TEST_CASE("occurs-check for every functor shape") {
  auto x = Term::fresh_variable("X");
  for (const char* f : {"f", "g", "and", "exists"}) {
    CHECK_FALSE(unify(x, Term::compound(f, {x}), {}));
    CHECK_FALSE(unify(x, Term::compound(f, {Term::constant("a"), Term::compound("h", {x})}), {}));
  }
}

TEST_CASE("apply: examples") {
  auto v = Ts("X, likes(X,golf)");
  Substitution s = Substitution{}.extended(v[0].var_id(), Term::constant("john"));
  CHECK(to_string(dlgram::apply(s, v[1])) == "likes(john,golf)");

  Term t = T("f(X,g(Y))");
  CHECK(dlgram::apply(Substitution{}, t) == t);

  auto c = Ts("X, f(Y), Y");
  Substitution chain = Substitution{}
                           .extended(c[0].var_id(), c[1])
                           .extended(c[2].var_id(), Term::constant("a"));
  Substitution n = chain.normalized();
  CHECK(to_string(dlgram::apply(n, c[0])) == "f(a)");
  CHECK(to_string(n.bindings().at(c[0].var_id())) == "f(a)");
  CHECK(dlgram::apply(n, dlgram::apply(n, c[0])) == dlgram::apply(n, c[0]));
}

TEST_CASE("rename_fresh: examples") {
  Term t = T("np(X,S,S)");
  Term r1 = rename_fresh(t);
  Term r2 = rename_fresh(t);
  CHECK(is_variant(t, r1));
  CHECK(r1.arg(1) == r1.arg(2));
  CHECK_FALSE(r1.arg(0) == t.arg(0));
  CHECK(rename_fresh(T("john")) == T("john"));
  for (const auto& a : r1.args())
    for (const auto& b : r2.args()) CHECK_FALSE(a == b);
}

TEST_CASE("is_variant: examples") {
  CHECK(is_variant(T("f(X,X)"), T("f(Y,Y)")));
  CHECK_FALSE(is_variant(T("f(X,Y)"), T("f(Z,Z)")));
  CHECK_FALSE(is_variant(T("f(Z,Z)"), T("f(X,Y)")));
  CHECK(is_variant(T("f(a)"), T("f(a)")));
  CHECK_FALSE(is_variant(T("f(a)"), T("f(X)")));
}

TEST_CASE("abstract_over: examples") {
  auto args = Ts("W, demolished(X,W), a(W,window(W),demolished(X,W))");
  auto [out, v] = abstract_over(args, 2);
  REQUIRE(out.size() == 3);
  CHECK(v.is_variable());
  CHECK(out[0] == args[0]);  // W kept, shared with the source
  CHECK(out[1] == v);
  CHECK(out[2] == Term::compound("a", {args[0], args[2].arg(1), v}));

  auto one = Ts("X");
  auto [o1, v1] = abstract_over(one, 1);
  CHECK(o1[0] == v1);
  CHECK_FALSE(v1 == one[0]);

  auto twice = Ts("a, g(a)");
  auto [o2, v2] = abstract_over(twice, 1);
  CHECK(o2[0] == v2);
  CHECK(o2[1] == Term::compound("g", {v2}));
}

TEST_CASE("c_unify: examples") {
  Term t = T("f(X,g(a))");
  auto [same, s0] = c_unify(t, t, "and", {});
  CHECK(same == t);
  CHECK(s0.empty());

  auto w = Ts("a(W,window(W),the(Y,car(Y),drove_through(X1,Y,W))),"
              "a(V,window(V),demolished(X,V)), X1, X, W, Y");
  Substitution s = Substitution{}.extended(w[2].var_id(), w[3]);
  auto [joined, s1] = c_unify(w[0], w[1], "and", s);
  const Term& X = w[3];
  const Term& W = w[4];
  const Term& Y = w[5];
  Term expected = Term::compound(
      "a", {W, Term::compound("window", {W}),
            Term::compound(
                "and",
                {Term::compound("the", {Y, Term::compound("car", {Y}),
                                        Term::compound("drove_through", {X, Y, W})}),
                 Term::compound("demolished", {X, W})})});
  CHECK(same_up_to_renaming(dlgram::apply(s1, joined), expected));
  // W stays shared across both conjuncts.
  Term r = dlgram::apply(s1, joined);
  CHECK(r.arg(0) == r.arg(2).arg(1).arg(1));

  auto [clash, s2] = c_unify(T("f(a,X)"), T("g(b)"), "and", {});
  CHECK(to_string(clash) == "and(f(a,V0),g(b))");
  CHECK(s2.empty());
}

TEST_CASE("canonical text round-trips") {
  for (const char* src : {"john", "f(X,Y,X)", "each(V0,man(V0),and(a,b))"}) {
    Term t = T(src);
    CHECK(is_variant(T(to_string(t)), t));
  }
  CHECK_THROWS_AS(T("f(a"), TermSyntaxError);
  CHECK_THROWS_AS(T("F(a)"), TermSyntaxError);
}

// --- properties on random terms ---------------------------------------------

TEST_CASE("property: unify agrees with the ground-enumeration oracle") {
  Gen gen{std::mt19937(20261016)};
  GroundOracle oracle;
  REQUIRE(oracle.universe_size() == 38);
  int agreed = 0, unifiable = 0;
  const int pairs = 10000;
  for (int i = 0; i < pairs; ++i) {
    Term a = gen.term(2), b = gen.term(2);
    auto s = unify(a, b, {});
    const bool expect = oracle.unifiable(a, b, gen.x.var_id(), gen.y.var_id());
    if (s) {
      ++unifiable;
      // soundness
      CHECK(dlgram::apply(*s, a) == dlgram::apply(*s, b));
    }
    if (static_cast<bool>(s) == expect) ++agreed;
    else FAIL_CHECK("disagreement on " << to_string(a) << " = " << to_string(b));
  }
  CHECK(agreed == pairs);
  MESSAGE(unifiable << " of " << pairs << " pairs unifiable");
  CHECK(unifiable > pairs / 10);
  CHECK(unifiable < pairs * 9 / 10);
}

TEST_CASE("property: is_variant is an equivalence relation") {
  Gen gen{std::mt19937(7)};
  std::vector<Term> pool;
  for (int i = 0; i < 60; ++i) {
    Term t = gen.term(2);
    pool.push_back(t);
    pool.push_back(rename_fresh(t));
  }
  for (const auto& a : pool) {
    CHECK(is_variant(a, a));
    for (const auto& b : pool) {
      CHECK(is_variant(a, b) == is_variant(b, a));
      if (!is_variant(a, b)) continue;
      for (const auto& c : pool)
        if (is_variant(b, c)) CHECK(is_variant(a, c));
    }
  }
}

TEST_CASE("property: c_unify identity and totality") {
  Gen gen{std::mt19937(11)};
  for (int i = 0; i < 2000; ++i) {
    Term a = gen.term(3), b = gen.term(3);
    auto [id, s0] = c_unify(a, a, "and", {});
    CHECK(id == a);
    CHECK(s0.empty());
    // Total: always produces a term, and the result is an instance-or-join
    // that is itself closed under its substitution.
    auto [r, s] = c_unify(a, b, "or", {});
    CHECK(dlgram::apply(s, r) == dlgram::apply(s, dlgram::apply(s, r)));
    if (unify(a, b, {})) CHECK(r.name() != "or");
  }
}

TEST_CASE("property: abstract_over then unify restores the source args") {
  Gen gen{std::mt19937(3)};
  for (int i = 0; i < 2000; ++i) {
    std::vector<Term> args{gen.term(2), gen.term(2), gen.term(2)};
    const std::size_t pos = 1 + i % 3;
    auto [abs, v] = abstract_over(args, pos);
    auto s = unify(v, args[pos - 1], {});
    REQUIRE(s);
    CHECK(dlgram::apply(*s, abs) == args);
  }
}
