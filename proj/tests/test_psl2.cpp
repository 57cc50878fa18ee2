#include "doctest.h"
#include "lie/psl2.hpp"

using namespace lie;

TEST_CASE("word parser") {
  auto r = parse_relation("x", "u^{s^2} = u u^{s^4} = u^{s^4} u");
  CHECK(r.sides.size() == 3);
  CHECK(r.sides[0].kind == WordNode::Conj);
  CHECK_THROWS_AS(parse_relation("bad", "u^"), ParseError);
  CHECK_THROWS_AS(parse_relation("bad", "u ) s"), ParseError);
  CHECK_THROWS_AS(parse_relation("bad", "(u s"), ParseError);

  auto F = Field::prime(37);
  Mat u = Mat::from_ints(F, {{1, 1}, {0, 1}});
  Mat s = Mat::from_ints(F, {{2, 0}, {5, 3}});
  Mat t = Mat::from_ints(F, {{0, 1}, {-1, 0}});
  WordEvaluator ev(u, s, t);
  CHECK(ev.eval(parse_relation("", "u^s").sides[0]) == inverse(s) * u * s);
  CHECK(ev.eval(parse_relation("", "[u, s]").sides[0]) == inverse(u) * inverse(s) * u * s);
  CHECK(ev.eval(parse_relation("", "(u s)^-2").sides[0]) == inverse(u * s * u * s));
  CHECK(ev.eval(parse_relation("", "u^0 t").sides[0]) == t);
  CHECK(ev.eval(parse_relation("", "u^{s^2 t}").sides[0]) == inverse(s * s * t) * u * (s * s * t));
}

TEST_CASE("bracket evaluator") {
  auto R = reference_images(27);
  CHECK(bracket_eval(R.u, R.s, Poly::constant(R.F, 1)) == R.u);
  CHECK(bracket_eval(R.u, R.s, Poly::x(R.F)) == inverse(R.s) * R.u * R.s);
  // m(X) = X^3 + X^2 + X + 2
  CHECK(bracket_eval(R.u, R.s, Poly(R.F, {2, 1, 1, 1})).is_scalar());
  CHECK_FALSE(bracket_eval(R.u, R.s, Poly(R.F, {1, 1, 1, 1})).is_scalar());
}

TEST_CASE("reference images satisfy the presentations") {
  for (int q : {25, 27, 29, 37}) {
    CAPTURE(q);
    auto R = reference_images(q);
    auto rep = verify_presentation(q, R.u, R.s, R.t, true);
    for (auto& c : rep.checks) {
      CAPTURE(c.name);
      CHECK(c.pass);
    }
    CHECK(rep.ok());
    auto b = verify_relations(borel_relations(q), R.u, R.s, R.t, true);
    CHECK(b.ok());
  }
  CHECK(presentation(25).relations.size() == 9);
  CHECK(presentation(27).relations.size() == 7);
  CHECK(borel_relations(25).relations.size() == 4);
  CHECK(borel_relations(37).relations.size() == 3);
  CHECK_THROWS_AS(presentation(31), UnsupportedQ);
  CHECK_THROWS_AS(borel_relations(99), UnsupportedQ);
}

TEST_CASE("a broken triple fails the right relation") {
  auto R = reference_images(37);
  Mat I = Mat::identity(R.F, 2);
  auto rep = verify_presentation(37, R.u, R.s, I, true);
  for (auto& c : rep.checks) {
    if (c.name == "vii") CHECK_FALSE(c.pass);
    if (c.name == "i" || c.name == "iii") CHECK(c.pass);
  }
  CHECK_FALSE(rep.ok());
  // identity u is not a faithful image
  auto triv = verify_presentation(37, I, I, I, true);
  CHECK_FALSE(triv.u_nontrivial);
  CHECK_FALSE(triv.ok());
}

TEST_CASE("relations survive simultaneous conjugation") {
  auto R = reference_images(29);
  Mat g = Mat::from_ints(R.F, {{3, 7}, {1, 11}});
  Mat gi = inverse(g);
  auto rep = verify_presentation(29, gi * R.u * g, gi * R.s * g, gi * R.t * g, true);
  CHECK(rep.ok());
}

TEST_CASE("general recipe data") {
  auto R25 = reference_images(25);
  auto d = recipe_data(R25.F, R25.omega, 2, 4);
  CHECK(d.delta == 2);
  CHECK(d.m == Poly(R25.F, {1, 4, 1}));
  CHECK(d.g_omega == Poly(R25.F, {4, 3}));
  CHECK(d.g_omega_inv == Poly(R25.F, {1, 1}));
  CHECK(d.g_omega_sq == Poly(R25.F, {2, 3}));

  auto R27 = reference_images(27);
  auto d27 = recipe_data(R27.F, R27.omega, 1, 6);
  CHECK(d27.m == Poly(R27.F, {2, 1, 1, 1}));
  CHECK(d27.g_omega == Poly(R27.F, {0, 1, 2}));
  CHECK(d27.g_omega_inv == Poly(R27.F, {1, 2}));

  auto R37 = reference_images(37);
  auto d37 = recipe_data(R37.F, R37.omega, 1, 13);
  CHECK(d37.m == Poly::linear(R37.F, 4));
  CHECK(d37.g_omega_inv == Poly::constant(R37.F, 19));

  CHECK_THROWS(recipe_data(R37.F, R37.omega, 1, 12));
}

TEST_CASE("general recipe agrees with the stored relations") {
  struct C {
    int q, k, l;
  };
  for (C c : {C{25, 2, 4}, C{27, 1, 6}, C{37, 1, 13}, C{29, 11, 1}}) {
    CAPTURE(c.q);
    auto R = reference_images(c.q);
    auto P = recipe_presentation(R.F, R.omega, c.k, c.l);
    CHECK(verify_relations(P, R.u, R.s, R.t, true).ok());
    // a wrong t is caught by both lists
    Mat t2 = R.t * R.u;
    CHECK_FALSE(verify_relations(P, R.u, R.s, t2, true).ok());
    CHECK_FALSE(verify_presentation(c.q, R.u, R.s, t2, true).ok());
  }
}
