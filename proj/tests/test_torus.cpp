#include <random>

#include "doctest.h"
#include "lie/psl2.hpp"
#include "lie/torus.hpp"

using namespace lie;

TEST_CASE("congruence solver against enumeration") {
  std::mt19937_64 rng(11);
  for (I64 n : {12, 8, 9, 30, 7}) {
    for (int trial = 0; trial < 20; ++trial) {
      int rows = 2, cols = 3;
      I64Mat a(rows, std::vector<I64>(cols));
      for (auto& r : a)
        for (auto& x : r) x = I64(rng() % n);
      std::vector<I64> c(rows);
      for (auto& x : c) x = I64(rng() % n);
      std::uint64_t brute = 0;
      std::vector<I64> x(cols, 0);
      for (I64 i = 0; i < n * n * n; ++i) {
        x = {i % n, (i / n) % n, i / (n * n)};
        bool ok = true;
        for (int r = 0; r < rows; ++r) {
          I64 s = 0;
          for (int k = 0; k < cols; ++k) s += a[r][k] * x[k];
          if (mod(s - c[r], n)) ok = false;
        }
        brute += ok;
      }
      auto sol = solve_congruence(a, c, n);
      CAPTURE(n);
      CHECK(std::uint64_t(sol.count) == brute);
      CHECK(bool(sol.particular) == (brute > 0));
      if (sol.particular)
        for (int r = 0; r < rows; ++r) {
          I64 s = 0;
          for (int k = 0; k < cols; ++k) s += a[r][k] * (*sol.particular)[k];
          CHECK(mod(s - c[r], n) == 0);
        }
      for (auto& g : sol.kernel_gens)
        for (int r = 0; r < rows; ++r) {
          I64 s = 0;
          for (int k = 0; k < cols; ++k) s += a[r][k] * g[k];
          CHECK(mod(s, n) == 0);
        }
    }
  }
}

TEST_CASE("compact torus-normaliser elements") {
  auto F = Field::prime(61);
  AdjointGroup G(build_lie_algebra(roots_from_dynkin("F4"), F));
  const auto& rd = G.L().rd();
  Mat a = G.n(rd.simple(0)) * G.n(rd.simple(2)) * G.h(1, 7);
  Mat b = G.n(rd.simple(3)) * G.n(rd.simple(1));
  NElem ea = nelem_of(G, a), eb = nelem_of(G, b);
  CHECK(nelem_mat(G, ea) == a);
  CHECK(nelem_mat(G, nelem_mul(F, ea, eb)) == a * b);
  CHECK(nelem_mat(G, nelem_pow(F, eb, 5)) == power(b, 5));
  CHECK(nelem_order(F, eb) == order_dividing(b, 1000000));
  CHECK_THROWS_AS(nelem_of(G, G.x(rd.simple(0), 1)), NotNormalizing);

  // conjugation on torus coordinates
  auto N = conj_action(rd, ea.perm);
  Mat t = G.torus({3, 5, 11, 2});
  auto bt = torus_coords(G, t);
  auto bc = torus_coords(G, inverse(a) * t * a);
  for (int k = 0; k < 4; ++k) {
    I64 s = 0;
    for (int i = 0; i < 4; ++i) s += N[k][i] * bt[i];
    CHECK(mod(s - bc[k], 60) == 0);
  }
  CHECK(torus_from_coords(G, bt) == t);
}

TEST_CASE("layer action, u and centraliser for an order-12 lift in F4(61)") {
  auto F = Field::prime(61);
  AdjointGroup G(build_lie_algebra(roots_from_dynkin("F4"), F));
  const auto& rd = G.L().rd();
  auto layer = torus_layer(G, 5);
  Poly mu = Poly::from_ints(Field::prime(5), {4, 3, 1});
  auto lift = random_weyl_lift(G, 12, 3, [&](const WeylLift& c) {
    auto R = rational_canonical_form(action_on_torus_layer(G, c.mat, layer));
    for (auto& b : R.blocks)
      if (b == mu) return true;
    return false;
  });
  const Mat& s = lift.mat;
  CHECK(order_dividing(s, 24) == 12);
  CHECK(perm_order(*G.root_perm(s)) == 12);
  CHECK(G.membership(s));

  Mat A = action_on_torus_layer(G, s, layer);
  CHECK(action_on_torus_layer(G, G.identity(), layer).is_identity());
  CHECK(action_on_torus_layer(G, s * s, layer) == A * A);
  // two 2x2 blocks
  auto R = rational_canonical_form(A);
  CHECK(R.blocks.size() == 2);
  CHECK(charpoly(A) == Poly::from_ints(A.field(), {4, 2, 1}) * mu);

  Mat u = find_u(G, A, layer, mu);
  CHECK(!u.is_identity());
  auto rep = verify_relations(borel_relations(25), u, s, G.identity());
  for (auto& c : rep.checks) {
    CAPTURE(c.name);
    CHECK(c.pass);
  }
  CHECK_THROWS_AS(find_u(G, A, layer, Poly::from_ints(A.field(), {1, 1})), BlockNotFound);

  WeylGroup W(G.L().rd());
  auto C = centralizer_in_torus_layers(W, *G.root_perm(s), {2, 3});
  CHECK(C.order == 1);
  CHECK(C.det_check == 1);

  // longest element acts as -1: the centraliser is the 2-torsion 2^4
  Perm w0;
  W.enumerate([&](const Perm& w, const std::vector<int>&) {
    bool neg = true;
    for (int i = 0; i < 4; ++i) neg = neg && w[rd.simple(i)] == rd.neg(rd.simple(i));
    if (neg) w0 = w;
  });
  auto C0 = centralizer_in_torus_layers(W, w0, {2});
  CHECK(C0.order == 16);
  CHECK(C0.det_check == 16);
  CHECK_THROWS_AS(centralizer_in_torus_layers(W, rd.refl[0], {2}), NotFinite);

  auto F5 = Field::prime(5);
  CHECK(find_u_exponents(Mat::scalar(F5, 1, 4), Poly::linear(F5, 4)) == Vec{1});
}
