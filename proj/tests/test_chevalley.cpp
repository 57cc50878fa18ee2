#include <random>

#include "doctest.h"
#include "lie/chevalley.hpp"

using namespace lie;

namespace {

std::vector<std::array<int, 3>> all_triples(int d) {
  std::vector<std::array<int, 3>> t;
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b)
      for (int c = 0; c < d; ++c) t.push_back({a, b, c});
  return t;
}

std::vector<std::array<int, 3>> random_triples(int d, int n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<std::array<int, 3>> t;
  for (int i = 0; i < n; ++i) t.push_back({int(rng() % d), int(rng() % d), int(rng() % d)});
  return t;
}

}  // namespace

TEST_CASE("structure constants") {
  auto a2 = build_lie_algebra(roots_from_dynkin("A2"), Field::prime(7));
  const auto& rd = a2->rd();
  int n12 = a2->N(rd.simple(0), rd.simple(1));
  CHECK((n12 == 1 || n12 == -1));
  CHECK(a2->N(rd.simple(1), rd.simple(0)) == -n12);
  for (auto t : {"F4", "E7"}) {
    auto rdt = roots_from_dynkin(t);
    auto N = structure_constants(rdt);
    int R = rdt.nroots();
    for (int r = 0; r < R; ++r)
      for (int s = 0; s < R; ++s) {
        int n = N[size_t(r) * R + s];
        if (rdt.sum(r, s) < 0) {
          CHECK(n == 0);
          continue;
        }
        CHECK(std::abs(n) == chain_p(rdt, r, s) + 1);
        CHECK(N[size_t(s) * R + r] == -n);
        CHECK(N[size_t(rdt.neg(r)) * R + rdt.neg(s)] == -n);
      }
    for (auto [g, rs] : extraspecial_pairs(rdt)) CHECK(N[size_t(rs.first) * R + rs.second] > 0);
  }
}

TEST_CASE("Jacobi identity") {
  for (auto t : {"A2", "A3"}) {
    auto L = build_lie_algebra(roots_from_dynkin(t), Field::prime(7));
    CHECK(jacobi_violations(*L, all_triples(L->dim())) == 0);
  }
  auto F4 = build_lie_algebra(roots_from_dynkin("F4"), Field::prime(61));
  CHECK(jacobi_violations(*F4, random_triples(F4->dim(), 10000, 1)) == 0);
  auto E7 = build_lie_algebra(roots_from_dynkin("E7"), Field::prime(37));
  CHECK(jacobi_violations(*E7, random_triples(E7->dim(), 10000, 2)) == 0);
}

TEST_CASE("tampered constants break Jacobi") {
  auto rd = roots_from_dynkin("A3");
  LieAlgebra L(rd, Field::prime(7));
  int a = rd.simple(0), b = rd.find({0, 1, 1});
  L.tamper(a, b, -L.N(a, b));
  CHECK(jacobi_violations(L, all_triples(L.dim())) > 0);
}

TEST_CASE("ad matrices") {
  auto L = build_lie_algebra(roots_from_dynkin("F4"), Field::prime(61));
  const auto& rd = L->rd();
  const auto& F = L->field();
  for (int r = 0; r < rd.nroots(); ++r) {
    Vec h(L->dim(), 0);
    IVec c = L->coroot(r);
    for (int i = 0; i < L->rank(); ++i) h[L->cartan_pos(i)] = F->from_int(c[i]);
    CHECK(L->basis(L->pos(r)) * L->ad(h) == vscale(F, L->basis(L->pos(r)), 2));
    CHECK(L->bracket(L->basis(L->pos(r)), L->basis(L->pos(rd.neg(r)))) == h);
    // nilpotence
    Mat A = L->ad_basis(L->pos(r));
    CHECK(power(A, 4).is_zero());
  }
  std::mt19937_64 rng(3);
  for (int t = 0; t < 200; ++t) {
    Vec x = L->basis(rng() % L->dim()), y = L->basis(rng() % L->dim()), z = L->basis(rng() % L->dim());
    Mat A = L->ad(x);
    CHECK(L->bracket(y, z) * A == vadd(F, L->bracket(y * A, z), L->bracket(y, z * A)));
  }
}

TEST_CASE("Chevalley involution and Killing form") {
  for (auto t : {"A2", "F4"}) {
    auto L = build_lie_algebra(roots_from_dynkin(t), Field::prime(61));
    Mat iota = chevalley_involution(*L);
    CHECK((iota * iota).is_identity());
    CHECK(preserves_bracket(*L, iota));
    Mat K = killing_form(*L);
    CHECK(K == K.transpose());
    CHECK(iota * K * iota.transpose() == K);
    for (int i = 0; i < L->dim(); ++i)
      for (int j = 0; j < L->dim(); ++j) {
        int r = L->root_at(i), s = L->root_at(j);
        if (r >= 0 && s >= 0 && s != L->rd().neg(r)) CHECK(K(i, j) == 0);
      }
  }
}
