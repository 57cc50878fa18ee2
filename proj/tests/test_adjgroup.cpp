#include <random>

#include "doctest.h"
#include "lie/adjgroup.hpp"

using namespace lie;

namespace {

Mat random_element(const AdjointGroup& G, std::mt19937_64& rng, int len) {
  const auto& rd = G.L().rd();
  std::uniform_int_distribution<int> pick(0, rd.nroots() - 1);
  std::uniform_int_distribution<Elt> t(1, G.field()->q() - 1);
  Mat g = G.identity();
  for (int k = 0; k < len; ++k) g = g * G.x(pick(rng), t(rng));
  return g;
}

}  // namespace

TEST_CASE("ghn battery on F4") {
  auto F = Field::prime(61);
  AdjointGroup G(build_lie_algebra(roots_from_dynkin("F4"), F));
  auto rep = verify_ghn(G, ghn(G, F->gen()));
  CHECK(rep.h_commute);
  CHECK(rep.n_normalise);
  CHECK(rep.x_fix);
  CHECK(rep.members);
}

TEST_CASE("membership") {
  auto F = Field::prime(61);
  AdjointGroup G(build_lie_algebra(roots_from_dynkin("F4"), F));
  CHECK(G.membership(G.identity()));
  CHECK(G.membership(G.x(G.L().rd().simple(0), 1)));
  CHECK_FALSE(G.membership(Mat::scalar(F, G.dim(), 2)));
  CHECK(G.membership(chevalley_involution(G.L())));

  std::mt19937_64 rng(5);
  Mat a = random_element(G, rng, 6), b = random_element(G, rng, 6);
  CHECK(G.membership(a * b));
  CHECK(G.membership(inverse(a)));
  CHECK(G.quick_filter(a * b, rng));
  // a generic perturbation fails both tests
  Mat bad = a;
  bad(3, 5) = F->add(bad(3, 5), 1);
  CHECK_FALSE(G.membership(bad));
  CHECK_FALSE(G.quick_filter(bad, rng));

  // x_r(t) x_r(u) = x_r(t+u) and x_r(t)^-1 = x_r(-t)
  int r = G.L().rd().highest();
  CHECK(G.x(r, 3) * G.x(r, 7) == G.x(r, 10));
  CHECK(inverse(G.x(r, 3)) == G.x(r, F->neg(3)));
}

TEST_CASE("torus and Weyl representatives") {
  auto F = Field::prime(31);
  auto rd = roots_from_dynkin("F4");
  AdjointGroup G(build_lie_algebra(rd, F));
  Vec v{2, 3, 5, 7};
  Mat t = G.torus(v);
  CHECK(G.membership(t));
  CHECK(G.torus_values(t) == v);
  // h_i(l) acts on alpha_j by l^{C[j][i]}
  Elt l = 3;
  Mat h = G.h(1, l);
  for (int j = 0; j < 4; ++j) {
    int p = G.L().pos(rd.simple(j));
    CHECK(h(p, p) == F->pow(l, rd.cartan[1][j]));
  }
  // n_r permutes root lines through the reflection
  for (int i = 0; i < 4; ++i) {
    auto perm = G.root_perm(G.n(rd.simple(i)));
    REQUIRE(perm);
    CHECK(*perm == rd.refl[i]);
  }
  CHECK_FALSE(G.root_perm(G.x(rd.simple(0), 1)));
}

TEST_CASE("adapted Chevalley basis diagonalises a conjugated torus element") {
  auto F = Field::prime(61);
  AdjointGroup G(build_lie_algebra(roots_from_dynkin("F4"), F));
  std::mt19937_64 rng(11);
  Mat g = random_element(G, rng, 8);
  Mat s = inverse(g) * G.torus({F->gen(), F->pow(F->gen(), 3), 5, 9}) * g;
  auto res = adapted_chevalley_basis(G.L(), s, 3);
  Mat P = res.matrix;
  CHECK((P * s * inverse(P)).is_diagonal());
  CHECK(G.membership(P));
}
