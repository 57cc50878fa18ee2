#include <random>
#include <sstream>

#include "doctest.h"
#include "lie/errors.hpp"
#include "lie/triform.hpp"

using namespace lie;

namespace {

Vec unit(int n, int i) {
  Vec e(n, 0);
  e[i] = 1;
  return e;
}

Vec random_vec(const FieldPtr& F, int n, std::mt19937_64& rng) {
  std::uniform_int_distribution<Elt> any(0, F->q() - 1);
  Vec v(n);
  for (auto& x : v) x = any(rng);
  return v;
}

bool contained(const std::vector<Vec>& A, const std::vector<Vec>& B, const FieldPtr& F) {
  auto b = row_basis(B, F);
  auto ab = b;
  ab.insert(ab.end(), A.begin(), A.end());
  return row_basis(ab, F).size() == b.size();
}

}  // namespace

TEST_CASE("Dickson form") {
  auto F = Field::prime(11);
  auto f = dickson_form(F);
  CHECK(f.monomials() == 45);
  int n = 27;
  auto x = [&](int i) { return unit(n, dickson_x(i)); };
  auto xp = [&](int i) { return unit(n, dickson_xp(i)); };
  auto xx = [&](int i, int j) { return unit(n, dickson_xx(i, j)); };
  CHECK(f(x(1), xp(2), xx(1, 2)) == 1);
  CHECK(f(xx(1, 2), xx(3, 4), xx(5, 6)) == 1);
  CHECK(f(x(1), x(1), x(1)) == 0);
  // x_21 = -x_12
  CHECK(f(x(2), xp(1), xx(1, 2)) == F->neg(1));
  // "13 24 65": x_65 = -x_56
  CHECK(f(xx(1, 3), xx(2, 4), xx(5, 6)) == F->neg(1));
  CHECK(dickson_label(dickson_xx(3, 5)) == "x35");
  CHECK(dickson_label(dickson_xp(4)) == "x4'");
  CHECK_THROWS_AS(dickson_form(Field::prime(3)), BadCharacteristic);

  // every x_ij appears in 2 + 3 monomials; each variable at most once per monomial
  std::vector<int> count(n, 0);
  for (auto& [t, c] : f.constants()) {
    CHECK(t[0] < t[1]);
    CHECK(t[1] < t[2]);
    for (int i : t) ++count[i];
  }
  for (int i = 0; i < 12; ++i) CHECK(count[i] == 5);
  for (int i = 12; i < 27; ++i) CHECK(count[i] == 5);

  std::mt19937_64 rng(2);
  for (int k = 0; k < 20; ++k) {
    Vec u = random_vec(F, n, rng), v = random_vec(F, n, rng), w = random_vec(F, n, rng);
    Elt a = f(u, v, w);
    CHECK(f(v, u, w) == a);
    CHECK(f(w, v, u) == a);
    CHECK(f(u, w, v) == a);
  }

  std::ostringstream os;
  write_triform(os, f);
  std::istringstream is(os.str());
  CHECK(read_triform(is) == f);
}

TEST_CASE("P and T axioms") {
  auto F = Field::prime(13);
  auto f = dickson_form(F);
  auto pt = derive_P_T(f);
  std::mt19937_64 rng(8);
  std::uniform_int_distribution<Elt> any(1, F->q() - 1);
  for (int k = 0; k < 100; ++k) {
    Vec x = random_vec(F, 27, rng), y = random_vec(F, 27, rng), z = random_vec(F, 27, rng);
    Elt a = any(rng);
    CHECK(F->sub(F->sub(pt.P(x, vadd(F, y, z)), pt.P(x, y)), pt.P(x, z)) == f(x, y, z));
    CHECK(pt.P(x, vscale(F, y, a)) == F->mul(F->mul(a, a), pt.P(x, y)));
    CHECK(pt.T(vscale(F, x, a)) == F->mul(F->pow(a, 3), pt.T(x)));
    CHECK(F->sub(F->sub(pt.T(vadd(F, x, y)), pt.T(x)), pt.T(y)) == F->add(pt.P(x, y), pt.P(y, x)));
  }
}

TEST_CASE("Theta and Delta subspaces") {
  auto F = Field::prime(11);
  auto f = dickson_form(F);
  int n = 27;
  CHECK(theta({}, f).size() == 27);
  auto th1 = theta({unit(n, dickson_x(1))}, f);
  CHECK(contained({unit(n, dickson_x(2))}, th1, F));
  auto th2 = theta({unit(n, dickson_x(1)), unit(n, dickson_xp(2))}, f);
  CHECK_FALSE(contained({unit(n, dickson_xx(1, 2))}, th2, F));
  // Delta of a vector is the radical of f(x, -, -)
  auto d1 = delta({unit(n, dickson_x(1))}, f);
  for (auto& v : d1)
    for (int w = 0; w < n; ++w) CHECK(f(unit(n, dickson_x(1)), v, unit(n, w)) == 0);

  // subspace and inclusion reversal on random nested pairs
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 10; ++trial) {
    std::vector<Vec> U, V;
    int a = 1 + int(rng() % 3), b = int(rng() % 3);
    for (int i = 0; i < a; ++i) U.push_back(random_vec(F, n, rng));
    V = U;
    for (int i = 0; i < b; ++i) V.push_back(random_vec(F, n, rng));
    auto tu = theta(U, f), tv = theta(V, f);
    CHECK(contained(tv, tu, F));
    CHECK(row_basis(tu, F).size() == tu.size());
    // closed under sums: every combination satisfies the defining condition
    Vec s(n, 0);
    for (auto& v : tu) s = vadd(F, s, vscale(F, v, Elt(1 + rng() % 10)));
    for (auto& u : U)
      for (auto& w : U) CHECK(f(s, u, w) == 0);
  }
}

TEST_CASE("symmetric powers and invariant forms, small cases") {
  auto F = Field::prime(7);
  ModuleRep line = ModuleRep::from({Mat::identity(F, 1)});
  CHECK(sym_power_fixed_dim(line, 3) == 1);
  auto sol = invariant_triforms(line);
  CHECK(sol.forms.size() == 1);
  CHECK(sol.held_out_ok);
  ModuleRep triv4 = ModuleRep::from({Mat::identity(F, 4)});
  CHECK(sym_power_fixed_dim(triv4, 3) == 20);
  CHECK(sym_power_fixed_dim(triv4, 2) == 10);
  CHECK(sym_power_dim(27, 3) == 3654);

  // permutation module of a 3-cycle: invariant cubics are spanned by orbit sums
  Mat c = Mat::from_ints(F, {{0, 1, 0}, {0, 0, 1}, {1, 0, 0}});
  ModuleRep perm = ModuleRep::from({c});
  // orbits of the cyclic group on the 10 cubic monomials: {x^3}, {x^2y}, {x^2z}, {xyz}
  CHECK(sym_power_fixed_dim(perm, 3) == 4);
  auto ps = invariant_triforms(perm);
  CHECK(ps.forms.size() == 4);
  CHECK(ps.held_out_ok);
}

TEST_CASE("hom spaces and restriction") {
  auto F = Field::prime(11);
  auto sp = symplectic_group(F, 4);
  CHECK(sp.dim == 8);
  CHECK(hom_space(sp, sp).size() == 1);
  std::vector<Mat> ones(sp.gens.size(), Mat::identity(F, 1));
  ModuleRep triv = ModuleRep::from(ones);
  CHECK(hom_space(triv, sp).empty());
  ModuleRep fewer = ModuleRep::from({sp.gens[0]});
  CHECK_THROWS_AS(hom_space(sp, fewer), GeneratorCountMismatch);

  // basis change of one side keeps the dimension; the intertwiner is the change of basis
  std::mt19937_64 rng(6);
  Mat P;
  for (;;) {
    P = Mat(F, 8, 8);
    for (auto& x : P.data()) x = Elt(rng() % 11);
    if (det(P)) break;
  }
  std::vector<Mat> conj;
  for (auto& g : sp.gens) conj.push_back(inverse(P) * g * P);
  auto H = hom_space(sp, ModuleRep::from(conj));
  REQUIRE(H.size() == 1);
  for (size_t i = 0; i < sp.gens.size(); ++i) CHECK(sp.gens[i] * H[0] == H[0] * conj[i]);

  auto self = hom_space(sp, sp);
  CHECK(restrict_compare(self, self).is_identity());
  CHECK(restrict_compare({}, self).rows() == 0);
  CHECK_THROWS_AS(restrict_compare({P}, self), NotContained);
}

TEST_CASE("27-dimensional module for Sp8(11) and its invariant cubic form") {
  auto F = Field::prime(11);
  auto sp = symplectic_group(F, 4);
  Mat J = invariant_alternating_form(sp);
  REQUIRE(J.rows() == 8);
  for (auto& g : sp.gens) CHECK(g * J * g.transpose() == J);

  auto V = wedge2_mod_form(sp);
  CHECK(V.dim == 27);
  for (auto& g : V.gens) CHECK(det(g) == 1);
  auto Vid = wedge2_mod_form(ModuleRep::from({Mat::identity(F, 8)}));
  CHECK(Vid.gens[0].is_identity());
  // the torus stays diagonal
  for (size_t i = sp.gens.size() - 4; i < sp.gens.size(); ++i) CHECK(V.gens[i].is_diagonal());

  CHECK(sym_power_fixed_dim(V, 3) == 1);
  CHECK(sym_power_fixed_dim(V, 2) == 1);
  auto sol = invariant_triforms(V, 1, 20);
  CHECK(sol.candidates == 78);
  REQUIRE(sol.forms.size() == 1);
  CHECK(sol.held_out_words == 20);
  CHECK(sol.held_out_ok);
  for (auto& g : V.gens) CHECK(form_invariant(sol.forms[0], g));

  ModuleRep bad = ModuleRep::from({Mat::diag(F, {2, 1, 1, 1, 1, 1, 1, 1})});
  CHECK_THROWS_AS(wedge2_mod_form(bad), FormNotPreserved);
}
