#include "lie/properties.hpp"

#include <random>

#include "lie/adjgroup.hpp"
#include "lie/triform.hpp"

namespace lie {

namespace {

struct Tally {
  PropertyResult r;
  explicit Tally(std::string name) { r.name = std::move(name); }
  void check(bool ok, const std::string& what) {
    ++r.trials;
    if (!ok) {
      if (!r.failures) r.first_failure = what;
      ++r.failures;
    }
  }
};

Mat random_mat(const FieldPtr& F, int rows, int cols, std::mt19937_64& rng) {
  std::uniform_int_distribution<Elt> any(0, F->q() - 1);
  Mat m(F, rows, cols);
  for (auto& x : m.data()) x = any(rng);
  return m;
}

// rank-deficient by construction half the time
Mat random_low_rank(const FieldPtr& F, int rows, int cols, std::mt19937_64& rng) {
  int k = 1 + int(rng() % std::min(rows, cols));
  return random_mat(F, rows, k, rng) * random_mat(F, k, cols, rng);
}

std::vector<FieldPtr> test_fields() {
  return {Field::prime(2), Field::prime(61), Field::extension(5, 2), Field::extension(3, 3)};
}

}  // namespace

PropertyResult prop_membership(std::uint64_t seed, int trials) {
  Tally t("membership soundness and closure");
  std::mt19937_64 rng(seed);
  auto F = Field::prime(13);
  for (auto type : {"A3", "F4"}) {
    AdjointGroup G(build_lie_algebra(roots_from_dynkin(type), F));
    const auto& rd = G.L().rd();
    std::uniform_int_distribution<Elt> any(1, F->q() - 1);
    auto word = [&](int len) {
      Mat g = G.identity();
      for (int i = 0; i < len; ++i) g = g * G.x(int(rng() % rd.nroots()), any(rng));
      return g;
    };
    for (int k = 0; k < trials; ++k) {
      Mat a = word(5), b = word(5);
      t.check(G.membership(a), std::string(type) + " word");
      t.check(G.membership(a * b), std::string(type) + " product");
      t.check(G.membership(inverse(a)), std::string(type) + " inverse");
      Mat bad = a;
      int i = int(rng() % G.dim()), j = int(rng() % G.dim());
      bad(i, j) = F->add(bad(i, j), any(rng));
      t.check(!G.membership(bad), std::string(type) + " perturbed entry rejected");
      t.check(!G.membership(Mat::scalar(F, G.dim(), 2) * a), std::string(type) + " scalar multiple rejected");
    }
  }
  return t.r;
}

PropertyResult prop_solve_kernel(std::uint64_t seed, int trials) {
  Tally t("solve and kernel exactness");
  std::mt19937_64 rng(seed);
  for (auto& F : test_fields()) {
    for (int k = 0; k < trials; ++k) {
      int rows = 1 + int(rng() % 9), cols = 1 + int(rng() % 9);
      Mat a = rng() % 2 ? random_mat(F, rows, cols, rng) : random_low_rank(F, rows, cols, rng);
      int rk = rank(a);
      auto ker = kernel(a);
      bool ok = int(ker.size()) == cols - rk;
      for (auto& v : ker) ok = ok && vzero(mat_vec(a, v));
      ok = ok && int(row_basis(ker, F).size()) == int(ker.size());
      t.check(ok, F->name() + " kernel");

      auto lk = left_kernel(a);
      bool lok = int(lk.size()) == rows - rk;
      for (auto& v : lk) lok = lok && vzero(v * a);
      t.check(lok, F->name() + " left kernel");

      Vec x(cols);
      std::uniform_int_distribution<Elt> any(0, F->q() - 1);
      for (auto& e : x) e = any(rng);
      Vec b = mat_vec(a, x);
      auto sol = solve_affine(a, b);
      bool sok = sol.particular && mat_vec(a, *sol.particular) == b && sol.nullspace.size() == ker.size();
      t.check(sok, F->name() + " affine solve");
    }
  }
  return t.r;
}

PropertyResult prop_rational_form(std::uint64_t seed, int trials) {
  Tally t("rational canonical form conjugacy");
  std::mt19937_64 rng(seed);
  for (auto& F : test_fields()) {
    for (int k = 0; k < trials; ++k) {
      int n = 1 + int(rng() % 7);
      Mat a = random_mat(F, n, n, rng);
      // some matrices with repeated blocks
      if (k % 3 == 0) {
        Mat c = random_mat(F, n, n, rng);
        if (auto ci = try_inverse(c)) a = *ci * block_diag({random_mat(F, 1, 1, rng), Mat::identity(F, n - 1)}) * c;
      }
      auto R = rational_canonical_form(a);
      bool ok = R.conj * a * inverse(R.conj) == R.form;
      Poly prod = Poly::from_ints(F, {1});
      for (auto& b : R.blocks) prod = prod * b;
      ok = ok && prod == charpoly(a);
      t.check(ok, F->name() + " n=" + std::to_string(n));
    }
  }
  return t.r;
}

PropertyResult prop_theta(std::uint64_t seed, int trials) {
  Tally t("Theta subspace and inclusion reversal");
  std::mt19937_64 rng(seed);
  auto F = Field::prime(11);
  auto f = dickson_form(F);
  auto pt = derive_P_T(f);
  std::uniform_int_distribution<Elt> any(0, F->q() - 1);
  auto rvec = [&]() {
    Vec v(27);
    // sparse vectors make the subspaces interesting
    for (auto& x : v) x = rng() % 4 == 0 ? any(rng) : 0;
    return v;
  };
  auto inside = [&](const std::vector<Vec>& A, const std::vector<Vec>& B) {
    auto b = row_basis(B, F);
    auto ab = b;
    ab.insert(ab.end(), A.begin(), A.end());
    return row_basis(ab, F).size() == b.size();
  };
  for (int k = 0; k < trials; ++k) {
    std::vector<Vec> U;
    int a = int(rng() % 4);
    for (int i = 0; i < a; ++i) U.push_back(rvec());
    std::vector<Vec> V = U;
    for (int i = 0, b = 1 + int(rng() % 3); i < b; ++i) V.push_back(rvec());
    auto tu = theta(U, f), tv = theta(V, f);
    t.check(inside(tv, tu), "inclusion reversal");
    t.check(row_basis(tu, F).size() == tu.size(), "basis independent");
    // a random combination of the basis lies in Theta: P(v, u) = 0 on U
    Vec v(27, 0);
    for (auto& w : tu) v = vadd(F, v, vscale(F, w, any(rng)));
    bool ok = true;
    for (auto& u : U) ok = ok && pt.P(v, u) == 0;
    if (U.size() >= 2) ok = ok && pt.P(v, vadd(F, U[0], vscale(F, U[1], any(rng)))) == 0;
    t.check(ok, "P vanishes on U");
    // a vector outside Theta has some f(v, u, u') != 0
    if (tu.size() < 27) {
      Vec w = rvec();
      bool in = inside({w}, tu);
      bool zero = true;
      for (auto& x : U)
        for (auto& y : U) zero = zero && f(w, x, y) == 0;
      t.check(in == zero, "membership matches the defining condition");
    }
  }
  return t.r;
}

std::vector<PropertyResult> run_property_suites(std::uint64_t seed) {
  return {prop_membership(seed, 4), prop_solve_kernel(seed + 1, 40), prop_rational_form(seed + 2, 30),
          prop_theta(seed + 3, 30)};
}

}  // namespace lie
