#include <random>
#include <sstream>

#include "doctest.h"
#include "lie/mat.hpp"

using namespace lie;

namespace {

Mat random_mat(const FieldPtr& F, int r, int c, std::mt19937_64& rng) {
  std::uniform_int_distribution<Elt> d(0, F->q() - 1);
  Mat m(F, r, c);
  for (auto& x : m.data()) x = d(rng);
  return m;
}

// brute-force power search
std::uint64_t naive_log(const FieldPtr& F, Elt b, Elt t) {
  Elt x = 1;
  for (std::uint64_t e = 0; e < F->q(); ++e) {
    if (x == t) return e;
    x = F->mul(x, b);
  }
  return ~0ull;
}

}  // namespace

TEST_CASE("field axioms and primitive element") {
  for (auto F : {Field::prime(61), Field::extension(5, 2), Field::extension(3, 3), Field::extension(73, 2)}) {
    std::mt19937_64 rng(1);
    std::uniform_int_distribution<Elt> d(1, F->q() - 1);
    for (int i = 0; i < 200; ++i) {
      Elt a = d(rng), b = d(rng), c = d(rng);
      CHECK(F->mul(F->mul(a, b), F->inv(b)) == a);
      CHECK(F->mul(a, F->add(b, c)) == F->add(F->mul(a, b), F->mul(a, c)));
      CHECK(F->add(a, F->neg(a)) == 0);
    }
    CHECK(F->order(F->prim()) == F->q() - 1);
  }
}

TEST_CASE("extension with explicit modulus") {
  auto F = Field::extension(5, {2, 4, 1});  // X^2 + 4X + 2
  Elt w = F->gen();
  CHECK(F->order(w) == 24);
  CHECK(min_poly_over_prime(F, F->pow(w, 4)) == Poly::from_ints(F, {1, 4, 1}));
  CHECK(min_poly_over_prime(F, F->pow(w, 2)) == Poly::from_ints(F, {4, 3, 1}));
  CHECK(min_poly_over_prime(F, 0) == Poly::x(F));
}

TEST_CASE("discrete log") {
  auto F = Field::prime(61);
  CHECK(discrete_log(F, 2, 1) == 0);
  CHECK(discrete_log(F, 2, 47) == 20);
  CHECK(naive_log(F, 2, 47) == 20);
  Elt a = F->pow(F->prim(), 12);  // order 5
  CHECK(discrete_log(F, a, F->pow(a, 3)) == 3);
  CHECK_THROWS_AS(discrete_log(F, a, F->prim()), NotInSubgroup);
  std::uint32_t bp = (1u << 22) + 1;
  while (!is_prime_u64(bp)) ++bp;
  auto big = Field::prime(bp);  // beyond the log tables: baby-step giant-step
  CHECK(!big->has_log());
  Elt g = big->prim();
  CHECK(big->pow(g, discrete_log(big, g, 12345)) == 12345);
}

TEST_CASE("roots in field") {
  auto F11 = Field::prime(11), F7 = Field::prime(7), F5 = Field::prime(5);
  CHECK(roots_in_field(Poly::from_ints(F11, {-1, -1, 1})) == std::vector<Elt>{4, 8});
  CHECK(roots_in_field(Poly::from_ints(F7, {-1, -1, 1})).empty());
  CHECK(roots_in_field(Poly::from_ints(F5, {-3, 1})) == std::vector<Elt>{3});
  auto G = Field::extension(3, 3);
  Poly f = Poly::linear(G, 5) * Poly::linear(G, 7) * Poly::linear(G, 7) * Poly::from_ints(G, {1, 0, 1});
  auto r = roots_in_field(f);
  for (auto x : r) CHECK(f.eval(x) == 0);
  CHECK(r.size() <= size_t(f.deg()));
}

TEST_CASE("factorization reproduces the polynomial") {
  auto F = Field::prime(13);
  std::mt19937_64 rng(3);
  for (int t = 0; t < 20; ++t) {
    std::vector<long long> c(9);
    for (auto& x : c) x = rng() % 13;
    c.back() = 1;
    Poly f = Poly::from_ints(F, c);
    f = f * f * Poly::linear(F, 2);
    Poly prod = Poly::constant(F, 1);
    for (auto& [g, e] : factor(f))
      for (int i = 0; i < e; ++i) prod = prod * g;
    CHECK(prod == f.monic());
  }
}

TEST_CASE("interpolation") {
  auto F = Field::prime(101);
  Poly f = Poly::from_ints(F, {3, 0, 7, 1, 55});
  std::vector<Elt> xs, ys;
  for (Elt x = 10; x < 15; ++x) xs.push_back(x), ys.push_back(f.eval(x));
  CHECK(interpolate(F, xs, ys) == f);
}

TEST_CASE("kernel and affine solve") {
  auto F = Field::prime(19);
  CHECK(kernel(Mat(F, 3, 3)).size() == 3);
  CHECK(kernel(Mat::identity(F, 4)).empty());
  Vec v{1, 2, 3};
  auto s = solve_affine(Mat::identity(F, 3), v);
  REQUIRE(s.particular);
  CHECK(*s.particular == v);
  CHECK(s.nullspace.empty());
  auto z = solve_affine(Mat(F, 2, 2), Vec{1, 0});
  CHECK(!z.particular);
  CHECK(z.nullspace.size() == 2);
}

TEST_CASE("kernel and solve exactness on random systems") {
  std::mt19937_64 rng(11);
  for (auto F : {Field::prime(36541), Field::extension(73, 2)}) {
    for (int t = 0; t < 10; ++t) {
      int r = 5 + t, c = 8 + t;
      Mat a = random_mat(F, r, c, rng);
      // force a dependency
      a.set_row(0, vadd(F, a.row_vec(1), a.row_vec(2)));
      for (auto& k : kernel(a)) CHECK(vzero(mat_vec(a, k)));
      Vec x(c);
      for (auto& e : x) e = rng() % F->q();
      Vec b = mat_vec(a, x);
      auto s = solve_affine(a, b);
      REQUIRE(s.particular);
      CHECK(mat_vec(a, *s.particular) == b);
      CHECK(int(s.nullspace.size()) == c - rank(a));
      for (auto& k : left_kernel(a)) CHECK(vzero(k * a));
    }
  }
}

TEST_CASE("products, inverse, determinant") {
  std::mt19937_64 rng(5);
  for (auto F : {Field::prime(61), Field::extension(73, 2), Field::extension(5, 2)}) {
    Mat a = random_mat(F, 7, 7, rng), b = random_mat(F, 7, 7, rng);
    // naive product oracle
    Mat c(F, 7, 7);
    for (int i = 0; i < 7; ++i)
      for (int j = 0; j < 7; ++j) {
        Elt s = 0;
        for (int k = 0; k < 7; ++k) s = F->add(s, F->mul(a(i, k), b(k, j)));
        c(i, j) = s;
      }
    CHECK(a * b == c);
    CHECK(det(a * b) == F->mul(det(a), det(b)));
    if (det(a)) CHECK((a * inverse(a)).is_identity());
    Vec v(7);
    for (auto& e : v) e = rng() % F->q();
    CHECK((v * a) * b == v * (a * b));
  }
}

TEST_CASE("charpoly and minpoly") {
  std::mt19937_64 rng(9);
  auto F = Field::prime(29);
  Mat a = random_mat(F, 9, 9, rng);
  Poly cp = charpoly(a);
  CHECK(cp.deg() == 9);
  CHECK(eval_poly(cp, a).is_zero());
  CHECK(cp[0] == (det(a) ? F->mul(det(a), F->pow(F->neg(1), 9)) : 0));
  Mat d = Mat::diag(F, {2, 2, 3});
  CHECK(minpoly(d) == Poly::linear(F, 2) * Poly::linear(F, 3));
}

TEST_CASE("rational canonical form") {
  auto F = Field::prime(5);
  Poly mu = Poly::from_ints(F, {4, 3, 1});
  Mat c = Mat::companion(mu);
  auto r = rational_canonical_form(c);
  CHECK(r.blocks.size() == 1);
  CHECK(r.blocks[0] == mu);
  CHECK(r.conj * c * inverse(r.conj) == r.form);
  auto r2 = rational_canonical_form(Mat::identity(F, 2));
  CHECK(r2.blocks.size() == 2);
  CHECK(r2.blocks[0] == Poly::linear(F, 1));
  std::mt19937_64 rng(2);
  for (auto G : {Field::prime(5), Field::prime(37), Field::extension(3, 2)}) {
    for (int t = 0; t < 15; ++t) {
      // repeated blocks stress the primary splitting
      Mat base = random_mat(G, 3, 3, rng);
      Mat a = block_diag({base, base, Mat::scalar(G, 2, 1), Mat::companion(Poly::from_ints(G, {1, 0, 1}))});
      Mat p = random_mat(G, a.rows(), a.rows(), rng);
      if (!det(p)) continue;
      a = inverse(p) * a * p;
      auto rf = rational_canonical_form(a);
      CHECK(rf.conj * a * inverse(rf.conj) == rf.form);
      Poly prod = Poly::constant(G, 1);
      for (auto& b : rf.blocks) prod = prod * b;
      CHECK(prod == charpoly(a));
    }
  }
}

TEST_CASE("LDU") {
  auto F = Field::prime(19);
  auto r = ldu(Mat::identity(F, 3));
  CHECK(r.L.is_identity());
  CHECK(r.D.is_identity());
  CHECK(r.U.is_identity());
  auto m = Mat::from_ints(F, {{1, 2}, {3, 4}});
  auto x = ldu(m);
  CHECK(x.L == Mat::from_ints(F, {{1, 0}, {3, 1}}));
  CHECK(x.D == Mat::from_ints(F, {{1, 0}, {0, 17}}));
  CHECK(x.U == Mat::from_ints(F, {{1, 2}, {0, 1}}));
  CHECK_THROWS_AS(ldu(Mat::from_ints(F, {{0, 1}, {1, 0}})), NoLDU);
  std::mt19937_64 rng(4);
  for (int t = 0; t < 50; ++t) {
    Mat a = random_mat(F, 5, 5, rng);
    try {
      auto f = ldu(a);
      CHECK(f.L * f.D * f.U == a);
      CHECK(f.D.is_diagonal());
    } catch (const NoLDU&) {
      bool zero_minor = false;
      for (int k = 1; k <= 5; ++k) {
        Mat s(F, k, k);
        for (int i = 0; i < k; ++i)
          for (int j = 0; j < k; ++j) s(i, j) = a(i, j);
        if (!det(s)) zero_minor = true;
      }
      CHECK(zero_minor);
    }
  }
}

TEST_CASE("pencil and bivariate determinants") {
  auto F = Field::prime(101);
  std::mt19937_64 rng(8);
  Mat a = random_mat(F, 6, 6, rng), n = random_mat(F, 6, 6, rng);
  a.set_row(0, Vec(6, 0));  // singular constant term exercises the shift path
  Poly p = det_pencil(a, n);
  for (Elt y = 0; y < 20; ++y) CHECK(p.eval(y) == det(axpy(a, y, n)));
  // diag(X, Y) -> XY - 1
  Mat z0(F, 2, 2), cx(F, 2, 2), dy(F, 2, 2);
  cx(0, 0) = 1;
  dy(1, 1) = 1;
  auto bp = bivariate_det_interpolate(z0, cx, dy);
  CHECK(bipoly_eval(bp, 3, 7) == 20);
  CHECK(bp.size() == 2);
  CHECK(bp[0] == Poly::constant(F, 100));
  CHECK(bp[1] == Poly::x(F));
  CHECK(bivariate_det_interpolate(Mat::identity(F, 3), Mat(F, 3, 3), Mat(F, 3, 3)).empty());
  Mat c = random_mat(F, 6, 6, rng), d = random_mat(F, 6, 6, rng);
  auto big = bivariate_det_interpolate(a, c, d);
  for (int t = 0; t < 20; ++t) {
    Elt x = rng() % 101, y = rng() % 101;
    CHECK(bipoly_eval(big, x, y) == F->sub(det(axpy(axpy(a, x, c), y, d)), 1));
  }
  CHECK_THROWS_AS(bivariate_det_interpolate(Mat(Field::prime(5), 6, 6), Mat(Field::prime(5), 6, 6),
                                            Mat(Field::prime(5), 6, 6)),
                  FieldTooSmall);
}

TEST_CASE("matrix file roundtrip") {
  auto F = Field::extension(5, {2, 4, 1});
  std::mt19937_64 rng(1);
  Mat a = random_mat(F, 3, 4, rng);
  std::stringstream ss;
  write_matrix(ss, a);
  Mat b = read_matrix(ss);
  CHECK(b.field()->modulus() == F->modulus());
  std::stringstream ss2;
  write_matrix(ss2, b);
  CHECK(ss2.str() == [&] {
    std::stringstream s;
    write_matrix(s, a);
    return s.str();
  }());
}
