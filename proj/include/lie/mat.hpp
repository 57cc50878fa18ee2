#pragma once
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "lie/field.hpp"
#include "lie/poly.hpp"

namespace lie {

using Vec = std::vector<Elt>;

// Dense row-major matrix over a finite field. Vectors are rows; v*A is the action.
class Mat {
 public:
  Mat() = default;
  Mat(FieldPtr F, int r, int c) : F_(std::move(F)), r_(r), c_(c), a_(size_t(r) * c, 0) {}
  static Mat identity(const FieldPtr& F, int n);
  static Mat scalar(const FieldPtr& F, int n, Elt s);
  static Mat diag(const FieldPtr& F, const Vec& d);
  static Mat from_rows(const FieldPtr& F, const std::vector<Vec>& rows);
  static Mat from_ints(const FieldPtr& F, const std::vector<std::vector<long long>>& rows);
  static Mat companion(const Poly& f);

  const FieldPtr& field() const { return F_; }
  int rows() const { return r_; }
  int cols() const { return c_; }
  bool square() const { return r_ == c_; }
  Elt& operator()(int i, int j) { return a_[size_t(i) * c_ + j]; }
  Elt operator()(int i, int j) const { return a_[size_t(i) * c_ + j]; }
  Elt* row(int i) { return a_.data() + size_t(i) * c_; }
  const Elt* row(int i) const { return a_.data() + size_t(i) * c_; }
  Vec row_vec(int i) const { return Vec(row(i), row(i) + c_); }
  void set_row(int i, const Vec& v);
  const std::vector<Elt>& data() const { return a_; }
  std::vector<Elt>& data() { return a_; }

  bool operator==(const Mat& o) const { return r_ == o.r_ && c_ == o.c_ && a_ == o.a_; }
  bool operator!=(const Mat& o) const { return !(*this == o); }
  bool is_identity() const;
  bool is_zero() const;
  bool is_scalar() const;
  bool is_diagonal() const;
  Mat transpose() const;
  Elt trace() const;
  std::string to_string() const;

 private:
  FieldPtr F_;
  int r_ = 0, c_ = 0;
  std::vector<Elt> a_;
};

Mat operator*(const Mat& a, const Mat& b);
Mat operator+(const Mat& a, const Mat& b);
Mat operator-(const Mat& a, const Mat& b);
Mat scale(const Mat& a, Elt s);
Mat axpy(const Mat& a, Elt s, const Mat& b);  // a + s*b
Vec operator*(const Vec& v, const Mat& a);
Vec mat_vec(const Mat& a, const Vec& v);      // A v (column action)
Vec vadd(const FieldPtr& F, const Vec& a, const Vec& b);
Vec vsub(const FieldPtr& F, const Vec& a, const Vec& b);
Vec vscale(const FieldPtr& F, const Vec& a, Elt s);
Elt dot(const FieldPtr& F, const Vec& a, const Vec& b);
bool vzero(const Vec& a);

Mat inverse(const Mat& a);  // throws std::domain_error if singular
std::optional<Mat> try_inverse(const Mat& a);
Elt det(Mat a);
int rank(Mat a);
Mat power(const Mat& a, long long e);
Mat eval_poly(const Poly& f, const Mat& a);
Mat hstack(const Mat& a, const Mat& b);
Mat vstack(const Mat& a, const Mat& b);
Mat block_diag(const std::vector<Mat>& blocks);

// reduced row echelon form in place; returns pivot columns
std::vector<int> rref(Mat& a);
// right null space basis {x : A x = 0}
std::vector<Vec> kernel(const Mat& a);
// left null space basis {x : x A = 0}
std::vector<Vec> left_kernel(const Mat& a);
// row space basis in reduced echelon form
std::vector<Vec> row_basis(const std::vector<Vec>& rows, const FieldPtr& F);

struct AffineSolution {
  std::optional<Vec> particular;
  std::vector<Vec> nullspace;
};
// all x with A x = b
AffineSolution solve_affine(const Mat& a, const Vec& b);
// x with x A = b
std::optional<Vec> solve_left(const Mat& a, const Vec& b);

Poly charpoly(const Mat& a);
Poly minpoly(const Mat& a);
// fixed space {v : v g = v}
std::vector<Vec> eigenspace(const Mat& g, Elt lambda);

struct RationalForm {
  Mat form;                  // block diagonal companion matrices
  Mat conj;                  // P with P A P^-1 = form
  std::vector<Poly> blocks;  // block minimal polynomials, in order
  std::vector<int> offsets;  // first row of each block
};
// primary rational canonical form
RationalForm rational_canonical_form(const Mat& a);

struct LDU {
  Mat L, D, U;
};
LDU ldu(const Mat& m);

// det(A + Y N) as a polynomial in Y
Poly det_pencil(const Mat& a, const Mat& n);
// coefficient table c[i][j] of X^i Y^j in det(A + X C + Y D) - 1
using BiPoly = std::vector<Poly>;  // index i: coefficient of X^i, a polynomial in Y
BiPoly bivariate_det_interpolate(const Mat& a, const Mat& c, const Mat& d);
Elt bipoly_eval(const BiPoly& p, Elt x, Elt y);
// P(x, Y) as a univariate polynomial
Poly bipoly_at_x(const BiPoly& p, Elt x);

// order of an invertible matrix known to divide bound
std::uint64_t order_dividing(const Mat& g, std::uint64_t bound);

// matrix file: header "p r rows cols modulus...", then rows
void write_matrix(std::ostream& os, const Mat& m);
Mat read_matrix(std::istream& is, FieldPtr F = nullptr);
FieldPtr field_from_header(std::uint32_t p, unsigned r, const std::vector<std::uint32_t>& modulus);

}  // namespace lie
