#include "lie/mat.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <sstream>

namespace lie {

namespace {

using U64 = std::uint64_t;

// dst += f*src over [from, n)
inline void row_axpy(const Field& F, Elt* dst, const Elt* src, Elt f, int from, int n) {
  if (!f) return;
  if (F.is_prime()) {
    for (int k = from; k < n; ++k)
      if (src[k]) dst[k] = F.reduce(U64(dst[k]) + U64(f) * src[k]);
  } else {
    for (int k = from; k < n; ++k)
      if (src[k]) dst[k] = F.add(dst[k], F.mul(f, src[k]));
  }
}

inline void row_scale(const Field& F, Elt* r, Elt f, int from, int n) {
  for (int k = from; k < n; ++k)
    if (r[k]) r[k] = F.mul(r[k], f);
}

// number of products a*b (a,b < p) that fit in a u64 accumulator alongside a reduced value
U64 lazy_budget(U64 p) {
  U64 sq = (p - 1) * (p - 1);
  if (sq == 0) return ~U64(0);
  U64 k = (~U64(0) - p) / sq;
  return std::max<U64>(k, 1);
}

// C += A*B for planes of integers < p, result accumulated unreduced in acc (reduced lazily)
void plane_mul_acc(const std::vector<Elt>& A, const std::vector<Elt>& B, std::vector<U64>& acc, int n, int m,
                   int l, U64 p, U64 budget, std::vector<U64>& used) {
  // acc is n x l, used[i] counts accumulated products per row
  for (int i = 0; i < n; ++i) {
    U64* ci = acc.data() + size_t(i) * l;
    for (int k = 0; k < m; ++k) {
      U64 a = A[size_t(i) * m + k];
      if (!a) continue;
      if (used[i] >= budget) {
        for (int j = 0; j < l; ++j) ci[j] %= p;
        used[i] = 0;
      }
      const Elt* bk = B.data() + size_t(k) * l;
      for (int j = 0; j < l; ++j) ci[j] += a * bk[j];
      ++used[i];
    }
  }
}

}  // namespace

Mat Mat::identity(const FieldPtr& F, int n) { return scalar(F, n, 1); }

Mat Mat::scalar(const FieldPtr& F, int n, Elt s) {
  Mat m(F, n, n);
  for (int i = 0; i < n; ++i) m(i, i) = s;
  return m;
}

Mat Mat::diag(const FieldPtr& F, const Vec& d) {
  Mat m(F, static_cast<int>(d.size()), static_cast<int>(d.size()));
  for (size_t i = 0; i < d.size(); ++i) m(int(i), int(i)) = d[i];
  return m;
}

Mat Mat::from_rows(const FieldPtr& F, const std::vector<Vec>& rows) {
  int c = rows.empty() ? 0 : static_cast<int>(rows[0].size());
  Mat m(F, static_cast<int>(rows.size()), c);
  for (size_t i = 0; i < rows.size(); ++i) m.set_row(int(i), rows[i]);
  return m;
}

Mat Mat::from_ints(const FieldPtr& F, const std::vector<std::vector<long long>>& rows) {
  int c = rows.empty() ? 0 : static_cast<int>(rows[0].size());
  Mat m(F, static_cast<int>(rows.size()), c);
  for (size_t i = 0; i < rows.size(); ++i)
    for (int j = 0; j < c; ++j) m(int(i), j) = F->from_int(rows[i][j]);
  return m;
}

Mat Mat::companion(const Poly& f) {
  const auto& F = f.field();
  Poly g = f.monic();
  int n = g.deg();
  Mat m(F, n, n);
  for (int i = 0; i + 1 < n; ++i) m(i, i + 1) = 1;
  for (int j = 0; j < n; ++j) m(n - 1, j) = F->neg(g[j]);
  return m;
}

void Mat::set_row(int i, const Vec& v) {
  if (static_cast<int>(v.size()) != c_) throw DimensionMismatch("row length");
  std::copy(v.begin(), v.end(), row(i));
}

bool Mat::is_identity() const {
  if (r_ != c_) return false;
  for (int i = 0; i < r_; ++i)
    for (int j = 0; j < c_; ++j)
      if ((*this)(i, j) != (i == j ? 1u : 0u)) return false;
  return true;
}

bool Mat::is_zero() const {
  return std::all_of(a_.begin(), a_.end(), [](Elt x) { return x == 0; });
}

bool Mat::is_scalar() const {
  if (r_ != c_ || r_ == 0) return false;
  Elt s = (*this)(0, 0);
  for (int i = 0; i < r_; ++i)
    for (int j = 0; j < c_; ++j)
      if ((*this)(i, j) != (i == j ? s : 0u)) return false;
  return true;
}

bool Mat::is_diagonal() const {
  for (int i = 0; i < r_; ++i)
    for (int j = 0; j < c_; ++j)
      if (i != j && (*this)(i, j)) return false;
  return true;
}

Mat Mat::transpose() const {
  Mat t(F_, c_, r_);
  for (int i = 0; i < r_; ++i)
    for (int j = 0; j < c_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

Elt Mat::trace() const {
  Elt s = 0;
  for (int i = 0; i < std::min(r_, c_); ++i) s = F_->add(s, (*this)(i, i));
  return s;
}

std::string Mat::to_string() const {
  std::ostringstream os;
  for (int i = 0; i < r_; ++i) {
    os << "[";
    for (int j = 0; j < c_; ++j) os << (j ? " " : "") << F_->to_string((*this)(i, j));
    os << "]\n";
  }
  return os.str();
}

Mat operator*(const Mat& a, const Mat& b) {
  if (a.cols() != b.rows()) throw DimensionMismatch("matrix product");
  const auto& F = a.field();
  int n = a.rows(), m = a.cols(), l = b.cols();
  Mat c(F, n, l);
  U64 p = F->p();
  U64 budget = lazy_budget(p);
  std::vector<U64> used(n, 0);
  if (F->is_prime()) {
    std::vector<U64> acc(size_t(n) * l, 0);
    plane_mul_acc(a.data(), b.data(), acc, n, m, l, p, budget, used);
    for (size_t i = 0; i < acc.size(); ++i) c.data()[i] = static_cast<Elt>(acc[i] % p);
    return c;
  }
  // split into coefficient planes and multiply as polynomials
  unsigned r = F->r();
  auto planes = [&](const Mat& x) {
    std::vector<std::vector<Elt>> pl(r, std::vector<Elt>(x.data().size()));
    for (size_t i = 0; i < x.data().size(); ++i) {
      auto cf = F->coeffs(x.data()[i]);
      for (unsigned t = 0; t < r; ++t) pl[t][i] = cf[t];
    }
    return pl;
  };
  auto pa = planes(a), pb = planes(b);
  std::vector<std::vector<U64>> acc(2 * r - 1, std::vector<U64>(size_t(n) * l, 0));
  for (unsigned u = 0; u < r; ++u)
    for (unsigned v = 0; v < r; ++v) {
      std::fill(used.begin(), used.end(), 0);
      plane_mul_acc(pa[u], pb[v], acc[u + v], n, m, l, p, budget, used);
      for (auto& x : acc[u + v]) x %= p;
    }
  const auto& mod = F->modulus();
  std::vector<U64> cf(2 * r - 1);
  for (size_t i = 0; i < size_t(n) * l; ++i) {
    for (unsigned t = 0; t < 2 * r - 1; ++t) cf[t] = acc[t][i];
    for (unsigned t = 2 * r - 2; t >= r; --t) {
      U64 h = cf[t];
      if (!h) continue;
      for (unsigned s = 0; s < r; ++s) cf[t - r + s] = (cf[t - r + s] + (p - h) * mod[s]) % p;
    }
    std::vector<std::uint32_t> co(r);
    for (unsigned t = 0; t < r; ++t) co[t] = static_cast<std::uint32_t>(cf[t]);
    c.data()[i] = F->from_coeffs(co);
  }
  return c;
}

Mat operator+(const Mat& a, const Mat& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw DimensionMismatch("matrix sum");
  Mat c(a.field(), a.rows(), a.cols());
  const auto& F = *a.field();
  for (size_t i = 0; i < c.data().size(); ++i) c.data()[i] = F.add(a.data()[i], b.data()[i]);
  return c;
}

Mat operator-(const Mat& a, const Mat& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw DimensionMismatch("matrix difference");
  Mat c(a.field(), a.rows(), a.cols());
  const auto& F = *a.field();
  for (size_t i = 0; i < c.data().size(); ++i) c.data()[i] = F.sub(a.data()[i], b.data()[i]);
  return c;
}

Mat scale(const Mat& a, Elt s) {
  Mat c = a;
  const auto& F = *a.field();
  for (auto& x : c.data()) x = F.mul(x, s);
  return c;
}

Mat axpy(const Mat& a, Elt s, const Mat& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw DimensionMismatch("axpy");
  Mat c = a;
  row_axpy(*a.field(), c.data().data(), b.data().data(), s, 0, static_cast<int>(c.data().size()));
  return c;
}

Vec operator*(const Vec& v, const Mat& a) {
  if (static_cast<int>(v.size()) != a.rows()) throw DimensionMismatch("vector-matrix product");
  const auto& F = *a.field();
  int n = a.rows(), m = a.cols();
  Vec out(m, 0);
  if (F.is_prime()) {
    U64 p = F.p(), budget = lazy_budget(p), used = 0;
    std::vector<U64> acc(m, 0);
    for (int i = 0; i < n; ++i) {
      if (!v[i]) continue;
      if (used >= budget) {
        for (auto& x : acc) x %= p;
        used = 0;
      }
      const Elt* r = a.row(i);
      U64 c = v[i];
      for (int j = 0; j < m; ++j) acc[j] += c * r[j];
      ++used;
    }
    for (int j = 0; j < m; ++j) out[j] = static_cast<Elt>(acc[j] % p);
    return out;
  }
  for (int i = 0; i < n; ++i) row_axpy(F, out.data(), a.row(i), v[i], 0, m);
  return out;
}

Vec mat_vec(const Mat& a, const Vec& v) {
  if (static_cast<int>(v.size()) != a.cols()) throw DimensionMismatch("matrix-vector product");
  const auto& F = *a.field();
  Vec out(a.rows(), 0);
  for (int i = 0; i < a.rows(); ++i) {
    Elt s = 0;
    const Elt* r = a.row(i);
    for (int j = 0; j < a.cols(); ++j)
      if (r[j] && v[j]) s = F.add(s, F.mul(r[j], v[j]));
    out[i] = s;
  }
  return out;
}

Vec vadd(const FieldPtr& F, const Vec& a, const Vec& b) {
  Vec c(a.size());
  for (size_t i = 0; i < a.size(); ++i) c[i] = F->add(a[i], b[i]);
  return c;
}

Vec vsub(const FieldPtr& F, const Vec& a, const Vec& b) {
  Vec c(a.size());
  for (size_t i = 0; i < a.size(); ++i) c[i] = F->sub(a[i], b[i]);
  return c;
}

Vec vscale(const FieldPtr& F, const Vec& a, Elt s) {
  Vec c(a.size());
  for (size_t i = 0; i < a.size(); ++i) c[i] = F->mul(a[i], s);
  return c;
}

Elt dot(const FieldPtr& F, const Vec& a, const Vec& b) {
  Elt s = 0;
  for (size_t i = 0; i < a.size(); ++i)
    if (a[i] && b[i]) s = F->add(s, F->mul(a[i], b[i]));
  return s;
}

bool vzero(const Vec& a) {
  return std::all_of(a.begin(), a.end(), [](Elt x) { return x == 0; });
}

std::vector<int> rref(Mat& a) {
  const auto& F = *a.field();
  int n = a.rows(), m = a.cols();
  std::vector<int> piv;
  int r = 0;
  for (int c = 0; c < m && r < n; ++c) {
    int k = r;
    while (k < n && a(k, c) == 0) ++k;
    if (k == n) continue;
    if (k != r) std::swap_ranges(a.row(k), a.row(k) + m, a.row(r));
    Elt inv = F.inv(a(r, c));
    row_scale(F, a.row(r), inv, c, m);
    for (int i = 0; i < n; ++i) {
      if (i == r || a(i, c) == 0) continue;
      row_axpy(F, a.row(i), a.row(r), F.neg(a(i, c)), c, m);
    }
    piv.push_back(c);
    ++r;
  }
  return piv;
}

std::vector<Vec> kernel(const Mat& a) {
  Mat e = a;
  auto piv = rref(e);
  int m = a.cols();
  std::vector<char> is_piv(m, 0);
  for (int c : piv) is_piv[c] = 1;
  const auto& F = *a.field();
  std::vector<Vec> out;
  for (int f = 0; f < m; ++f) {
    if (is_piv[f]) continue;
    Vec v(m, 0);
    v[f] = 1;
    for (size_t i = 0; i < piv.size(); ++i) v[piv[i]] = F.neg(e(int(i), f));
    out.push_back(std::move(v));
  }
  return out;
}

std::vector<Vec> left_kernel(const Mat& a) { return kernel(a.transpose()); }

std::vector<Vec> row_basis(const std::vector<Vec>& rows, const FieldPtr& F) {
  if (rows.empty()) return {};
  Mat m = Mat::from_rows(F, rows);
  auto piv = rref(m);
  std::vector<Vec> out;
  for (size_t i = 0; i < piv.size(); ++i) out.push_back(m.row_vec(int(i)));
  return out;
}

AffineSolution solve_affine(const Mat& a, const Vec& b) {
  if (static_cast<int>(b.size()) != a.rows()) throw DimensionMismatch("solve_affine rhs");
  int n = a.rows(), m = a.cols();
  Mat aug(a.field(), n, m + 1);
  for (int i = 0; i < n; ++i) {
    std::copy(a.row(i), a.row(i) + m, aug.row(i));
    aug(i, m) = b[i];
  }
  auto piv = rref(aug);
  AffineSolution s;
  s.nullspace = kernel(a);
  if (!piv.empty() && piv.back() == m) return s;
  Vec x(m, 0);
  for (size_t i = 0; i < piv.size(); ++i) x[piv[i]] = aug(int(i), m);
  s.particular = std::move(x);
  return s;
}

std::optional<Vec> solve_left(const Mat& a, const Vec& b) {
  auto s = solve_affine(a.transpose(), b);
  return s.particular;
}

std::optional<Mat> try_inverse(const Mat& a) {
  if (!a.square()) throw DimensionMismatch("inverse of non-square matrix");
  int n = a.rows();
  const auto& F = *a.field();
  Mat aug(a.field(), n, 2 * n);
  for (int i = 0; i < n; ++i) {
    std::copy(a.row(i), a.row(i) + n, aug.row(i));
    aug(i, n + i) = 1;
  }
  for (int c = 0; c < n; ++c) {
    int k = c;
    while (k < n && aug(k, c) == 0) ++k;
    if (k == n) return std::nullopt;
    if (k != c) std::swap_ranges(aug.row(k), aug.row(k) + 2 * n, aug.row(c));
    row_scale(F, aug.row(c), F.inv(aug(c, c)), c, 2 * n);
    for (int i = 0; i < n; ++i) {
      if (i == c || aug(i, c) == 0) continue;
      row_axpy(F, aug.row(i), aug.row(c), F.neg(aug(i, c)), c, 2 * n);
    }
  }
  Mat inv(a.field(), n, n);
  for (int i = 0; i < n; ++i) std::copy(aug.row(i) + n, aug.row(i) + 2 * n, inv.row(i));
  return inv;
}

Mat inverse(const Mat& a) {
  auto r = try_inverse(a);
  if (!r) throw std::domain_error("singular matrix");
  return *r;
}

Elt det(Mat a) {
  if (!a.square()) throw DimensionMismatch("determinant of non-square matrix");
  const auto& F = *a.field();
  int n = a.rows();
  Elt d = 1;
  for (int c = 0; c < n; ++c) {
    int k = c;
    while (k < n && a(k, c) == 0) ++k;
    if (k == n) return 0;
    if (k != c) {
      std::swap_ranges(a.row(k), a.row(k) + n, a.row(c));
      d = F.neg(d);
    }
    Elt pv = a(c, c);
    d = F.mul(d, pv);
    Elt inv = F.inv(pv);
    for (int i = c + 1; i < n; ++i) {
      if (a(i, c) == 0) continue;
      row_axpy(F, a.row(i), a.row(c), F.neg(F.mul(a(i, c), inv)), c, n);
    }
  }
  return d;
}

int rank(Mat a) { return static_cast<int>(rref(a).size()); }

Mat power(const Mat& a, long long e) {
  if (e < 0) return power(inverse(a), -e);
  Mat r = Mat::identity(a.field(), a.rows());
  Mat b = a;
  while (e) {
    if (e & 1) r = r * b;
    e >>= 1;
    if (e) b = b * b;
  }
  return r;
}

Mat eval_poly(const Poly& f, const Mat& a) {
  Mat r(a.field(), a.rows(), a.cols());
  for (int i = f.deg(); i >= 0; --i) {
    r = r * a;
    for (int k = 0; k < a.rows(); ++k) r(k, k) = a.field()->add(r(k, k), f[i]);
  }
  return r;
}

Mat hstack(const Mat& a, const Mat& b) {
  if (a.rows() != b.rows()) throw DimensionMismatch("hstack");
  Mat c(a.field(), a.rows(), a.cols() + b.cols());
  for (int i = 0; i < a.rows(); ++i) {
    std::copy(a.row(i), a.row(i) + a.cols(), c.row(i));
    std::copy(b.row(i), b.row(i) + b.cols(), c.row(i) + a.cols());
  }
  return c;
}

Mat vstack(const Mat& a, const Mat& b) {
  if (a.cols() != b.cols()) throw DimensionMismatch("vstack");
  Mat c(a.field(), a.rows() + b.rows(), a.cols());
  std::copy(a.data().begin(), a.data().end(), c.data().begin());
  std::copy(b.data().begin(), b.data().end(), c.data().begin() + a.data().size());
  return c;
}

Mat block_diag(const std::vector<Mat>& blocks) {
  int n = 0;
  for (auto& b : blocks) n += b.rows();
  Mat m(blocks.at(0).field(), n, n);
  int off = 0;
  for (auto& b : blocks) {
    for (int i = 0; i < b.rows(); ++i)
      for (int j = 0; j < b.cols(); ++j) m(off + i, off + j) = b(i, j);
    off += b.rows();
  }
  return m;
}

Poly charpoly(const Mat& a) {
  if (!a.square()) throw DimensionMismatch("charpoly");
  const auto& Fp = a.field();
  const auto& F = *Fp;
  int n = a.rows();
  Mat h = a;
  // Hessenberg reduction by similarity
  for (int m = 1; m + 1 < n; ++m) {
    int i = m;
    while (i < n && h(i, m - 1) == 0) ++i;
    if (i == n) continue;
    if (i != m) {
      std::swap_ranges(h.row(i), h.row(i) + n, h.row(m));
      for (int r = 0; r < n; ++r) std::swap(h(r, i), h(r, m));
    }
    Elt inv = F.inv(h(m, m - 1));
    for (int j = m + 1; j < n; ++j) {
      Elt u = F.mul(h(j, m - 1), inv);
      if (!u) continue;
      row_axpy(F, h.row(j), h.row(m), F.neg(u), 0, n);
      for (int r = 0; r < n; ++r)
        if (h(r, j)) h(r, m) = F.add(h(r, m), F.mul(u, h(r, j)));
    }
  }
  std::vector<Poly> p(n + 1, Poly(Fp));
  p[0] = Poly::constant(Fp, 1);
  for (int m = 1; m <= n; ++m) {
    p[m] = Poly::linear(Fp, h(m - 1, m - 1)) * p[m - 1];
    Elt t = 1;
    for (int i = 1; i < m; ++i) {
      t = F.mul(t, h(m - i, m - i - 1));
      Elt coef = F.mul(h(m - i - 1, m - 1), t);
      if (coef) p[m] = p[m] - scale(p[m - i - 1], coef);
    }
  }
  return p[n];
}

Poly minpoly(const Mat& a) {
  const auto& F = a.field();
  Poly cp = charpoly(a);
  Poly m = Poly::constant(F, 1);
  for (auto& [f, e] : factor(cp)) {
    Mat fa = eval_poly(f, a);
    Mat pw = fa;
    int k = 1;
    int prev = rank(pw);
    while (k < e) {
      Mat nx = pw * fa;
      int rk = rank(nx);
      if (rk == prev) break;
      prev = rk;
      pw = std::move(nx);
      ++k;
    }
    for (int i = 0; i < k; ++i) m = m * f;
  }
  return m;
}

std::vector<Vec> eigenspace(const Mat& g, Elt lambda) {
  Mat d = g;
  const auto& F = *g.field();
  for (int i = 0; i < g.rows(); ++i) d(i, i) = F.sub(d(i, i), lambda);
  return left_kernel(d);
}

RationalForm rational_canonical_form(const Mat& a) {
  if (!a.square()) throw DimensionMismatch("rational form");
  const auto& Fp = a.field();
  int n = a.rows();
  RationalForm out;
  std::vector<Vec> basis;
  std::vector<Mat> comps;
  for (auto& [f, e] : factor(charpoly(a))) {
    int d = f.deg();
    Mat N = eval_poly(f, a);
    // kernels of N^j, j = 0..e
    std::vector<std::vector<Vec>> ker(e + 1);
    Mat pw = Mat::identity(Fp, n);
    for (int j = 1; j <= e; ++j) {
      pw = pw * N;
      ker[j] = left_kernel(pw);
    }
    int top = e;
    while (top > 1 && ker[top - 1].size() == ker[top].size()) --top;
    // generators chosen top-down; each level keeps a span of what is already accounted for
    std::vector<std::pair<Vec, int>> gens;
    for (int k = top; k >= 1; --k) {
      std::vector<Vec> span = ker[k - 1];
      for (auto& [g, lvl] : gens) {
        Vec v = g;
        for (int s = 0; s < lvl - k; ++s) v = v * N;
        for (int i = 0; i < d; ++i) {
          span.push_back(v);
          v = v * a;
        }
      }
      auto cur = row_basis(span, Fp);
      for (const auto& cand : ker[k]) {
        if (cur.size() >= ker[k].size()) break;
        auto test = cur;
        test.push_back(cand);
        if (row_basis(test, Fp).size() == cur.size()) continue;
        gens.emplace_back(cand, k);
        Vec v = cand;
        for (int i = 0; i < d; ++i) {
          cur.push_back(v);
          v = v * a;
        }
        cur = row_basis(cur, Fp);
      }
    }
    for (auto& [g, lvl] : gens) {
      Poly blk = Poly::constant(Fp, 1);
      for (int i = 0; i < lvl; ++i) blk = blk * f;
      out.offsets.push_back(static_cast<int>(basis.size()));
      Vec v = g;
      for (int i = 0; i < blk.deg(); ++i) {
        basis.push_back(v);
        v = v * a;
      }
      out.blocks.push_back(blk);
      comps.push_back(Mat::companion(blk));
    }
  }
  out.conj = Mat::from_rows(Fp, basis);
  out.form = block_diag(comps);
  return out;
}

LDU ldu(const Mat& m) {
  if (!m.square()) throw DimensionMismatch("ldu");
  const auto& Fp = m.field();
  const auto& F = *Fp;
  int n = m.rows();
  Mat L = Mat::identity(Fp, n), U = Mat::identity(Fp, n), D(Fp, n, n);
  Vec d(n, 0);
  for (int r = 0; r < n; ++r) {
    Elt s = m(r, r);
    for (int k = 0; k < r; ++k) s = F.sub(s, F.mul(F.mul(L(r, k), d[k]), U(k, r)));
    if (s == 0) throw NoLDU("principal minor " + std::to_string(r + 1) + " vanishes");
    d[r] = s;
    Elt inv = F.inv(s);
    for (int i = r + 1; i < n; ++i) {
      Elt a = m(i, r), b = m(r, i);
      for (int k = 0; k < r; ++k) {
        a = F.sub(a, F.mul(F.mul(L(i, k), d[k]), U(k, r)));
        b = F.sub(b, F.mul(F.mul(L(r, k), d[k]), U(k, i)));
      }
      L(i, r) = F.mul(a, inv);
      U(r, i) = F.mul(b, inv);
    }
  }
  for (int i = 0; i < n; ++i) D(i, i) = d[i];
  return {L, D, U};
}

namespace {

// f(Y - y0)
Poly shift(const Poly& f, Elt y0) {
  const auto& F = f.field();
  Poly lin = Poly::linear(F, y0);
  Poly r(F);
  for (int i = f.deg(); i >= 0; --i) r = r * lin + Poly::constant(F, f[i]);
  return r;
}

}  // namespace

Poly det_pencil(const Mat& a, const Mat& n) {
  const auto& Fp = a.field();
  const auto& F = *Fp;
  int dim = a.rows();
  for (std::uint64_t y0 = 0; y0 < F.q() && y0 <= std::uint64_t(dim); ++y0) {
    Elt y = static_cast<Elt>(y0);
    Mat b = y ? axpy(a, y, n) : a;
    auto binv = try_inverse(b);
    if (!binv) continue;
    Elt db = det(b);
    // det(B + Z N) = det B * det(I + Z B^-1 N); det(I + Z M) reverses charpoly of -M
    Mat M = scale(*binv * n, F.neg(1));
    Poly cp = charpoly(M);
    std::vector<Elt> c(dim + 1, 0);
    for (int k = 0; k <= dim; ++k) c[dim - k] = F.mul(db, cp[k]);
    Poly pz(Fp, c);  // in Z = Y - y
    return y ? shift(pz, y) : pz;
  }
  return Poly(Fp);
}

BiPoly bivariate_det_interpolate(const Mat& a, const Mat& c, const Mat& d) {
  const auto& Fp = a.field();
  const auto& F = *Fp;
  int n = a.rows();
  if (F.q() <= std::uint32_t(n)) throw FieldTooSmall("need more than " + std::to_string(n) + " nodes");
  std::vector<Elt> xs(n + 1);
  std::vector<Poly> vals(n + 1);
  for (int i = 0; i <= n; ++i) {
    xs[i] = static_cast<Elt>(i);
    vals[i] = det_pencil(i ? axpy(a, xs[i], c) : a, d);
  }
  // Lagrange basis in X
  std::vector<Poly> lag(n + 1);
  Poly all = Poly::constant(Fp, 1);
  for (int i = 0; i <= n; ++i) all = all * Poly::linear(Fp, xs[i]);
  for (int i = 0; i <= n; ++i) {
    Poly li = all / Poly::linear(Fp, xs[i]);
    lag[i] = scale(li, F.inv(li.eval(xs[i])));
  }
  std::vector<std::vector<Elt>> coef(n + 1, std::vector<Elt>(n + 1, 0));  // [X power][Y power]
  for (int i = 0; i <= n; ++i)
    for (int k = 0; k <= lag[i].deg(); ++k) {
      Elt lk = lag[i][k];
      if (!lk) continue;
      for (int j = 0; j <= vals[i].deg(); ++j)
        if (vals[i][j]) coef[k][j] = F.add(coef[k][j], F.mul(lk, vals[i][j]));
    }
  coef[0][0] = F.sub(coef[0][0], 1);
  BiPoly out;
  for (int k = 0; k <= n; ++k) out.emplace_back(Fp, coef[k]);
  while (!out.empty() && out.back().is_zero()) out.pop_back();
  return out;
}

Poly bipoly_at_x(const BiPoly& p, Elt x) {
  if (p.empty()) return Poly();
  const auto& Fp = p[0].field();
  const auto& F = *Fp;
  size_t len = 0;
  for (auto& q : p) len = std::max(len, q.coeffs().size());
  std::vector<Elt> c(len, 0);
  Elt xp = 1;
  for (auto& q : p) {
    if (xp)
      for (size_t j = 0; j < q.coeffs().size(); ++j)
        if (q[j]) c[j] = F.add(c[j], F.mul(xp, q[j]));
    xp = F.mul(xp, x);
  }
  return Poly(Fp, c);
}

Elt bipoly_eval(const BiPoly& p, Elt x, Elt y) {
  if (p.empty()) return 0;
  return bipoly_at_x(p, x).eval(y);
}

std::uint64_t order_dividing(const Mat& g, std::uint64_t bound) {
  if (!power(g, static_cast<long long>(bound)).is_identity()) throw NotFinite("order does not divide bound");
  std::uint64_t n = bound;
  for (auto [l, e] : factorize(bound)) {
    for (int i = 0; i < e; ++i) {
      if (power(g, static_cast<long long>(n / l)).is_identity())
        n /= l;
      else
        break;
    }
  }
  return n;
}

FieldPtr field_from_header(std::uint32_t p, unsigned r, const std::vector<std::uint32_t>& modulus) {
  if (r == 1) return Field::prime(p);
  if (modulus.empty()) return Field::extension(p, r);
  return Field::extension(p, modulus);
}

void write_matrix(std::ostream& os, const Mat& m) {
  const auto& F = *m.field();
  os << F.p() << " " << F.r() << " " << m.rows() << " " << m.cols();
  if (F.r() > 1)
    for (auto c : F.modulus()) os << " " << c;
  os << "\n";
  for (int i = 0; i < m.rows(); ++i) {
    for (int j = 0; j < m.cols(); ++j) os << (j ? " " : "") << F.to_string(m(i, j));
    os << "\n";
  }
}

Mat read_matrix(std::istream& is, FieldPtr F) {
  std::string line;
  while (std::getline(is, line))
    if (!line.empty() && line[0] != '#') break;
  std::istringstream hs(line);
  std::uint32_t p;
  unsigned r;
  int nr, nc;
  if (!(hs >> p >> r >> nr >> nc)) throw ParseError("bad matrix header: " + line);
  std::vector<std::uint32_t> mod;
  std::uint32_t x;
  while (hs >> x) mod.push_back(x);
  if (!F) F = field_from_header(p, r, mod);
  if (F->p() != p || F->r() != r) throw ParseError("matrix field mismatch");
  Mat m(F, nr, nc);
  for (int i = 0; i < nr; ++i) {
    for (int j = 0; j < nc; ++j) {
      std::string tok;
      if (!(is >> tok)) throw ParseError("truncated matrix");
      if (r == 1) {
        m(i, j) = F->from_int(std::stoll(tok));
      } else {
        std::vector<std::uint32_t> cf;
        std::stringstream ts(tok);
        std::string part;
        while (std::getline(ts, part, ',')) cf.push_back(static_cast<std::uint32_t>(std::stoul(part)));
        m(i, j) = F->from_coeffs(cf);
      }
    }
  }
  return m;
}

}  // namespace lie
