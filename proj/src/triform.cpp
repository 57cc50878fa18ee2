#include "lie/triform.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <random>
#include <sstream>
#include <unordered_map>

#include "lie/errors.hpp"

namespace lie {

namespace {

TriForm::Key sorted(int i, int j, int k) {
  TriForm::Key t{i, j, k};
  std::sort(t.begin(), t.end());
  return t;
}

// distinct orderings of a sorted triple
template <class Fn>
void for_perms(TriForm::Key t, Fn&& fn) {
  do fn(t[0], t[1], t[2]);
  while (std::next_permutation(t.begin(), t.end()));
}

Elt parse_elt(const Field& F, const std::string& tok) {
  if (F.r() == 1) return F.from_int(std::stoll(tok));
  std::vector<std::uint32_t> cf;
  std::stringstream ts(tok);
  std::string part;
  while (std::getline(ts, part, ',')) cf.push_back(static_cast<std::uint32_t>(std::stoul(part)));
  return F.from_coeffs(cf);
}

Mat random_word(const std::vector<Mat>& gens, std::mt19937_64& rng, int len = 12) {
  std::uniform_int_distribution<size_t> pick(0, gens.size() - 1);
  Mat g = gens[pick(rng)];
  for (int i = 1; i < len; ++i) g = g * gens[pick(rng)];
  return g;
}

}  // namespace

Elt TriForm::get(int i, int j, int k) const {
  auto it = c_.find(sorted(i, j, k));
  return it == c_.end() ? 0 : it->second;
}

void TriForm::set(int i, int j, int k, Elt v) {
  for (int x : {i, j, k})
    if (x < 0 || x >= dim_) throw IndexOutOfRange("triform index " + std::to_string(x));
  auto t = sorted(i, j, k);
  if (v == 0)
    c_.erase(t);
  else
    c_[t] = v;
}

Elt TriForm::operator()(const Vec& u, const Vec& v, const Vec& w) const {
  const auto& F = *F_;
  Elt s = 0;
  for (auto& [t, c] : c_) {
    Elt part = 0;
    for_perms(t, [&](int a, int b, int d) {
      if (u[a] && v[b] && w[d]) part = F.add(part, F.mul(F.mul(u[a], v[b]), w[d]));
    });
    if (part) s = F.add(s, F.mul(c, part));
  }
  return s;
}

Vec TriForm::contract(const Vec& u, const Vec& v) const {
  const auto& F = *F_;
  Vec out(dim_, 0);
  for (auto& [t, c] : c_)
    for_perms(t, [&](int a, int b, int d) {
      if (u[b] && v[d]) out[a] = F.add(out[a], F.mul(c, F.mul(u[b], v[d])));
    });
  return out;
}

TriForm TriForm::scaled(Elt s) const {
  TriForm g(F_, dim_);
  for (auto& [t, c] : c_) g.set(t[0], t[1], t[2], F_->mul(c, s));
  return g;
}

// ---- Dickson form

int dickson_x(int i) { return i - 1; }
int dickson_xp(int i) { return 5 + i; }
int dickson_xx(int i, int j) {
  if (i == j || i < 1 || j < 1 || i > 6 || j > 6) throw IndexOutOfRange("x_" + std::to_string(i) + std::to_string(j));
  if (i > j) std::swap(i, j);
  int pos = 12;
  for (int a = 1; a < i; ++a) pos += 6 - a;
  return pos + (j - i - 1);
}

std::string dickson_label(int pos) {
  if (pos < 6) return "x" + std::to_string(pos + 1);
  if (pos < 12) return "x" + std::to_string(pos - 5) + "'";
  for (int i = 1; i <= 6; ++i)
    for (int j = i + 1; j <= 6; ++j)
      if (dickson_xx(i, j) == pos) return "x" + std::to_string(i) + std::to_string(j);
  throw IndexOutOfRange("dickson basis position " + std::to_string(pos));
}

TriForm dickson_form(const FieldPtr& F) {
  if (F->p() == 2 || F->p() == 3) throw BadCharacteristic("Dickson form needs characteristic > 3");
  TriForm f(F, 27);
  auto sgn = [](int i, int j) { return i < j ? 1 : -1; };
  auto val = [&](int s) { return s > 0 ? Elt(1) : F->neg(1); };
  for (int i = 1; i <= 6; ++i)
    for (int j = 1; j <= 6; ++j)
      if (i != j) f.set(dickson_x(i), dickson_xp(j), dickson_xx(i, j), val(sgn(i, j)));
  static const char* table[] = {"12 34 56", "13 24 65", "14 23 56", "15 26 43", "16 25 34",
                                "12 35 64", "13 26 54", "14 25 63", "15 24 36", "16 23 45",
                                "12 36 45", "13 25 46", "14 26 35", "15 23 64", "16 24 53"};
  for (const char* row : table) {
    std::istringstream is(row);
    std::string a, b, c;
    is >> a >> b >> c;
    int s = 1, pos[3];
    int k = 0;
    for (auto* p : {&a, &b, &c}) {
      int i = (*p)[0] - '0', j = (*p)[1] - '0';
      s *= sgn(i, j);
      pos[k++] = dickson_xx(i, j);
    }
    f.set(pos[0], pos[1], pos[2], val(s));
  }
  return f;
}

// ---- P, T, Theta, Delta

Elt FormPT::P(const Vec& x, const Vec& y) const {
  const auto& F = *f.field();
  return F.mul(f(x, y, y), F.inv(2));
}

Elt FormPT::T(const Vec& x) const {
  const auto& F = *f.field();
  return F.mul(f(x, x, x), F.inv(6));
}

FormPT derive_P_T(const TriForm& f) {
  if (f.field()->p() == 2 || f.field()->p() == 3) throw BadCharacteristic("P and T need characteristic > 3");
  return FormPT{f};
}

namespace {

std::vector<Vec> common_zeros(const std::vector<Vec>& functionals, const FieldPtr& F, int dim) {
  if (functionals.empty()) {
    std::vector<Vec> all;
    for (int i = 0; i < dim; ++i) {
      Vec e(dim, 0);
      e[i] = 1;
      all.push_back(e);
    }
    return all;
  }
  Mat A = Mat::from_rows(F, functionals);
  return kernel(A);
}

}  // namespace

std::vector<Vec> theta(const std::vector<Vec>& U, const TriForm& f) {
  auto basis = row_basis(U, f.field());
  std::vector<Vec> conds;
  for (size_t a = 0; a < basis.size(); ++a)
    for (size_t b = a; b < basis.size(); ++b) {
      Vec c = f.contract(basis[a], basis[b]);
      if (!vzero(c)) conds.push_back(c);
    }
  return common_zeros(conds, f.field(), f.dim());
}

std::vector<Vec> delta(const std::vector<Vec>& U, const TriForm& f) {
  auto basis = row_basis(U, f.field());
  std::vector<Vec> conds;
  for (auto& x : basis)
    for (int w = 0; w < f.dim(); ++w) {
      Vec e(f.dim(), 0);
      e[w] = 1;
      Vec c = f.contract(x, e);
      if (!vzero(c)) conds.push_back(c);
    }
  return common_zeros(conds, f.field(), f.dim());
}

// ---- modules

ModuleRep ModuleRep::from(std::vector<Mat> gens) {
  if (gens.empty()) throw DimensionMismatch("module without generators");
  ModuleRep m;
  m.F = gens[0].field();
  m.dim = gens[0].rows();
  for (auto& g : gens)
    if (g.rows() != m.dim || g.cols() != m.dim) throw DimensionMismatch("module generators");
  m.gens = std::move(gens);
  return m;
}

ModuleRep read_module(std::istream& is) {
  std::vector<Mat> gens;
  FieldPtr F;
  for (;;) {
    is >> std::ws;
    if (is.peek() == '#') {
      std::string skip;
      std::getline(is, skip);
      continue;
    }
    if (!is || is.peek() == EOF) break;
    gens.push_back(read_matrix(is, F));
    F = gens.back().field();
  }
  return ModuleRep::from(std::move(gens));
}

void write_module(std::ostream& os, const ModuleRep& m) {
  for (auto& g : m.gens) write_matrix(os, g);
}

// ---- invariant forms

bool form_invariant(const TriForm& f, const Mat& g) {
  int n = f.dim();
  std::vector<Vec> rows(n);
  for (int i = 0; i < n; ++i) rows[i] = g.row_vec(i);
  for (int a = 0; a < n; ++a)
    for (int b = a; b < n; ++b)
      for (int c = b; c < n; ++c)
        if (f(rows[a], rows[b], rows[c]) != f.get(a, b, c)) return false;
  return true;
}

TriformSolve invariant_triforms(const ModuleRep& rep, std::uint64_t seed, int held_out) {
  const auto& F = *rep.F;
  int n = rep.dim;
  TriformSolve out;

  std::vector<const Mat*> diag;
  for (auto& g : rep.gens)
    if (g.is_diagonal()) diag.push_back(&g);
  out.diagonal_used = int(diag.size());
  std::vector<TriForm::Key> cand;
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j)
      for (int k = j; k < n; ++k) {
        bool keep = true;
        for (auto* d : diag) keep = keep && F.mul(F.mul((*d)(i, i), (*d)(j, j)), (*d)(k, k)) == 1;
        if (keep) cand.push_back({i, j, k});
      }
  int m = int(cand.size());
  out.candidates = m;
  std::map<TriForm::Key, int> col;
  for (int c = 0; c < m; ++c) col[cand[c]] = c;

  Mat system(rep.F, 0, m);
  auto add_equations = [&](const Mat& g) {
    std::vector<Vec> eqs;
    for (int a = 0; a < n; ++a)
      for (int b = a; b < n; ++b)
        for (int c = b; c < n; ++c) {
          Vec eq(m, 0);
          for (int t = 0; t < m; ++t) {
            Elt s = 0;
            for_perms(cand[t], [&](int p, int q, int r) {
              Elt x = g(a, p), y = g(b, q), z = g(c, r);
              if (x && y && z) s = F.add(s, F.mul(F.mul(x, y), z));
            });
            eq[t] = s;
          }
          auto it = col.find({a, b, c});
          if (it != col.end()) eq[it->second] = F.sub(eq[it->second], 1);
          if (!vzero(eq)) eqs.push_back(std::move(eq));
        }
    if (eqs.empty()) return;
    Mat stacked = vstack(system, Mat::from_rows(rep.F, eqs));
    auto piv = rref(stacked);
    Mat reduced(rep.F, int(piv.size()), m);
    for (int r = 0; r < int(piv.size()); ++r) reduced.set_row(r, stacked.row_vec(r));
    system = reduced;
  };

  std::mt19937_64 rng(seed);
  for (auto& g : rep.gens)
    if (!g.is_diagonal()) add_equations(g), ++out.rounds;
  int last = m - system.rows(), still = 0;
  while (still < 3 && last > 0) {
    add_equations(random_word(rep.gens, rng));
    ++out.rounds;
    int now = m - system.rows();
    still = now < last ? 0 : still + 1;
    last = now;
  }

  std::vector<Vec> sols = system.rows() ? kernel(system) : std::vector<Vec>{};
  if (!system.rows())
    for (int c = 0; c < m; ++c) {
      Vec e(m, 0);
      e[c] = 1;
      sols.push_back(e);
    }
  for (auto& s : sols) {
    TriForm f(rep.F, n);
    Elt lead = 0;
    for (int c = 0; c < m; ++c)
      if (s[c] && !lead) lead = F.inv(s[c]);
    for (int c = 0; c < m; ++c)
      if (s[c]) f.set(cand[c][0], cand[c][1], cand[c][2], F.mul(s[c], lead));
    out.forms.push_back(std::move(f));
  }

  std::mt19937_64 fresh(seed ^ 0x5eed5eedULL);
  out.held_out_ok = true;
  for (int w = 0; w < held_out; ++w) {
    Mat g = random_word(rep.gens, fresh);
    for (auto& f : out.forms) out.held_out_ok = out.held_out_ok && form_invariant(f, g);
    ++out.held_out_words;
  }
  return out;
}

// ---- symmetric powers

size_t sym_power_dim(int n, int k) {
  size_t num = 1, den = 1;
  for (int i = 0; i < k; ++i) num *= size_t(n + i), den *= size_t(i + 1);
  return num / den;
}

int sym_power_fixed_dim(const ModuleRep& rep, int k) {
  if (k < 1 || k > 3) throw DimensionMismatch("symmetric powers of degree 1..3 only");
  const auto& F = *rep.F;
  int n = rep.dim;
  std::vector<std::vector<int>> mons;
  std::unordered_map<long long, int> index;
  auto code = [&](std::vector<int> v) {
    std::sort(v.begin(), v.end());
    long long c = 0;
    for (int x : v) c = c * n + x;
    return c;
  };
  std::vector<int> cur(k, 0);
  std::function<void(int, int)> gen = [&](int pos, int from) {
    if (pos == k) {
      index[code(cur)] = int(mons.size());
      mons.push_back(cur);
      return;
    }
    for (int i = from; i < n; ++i) cur[pos] = i, gen(pos + 1, i);
  };
  gen(0, 0);
  int N = int(mons.size());

  // monomials are eigenvectors of diagonal generators
  std::vector<int> alive;
  for (int t = 0; t < N; ++t) {
    bool keep = true;
    for (auto& g : rep.gens)
      if (g.is_diagonal()) {
        Elt d = 1;
        for (int x : mons[t]) d = F.mul(d, g(x, x));
        keep = keep && d == 1;
      }
    if (keep) alive.push_back(t);
  }
  std::vector<Vec> K;
  for (int t : alive) {
    Vec e(N, 0);
    e[t] = 1;
    K.push_back(e);
  }

  // x_i -> sum_j x_j g_ji
  auto image = [&](const Mat& g, int t) {
    Vec out(N, 0);
    const auto& mo = mons[t];
    std::vector<int> idx(k);
    std::function<void(int, Elt)> rec = [&](int pos, Elt acc) {
      if (pos == k) {
        int to = index[code(idx)];
        out[to] = F.add(out[to], acc);
        return;
      }
      for (int j = 0; j < n; ++j) {
        Elt x = g(j, mo[pos]);
        if (!x) continue;
        idx[pos] = j;
        rec(pos + 1, F.mul(acc, x));
      }
    };
    rec(0, 1);
    return out;
  };

  for (auto& g : rep.gens) {
    if (g.is_diagonal() || K.empty()) continue;
    std::map<int, Vec> cache;
    std::vector<Vec> diff;
    for (auto& v : K) {
      Vec img(N, 0);
      for (int t = 0; t < N; ++t) {
        if (!v[t]) continue;
        auto it = cache.find(t);
        if (it == cache.end()) it = cache.emplace(t, image(g, t)).first;
        img = vadd(rep.F, img, vscale(rep.F, it->second, v[t]));
      }
      diff.push_back(vsub(rep.F, img, v));
    }
    auto combos = left_kernel(Mat::from_rows(rep.F, diff));
    std::vector<Vec> next;
    for (auto& c : combos) {
      Vec v(N, 0);
      for (size_t i = 0; i < K.size(); ++i)
        if (c[i]) v = vadd(rep.F, v, vscale(rep.F, K[i], c[i]));
      next.push_back(v);
    }
    K = std::move(next);
  }
  return int(K.size());
}

// ---- hom spaces

std::vector<Mat> hom_space(const ModuleRep& A, const ModuleRep& B) {
  if (A.gens.size() != B.gens.size())
    throw GeneratorCountMismatch(std::to_string(A.gens.size()) + " vs " + std::to_string(B.gens.size()));
  const auto& F = *A.F;
  int a = A.dim, b = B.dim;
  std::vector<Vec> rows;
  for (size_t g = 0; g < A.gens.size(); ++g) {
    const Mat& ga = A.gens[g];
    const Mat& gb = B.gens[g];
    for (int i = 0; i < a; ++i)
      for (int j = 0; j < b; ++j) {
        Vec eq(size_t(a) * b, 0);
        for (int k = 0; k < a; ++k) {
          size_t u = size_t(k) * b + j;
          eq[u] = F.add(eq[u], ga(i, k));
        }
        for (int k = 0; k < b; ++k) {
          size_t u = size_t(i) * b + k;
          eq[u] = F.sub(eq[u], gb(k, j));
        }
        if (!vzero(eq)) rows.push_back(std::move(eq));
      }
  }
  std::vector<Vec> ker;
  if (rows.empty()) {
    for (size_t u = 0; u < size_t(a) * b; ++u) {
      Vec e(size_t(a) * b, 0);
      e[u] = 1;
      ker.push_back(e);
    }
  } else {
    ker = kernel(Mat::from_rows(A.F, rows));
  }
  std::vector<Mat> out;
  for (auto& v : ker) {
    Mat X(A.F, a, b);
    std::copy(v.begin(), v.end(), X.data().begin());
    out.push_back(X);
  }
  return out;
}

Mat restrict_compare(const std::vector<Mat>& A, const std::vector<Mat>& B) {
  if (A.empty()) return Mat(B.empty() ? nullptr : B[0].field(), 0, int(B.size()));
  const auto& Fp = A[0].field();
  if (B.empty()) throw NotContained("nonzero space inside the zero space");
  std::vector<Vec> brows;
  for (auto& b : B) brows.push_back(b.data());
  Mat Bm = Mat::from_rows(Fp, brows);
  Mat out(Fp, int(A.size()), int(B.size()));
  std::string missing;
  for (size_t i = 0; i < A.size(); ++i) {
    auto c = solve_left(Bm, A[i].data());
    if (!c) {
      missing += (missing.empty() ? "" : ", ") + std::to_string(i);
      continue;
    }
    out.set_row(int(i), *c);
  }
  if (!missing.empty()) throw NotContained("elements not in the span: " + missing);
  return out;
}

// ---- symplectic module and Lambda^2 / omega

Mat invariant_alternating_form(const ModuleRep& rep) {
  const auto& F = *rep.F;
  int n = rep.dim;
  std::vector<std::pair<int, int>> pairs;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) pairs.push_back({i, j});
  int m = int(pairs.size());
  auto basis = [&](int u) {
    Mat E(rep.F, n, n);
    E(pairs[u].first, pairs[u].second) = 1;
    E(pairs[u].second, pairs[u].first) = F.neg(1);
    return E;
  };
  std::vector<Vec> cols(m);
  for (int u = 0; u < m; ++u) {
    Mat E = basis(u);
    for (auto& g : rep.gens) {
      Mat D = g * E * g.transpose() - E;
      cols[u].insert(cols[u].end(), D.data().begin(), D.data().end());
    }
  }
  Mat sys = Mat::from_rows(rep.F, cols).transpose();
  auto ker = kernel(sys);
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<Elt> any(0, F.q() - 1);
  for (int attempt = 0; attempt < 20 && !ker.empty(); ++attempt) {
    Vec c(ker[0].size(), 0);
    for (size_t i = 0; i < ker.size(); ++i) {
      Elt s = ker.size() == 1 ? 1 : any(rng);
      c = vadd(rep.F, c, vscale(rep.F, ker[i], s));
    }
    Mat J(rep.F, n, n);
    for (int u = 0; u < m; ++u) J = axpy(J, c[u], basis(u));
    if (det(J)) return J;
  }
  return Mat();
}

ModuleRep symplectic_group(const FieldPtr& F, int n) {
  int d = 2 * n;
  Mat J(F, d, d);
  for (int i = 0; i < n; ++i) J(i, n + i) = 1, J(n + i, i) = F->neg(1);
  auto preserves = [&](const Mat& g) { return g * J * g.transpose() == J; };
  std::vector<Mat> gens;
  for (int i = 0; i + 1 < n; ++i) {
    for (bool up : {true, false}) {
      Mat g = Mat::identity(F, d);
      int a = up ? i : i + 1, b = up ? i + 1 : i;
      g(a, b) = 1;
      g(n + b, n + a) = F->neg(1);
      if (!preserves(g)) throw FormNotPreserved("short root element");
      gens.push_back(g);
    }
  }
  for (bool up : {true, false}) {
    Mat g = Mat::identity(F, d);
    if (up)
      g(n - 1, 2 * n - 1) = 1;
    else
      g(2 * n - 1, n - 1) = 1;
    if (!preserves(g)) throw FormNotPreserved("long root element");
    gens.push_back(g);
  }
  Elt lam = F->prim();
  for (int i = 0; i < n; ++i) {
    Mat t = Mat::identity(F, d);
    t(i, i) = lam;
    t(n + i, n + i) = F->inv(lam);
    gens.push_back(t);
  }
  return ModuleRep::from(std::move(gens));
}

ModuleRep wedge2_mod_form(const ModuleRep& rep) {
  const auto& F = *rep.F;
  int n = rep.dim;
  Mat J = invariant_alternating_form(rep);
  if (J.rows() == 0) throw FormNotPreserved("no nondegenerate invariant alternating form");
  Mat W = inverse(J);
  std::vector<std::pair<int, int>> pairs;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) pairs.push_back({i, j});
  int m = int(pairs.size());
  Vec omega(m);
  for (int u = 0; u < m; ++u) omega[u] = W(pairs[u].first, pairs[u].second);
  int piv = 0;
  while (piv < m && !omega[piv]) ++piv;
  Elt pinv = F.inv(omega[piv]);

  std::vector<Mat> out;
  for (auto& g : rep.gens) {
    Mat L(rep.F, m, m);
    for (int u = 0; u < m; ++u) {
      auto [i, j] = pairs[u];
      for (int v = 0; v < m; ++v) {
        auto [k, l] = pairs[v];
        L(u, v) = F.sub(F.mul(g(i, k), g(j, l)), F.mul(g(i, l), g(j, k)));
      }
    }
    if (omega * L != omega) throw FormNotPreserved("omega is not fixed");
    Mat Q(rep.F, m - 1, m - 1);
    int r = 0;
    for (int u = 0; u < m; ++u) {
      if (u == piv) continue;
      Vec v = L.row_vec(u);
      v = vsub(rep.F, v, vscale(rep.F, omega, F.mul(v[piv], pinv)));
      int c = 0;
      for (int w = 0; w < m; ++w)
        if (w != piv) Q(r, c++) = v[w];
      ++r;
    }
    out.push_back(Q);
  }
  return ModuleRep::from(std::move(out));
}

// ---- serialisation

void write_triform(std::ostream& os, const TriForm& f) {
  const auto& F = *f.field();
  os << F.p() << " " << F.r() << " " << f.dim();
  if (F.r() > 1)
    for (auto c : F.modulus()) os << " " << c;
  os << "\n";
  for (auto& [t, c] : f.constants()) os << t[0] + 1 << " " << t[1] + 1 << " " << t[2] + 1 << " " << F.to_string(c) << "\n";
}

TriForm read_triform(std::istream& is) {
  std::string line;
  while (std::getline(is, line))
    if (!line.empty() && line[0] != '#') break;
  std::istringstream hs(line);
  std::uint32_t p;
  unsigned r;
  int dim;
  if (!(hs >> p >> r >> dim)) throw ParseError("bad form header: " + line);
  std::vector<std::uint32_t> mod;
  std::uint32_t x;
  while (hs >> x) mod.push_back(x);
  TriForm f(field_from_header(p, r, mod), dim);
  int i, j, k;
  std::string tok;
  while (is >> i >> j >> k >> tok) f.set(i - 1, j - 1, k - 1, parse_elt(*f.field(), tok));
  return f;
}

}  // namespace lie
