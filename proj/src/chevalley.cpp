#include "lie/chevalley.hpp"

#include <algorithm>
#include <functional>
#include <random>

namespace lie {

int chain_p(const RootDatum& rd, int r, int s) {
  int p = 0;
  IVec v = rd.roots[s];
  for (;;) {
    for (int i = 0; i < rd.rank; ++i) v[i] -= rd.roots[r][i];
    if (rd.find(v) < 0) return p;
    ++p;
  }
}

std::vector<int> structure_constants(const RootDatum& rd) {
  int R = rd.nroots();
  auto es = extraspecial_pairs(rd);
  std::vector<int> tab(size_t(R) * R, 0);
  std::vector<char> done(size_t(R) * R, 0);
  auto sign = [&](int r) { return rd.positive(r) ? 1 : -1; };
  std::function<int(int, int)> N = [&](int a, int b) -> int {
    size_t key = size_t(a) * R + b;
    if (done[key]) return tab[key];
    int c = rd.sum(a, b);
    int val = 0;
    if (c >= 0) {
      if (rd.positive(a) && rd.positive(b)) {
        if (b < a) {
          val = -N(b, a);
        } else {
          auto [rho, sig] = es.at(c);
          if (rho == a) {
            val = chain_p(rd, a, b) + 1;
          } else {
            // four roots a + b - rho - sig = 0
            int mr = rd.neg(rho), ms = rd.neg(sig);
            int num = 0;
            int bmr = rd.sum(b, mr), amr = rd.sum(a, mr);
            // the two remaining terms share the denominator lcm; keep exact by scaling by 2
            int t = 0;
            if (bmr >= 0) t += 2 * N(b, mr) * N(a, ms) / rd.len2(bmr);
            if (amr >= 0) t += 2 * N(mr, a) * N(b, ms) / rd.len2(amr);
            num = -rd.len2(c) * t;
            int den = 2 * N(mr, ms);
            if (num % den) throw std::logic_error("inexact structure constant");
            val = num / den;
          }
        }
      } else if (!rd.positive(a) && !rd.positive(b)) {
        val = -N(rd.neg(a), rd.neg(b));
      } else {
        // cyclic relation on r1 + r2 + r3 = 0
        int r1 = a, r2 = b, r3 = rd.neg(c);
        int num;
        int den;
        if (sign(r2) == sign(r3)) {
          num = rd.len2(r3) * N(r2, r3);
          den = rd.len2(r1);
        } else {
          num = rd.len2(r3) * N(r3, r1);
          den = rd.len2(r2);
        }
        if (num % den) throw std::logic_error("inexact cyclic constant");
        val = num / den;
      }
    }
    done[key] = 1;
    tab[key] = val;
    return val;
  };
  for (int a = 0; a < R; ++a)
    for (int b = 0; b < R; ++b) N(a, b);
  return tab;
}

LieAlgebra::LieAlgebra(const RootDatum& rd, FieldPtr F) : rd_(rd), F_(std::move(F)) {
  dim_ = 2 * rd_.npos + rd_.rank;
  ntab_ = structure_constants(rd_);
  build_tables();
}

IVec LieAlgebra::coroot(int r) const {
  IVec c(rd_.rank);
  for (int i = 0; i < rd_.rank; ++i) c[i] = rd_.pairing(rd_.simple(i), r);
  return c;
}

void LieAlgebra::build_tables() {
  int d = dim_, l = rd_.rank;
  br_.assign(size_t(d) * d, {});
  for (int i = 0; i < d; ++i) {
    int ri = root_at(i);
    for (int j = 0; j < d; ++j) {
      int rj = root_at(j);
      auto& out = br_[size_t(i) * d + j];
      if (ri >= 0 && rj >= 0) {
        if (rj == rd_.neg(ri)) {
          IVec h = coroot(ri);
          for (int k = 0; k < l; ++k)
            if (h[k]) out.emplace_back(cartan_pos(k), h[k]);
        } else {
          int s = rd_.sum(ri, rj);
          if (s >= 0) out.emplace_back(pos(s), N(ri, rj));
        }
      } else if (ri < 0 && rj >= 0) {
        int c = rd_.roots[rj][i - rd_.npos];
        if (c) out.emplace_back(j, c);
      } else if (ri >= 0 && rj < 0) {
        int c = rd_.roots[ri][j - rd_.npos];
        if (c) out.emplace_back(i, -c);
      }
    }
  }
  adb_.clear();
  for (int i = 0; i < d; ++i) adb_.push_back(ad(basis(i)));
}

void LieAlgebra::tamper(int r, int s, int value) {
  ntab_[size_t(r) * rd_.nroots() + s] = value;
  build_tables();
}

Vec LieAlgebra::basis(int i) const {
  Vec v(dim_, 0);
  v[i] = 1;
  return v;
}

Vec LieAlgebra::bracket(const Vec& x, const Vec& y) const {
  const auto& F = *F_;
  Vec out(dim_, 0);
  std::vector<int> nx, ny;
  for (int i = 0; i < dim_; ++i) {
    if (x[i]) nx.push_back(i);
    if (y[i]) ny.push_back(i);
  }
  for (int i : nx)
    for (int j : ny) {
      const auto& t = br_[size_t(i) * dim_ + j];
      if (t.empty()) continue;
      Elt xy = F.mul(x[i], y[j]);
      for (auto [k, c] : t) out[k] = F.add(out[k], F.mul(xy, F.from_int(c)));
    }
  return out;
}

Mat LieAlgebra::ad(const Vec& v) const {
  // row i is [v, b_i]
  const auto& F = *F_;
  Mat m(F_, dim_, dim_);
  for (int k = 0; k < dim_; ++k) {
    if (!v[k]) continue;
    for (int i = 0; i < dim_; ++i)
      for (auto [j, c] : br_[size_t(k) * dim_ + i]) m(i, j) = F.add(m(i, j), F.mul(v[k], F.from_int(c)));
  }
  return m;
}

Mat LieAlgebra::right_mult(const Vec& y) const {
  // row i is [b_i, y]
  const auto& F = *F_;
  Mat m(F_, dim_, dim_);
  for (int k = 0; k < dim_; ++k) {
    if (!y[k]) continue;
    for (int i = 0; i < dim_; ++i)
      for (auto [j, c] : br_[size_t(i) * dim_ + k]) m(i, j) = F.add(m(i, j), F.mul(y[k], F.from_int(c)));
  }
  return m;
}

Mat LieAlgebra::killing_form() const {
  const auto& F = *F_;
  Mat K(F_, dim_, dim_);
  // sparse traces: tr(ad b_i ad b_j) = sum over (a,b) of ad_i[a][b] ad_j[b][a]
  for (int i = 0; i < dim_; ++i)
    for (int j = 0; j <= i; ++j) {
      Elt s = 0;
      const Mat& A = adb_[i];
      const Mat& B = adb_[j];
      for (int a = 0; a < dim_; ++a)
        for (auto [b, c] : br_[size_t(i) * dim_ + a]) s = F.add(s, F.mul(A(a, b), B(b, a)));
      K(i, j) = K(j, i) = s;
    }
  return K;
}

std::shared_ptr<const LieAlgebra> build_lie_algebra(const RootDatum& rd, FieldPtr F) {
  return std::make_shared<const LieAlgebra>(rd, std::move(F));
}

Mat ad(const LieAlgebra& L, const Vec& x) { return L.ad(x); }

std::vector<Vec> fixed_space(const Mat& g) { return eigenspace(g, 1); }

Mat chevalley_involution(const LieAlgebra& L) {
  const auto& F = *L.field();
  int d = L.dim();
  Mat m(L.field(), d, d);
  for (int i = 0; i < d; ++i) {
    if (L.root_at(i) >= 0)
      m(i, L.opposite(i)) = F.neg(1);
    else
      m(i, i) = F.neg(1);
  }
  return m;
}

Mat killing_form(const LieAlgebra& L) { return L.killing_form(); }

bool preserves_bracket(const LieAlgebra& L, const Mat& g) {
  int d = L.dim();
  std::vector<Vec> img(d);
  for (int i = 0; i < d; ++i) img[i] = g.row_vec(i);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      Vec lhs = L.bracket(L.basis(i), L.basis(j)) * g;
      if (lhs != L.bracket(img[i], img[j])) return false;
    }
  return true;
}

long long jacobi_violations(const LieAlgebra& L, const std::vector<std::array<int, 3>>& triples) {
  const auto& F = L.field();
  long long bad = 0;
  for (auto [a, b, c] : triples) {
    Vec x = L.basis(a), y = L.basis(b), z = L.basis(c);
    Vec s = L.bracket(L.bracket(x, y), z);
    s = vadd(F, s, L.bracket(L.bracket(y, z), x));
    s = vadd(F, s, L.bracket(L.bracket(z, x), y));
    if (!vzero(s)) ++bad;
  }
  return bad;
}

// ---------------------------------------------------------------------------
// adapted Chevalley basis

namespace {

// restriction of x -> x*M to the row space of B (rows in reduced echelon form)
Mat restrict_action(const Mat& B, const std::vector<int>& piv, const Mat& M) {
  Mat BM = B * M;
  int k = B.rows();
  Mat A(B.field(), k, k);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) A(i, j) = BM(i, piv[j]);
  return A;
}

struct Sub {
  Mat B;  // echelon basis
  std::vector<int> piv;
};

Sub make_sub(const std::vector<Vec>& rows, const FieldPtr& F) {
  Mat m = Mat::from_rows(F, rows);
  auto piv = rref(m);
  Mat B(F, static_cast<int>(piv.size()), m.cols());
  for (int i = 0; i < B.rows(); ++i) B.set_row(i, m.row_vec(i));
  return {B, piv};
}

// split a subspace into eigenspaces of x -> x*M; throws if eigenvalues leave the field
std::vector<std::pair<Elt, Sub>> split(const Sub& W, const Mat& M) {
  const auto& F = W.B.field();
  Mat A = restrict_action(W.B, W.piv, M);
  auto ev = roots_in_field(charpoly(A));
  std::vector<std::pair<Elt, Sub>> out;
  int total = 0;
  for (Elt lam : ev) {
    auto ker = eigenspace(A, lam);
    std::vector<Vec> rows;
    for (auto& y : ker) rows.push_back(y * W.B);
    total += static_cast<int>(rows.size());
    out.emplace_back(lam, make_sub(rows, F));
  }
  if (total != W.B.rows()) throw NotSemisimple("eigenvalues outside the field or not diagonalisable");
  return out;
}

// center and derived algebra of a subalgebra spanned by rows
std::vector<Vec> center_of(const LieAlgebra& L, const std::vector<Vec>& S) {
  const auto& F = L.field();
  int m = static_cast<int>(S.size()), d = L.dim();
  // unknown coefficients c: sum c_i [s_i, s_j] = 0 for all j
  Mat sys(F, m * d, m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      Vec b = L.bracket(S[i], S[j]);
      for (int k = 0; k < d; ++k) sys(j * d + k, i) = b[k];
    }
  std::vector<Vec> out;
  for (auto& c : kernel(sys)) {
    Vec v(d, 0);
    for (int i = 0; i < m; ++i)
      if (c[i]) v = vadd(F, v, vscale(F, S[i], c[i]));
    out.push_back(v);
  }
  return out;
}

}  // namespace

ChevBasisChange adapted_chevalley_basis(const LieAlgebra& L, const Mat& s, std::uint64_t seed) {
  const auto& Fp = L.field();
  const auto& F = *Fp;
  int l = L.rank();
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<Elt> unif(0, F.q() - 1);

  // (a) Cartan subalgebra inside the fixed space
  auto fix = fixed_space(s);
  std::vector<Vec> H;
  if (static_cast<int>(fix.size()) == l) {
    H = fix;
  } else if (static_cast<int>(fix.size()) == l + 2) {
    auto Z = center_of(L, fix);
    if (static_cast<int>(Z.size()) != l - 1) throw NotSemisimple("fixed space is not of type A1 plus torus");
    std::vector<Vec> der;
    for (size_t i = 0; i < fix.size(); ++i)
      for (size_t j = i + 1; j < fix.size(); ++j) der.push_back(L.bracket(fix[i], fix[j]));
    auto D = row_basis(der, Fp);
    if (D.size() != 3) throw NotSemisimple("derived algebra of the fixed space is not 3-dimensional");
    auto Dsub = make_sub(D, Fp);
    Vec x;
    for (int attempt = 0;; ++attempt) {
      if (attempt > 200) throw NotSemisimple("no split Cartan line in the A1 factor");
      Vec c(3);
      for (auto& e : c) e = unif(rng);
      x = c * Dsub.B;
      if (vzero(x)) continue;
      Mat A = restrict_action(Dsub.B, Dsub.piv, L.ad(x));
      if (roots_in_field(charpoly(A)).size() == 3) break;
    }
    H = Z;
    H.push_back(x);
  } else {
    throw NotSemisimple("fixed space of dimension " + std::to_string(fix.size()));
  }
  return adapted_chevalley_basis_for(L, H, seed);
}

ChevBasisChange adapted_chevalley_basis_for(const LieAlgebra& L, const std::vector<Vec>& H, std::uint64_t seed) {
  const auto& Fp = L.field();
  const auto& F = *Fp;
  const auto& rd = L.rd();
  int d = L.dim(), l = L.rank(), R = rd.nroots();
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<Elt> unif(0, F.q() - 1);
  if (static_cast<int>(H.size()) != l) throw NotSemisimple("toral subalgebra of the wrong dimension");
  for (auto& a : H)
    for (auto& b : H)
      if (!vzero(L.bracket(a, b))) throw NotSemisimple("fixed space is not abelian");

  // (b) simultaneous eigenspaces of ad(h) for h in H
  std::vector<Vec> all;
  for (int i = 0; i < d; ++i) all.push_back(L.basis(i));
  std::vector<Sub> parts{make_sub(all, Fp)};
  std::vector<Mat> adH;
  for (auto& h : H) adH.push_back(L.ad(h));
  {
    // a random combination separates most lines at once
    Vec g(d, 0);
    for (auto& h : H) g = vadd(Fp, g, vscale(Fp, h, unif(rng)));
    std::vector<Sub> next;
    for (auto& [lam, sub] : split(parts[0], L.ad(g))) next.push_back(std::move(sub));
    parts = std::move(next);
  }
  for (auto& M : adH) {
    std::vector<Sub> next;
    for (auto& P : parts) {
      if (P.B.rows() == 1) {
        next.push_back(P);
        continue;
      }
      for (auto& [lam, sub] : split(P, M)) next.push_back(std::move(sub));
    }
    parts = std::move(next);
  }
  std::vector<Vec> lines;
  int zero_dim = 0;
  for (auto& P : parts) {
    // weight of this part
    bool zero = true;
    Vec v = P.B.row_vec(0);
    for (auto& M : adH)
      if (!vzero(v * M)) zero = false;
    if (zero) {
      zero_dim += P.B.rows();
      continue;
    }
    if (P.B.rows() != 1) throw NotSemisimple("root space of dimension > 1");
    lines.push_back(v);
  }
  if (zero_dim != l || static_cast<int>(lines.size()) != R) throw NotSemisimple("weight spaces do not match a Cartan decomposition");

  // functionals of each line on the H basis
  int nl = static_cast<int>(lines.size());
  std::vector<Vec> phi(nl, Vec(H.size()));
  for (int a = 0; a < nl; ++a) {
    int k = 0;
    while (!lines[a][k]) ++k;
    Elt inv = F.inv(lines[a][k]);
    for (size_t i = 0; i < H.size(); ++i) phi[a][i] = F.mul((lines[a] * adH[i])[k], inv);
  }
  std::map<Vec, int> by_phi;
  for (int a = 0; a < nl; ++a)
    if (!by_phi.emplace(phi[a], a).second) throw NotSemisimple("repeated root functional");

  // (c) labelling: images of the simple roots chosen by backtracking, everything else
  // determined additively; checked against the commutator graph
  std::vector<int> simple_img(l, -1);
  std::vector<int> label(R, -1);
  auto functional = [&](int r) {
    Vec f(H.size(), 0);
    for (int i = 0; i < l; ++i) {
      int c = rd.roots[r][i];
      if (!c) continue;
      Elt ce = F.from_int(c);
      for (size_t t = 0; t < H.size(); ++t) f[t] = F.add(f[t], F.mul(ce, phi[simple_img[i]][t]));
    }
    return f;
  };
  std::vector<std::vector<int>> supported(l);  // roots whose support max index is i
  for (int r = 0; r < R; ++r) {
    int mx = -1;
    for (int i = 0; i < l; ++i)
      if (rd.roots[r][i]) mx = i;
    supported[mx].push_back(r);
  }
  std::function<bool(int)> assign = [&](int k) -> bool {
    if (k == l) return true;
    for (int a = 0; a < nl; ++a) {
      bool used = false;
      for (int i = 0; i < k; ++i) used |= simple_img[i] == a;
      if (used) continue;
      simple_img[k] = a;
      bool ok = true;
      for (int r : supported[k]) {
        auto it = by_phi.find(functional(r));
        if (it == by_phi.end()) {
          ok = false;
          break;
        }
        label[r] = it->second;
      }
      // differences of simple roots are never roots
      for (int i = 0; ok && i < k; ++i) {
        Vec f(H.size());
        for (size_t t = 0; t < H.size(); ++t) f[t] = F.sub(phi[a][t], phi[simple_img[i]][t]);
        if (by_phi.count(f)) ok = false;
      }
      // sums with a simple root are roots exactly when the reference says so
      for (int i = 0; ok && i <= k; ++i)
        for (int kk = 0; ok && kk <= k; ++kk)
          for (int r : supported[kk]) {
            int s = rd.sum(r, rd.simple(i));
            Vec f = functional(r);
            for (size_t t = 0; t < H.size(); ++t) f[t] = F.add(f[t], phi[simple_img[i]][t]);
            if ((s >= 0) != (by_phi.count(f) > 0) && !vzero(f)) {
              ok = false;
              break;
            }
          }
      if (ok && assign(k + 1)) return true;
      simple_img[k] = -1;
    }
    return false;
  };
  if (!assign(0)) throw GraphMismatch("no labelling of the root lines");
  {
    std::vector<int> seen(nl, 0);
    for (int r = 0; r < R; ++r) {
      if (label[r] < 0 || seen[label[r]]++) throw GraphMismatch("labelling is not a bijection");
    }
    for (int r = 0; r < R; ++r)
      for (int t = r + 1; t < R; ++t) {
        bool ref = rd.sum(r, t) >= 0 || t == rd.neg(r);
        bool now = !vzero(L.bracket(lines[label[r]], lines[label[t]]));
        if (ref != now) throw GraphMismatch("commutator graphs differ");
      }
  }

  // (d) rescaling
  Mat K = L.killing_form();
  auto kform = [&](const Vec& x, const Vec& y) { return dot(Fp, x * K, y); };
  std::vector<Vec> eps(R);
  for (int i = 0; i < l; ++i) {
    int a = rd.simple(i), na = rd.neg(a);
    eps[a] = lines[label[a]];
    Vec m = lines[label[na]];
    Elt ref = K(L.pos(a), L.pos(na));
    Elt cur = kform(eps[a], m);
    if (!cur || !ref) throw NotSemisimple("degenerate invariant form on a root pair");
    eps[na] = vscale(Fp, m, F.div(ref, cur));
  }
  auto es = extraspecial_pairs(rd);
  for (int g = 0; g < rd.npos; ++g) {
    if (rd.height[g] == 1) continue;
    auto [r, t] = es.at(g);
    eps[g] = vscale(Fp, L.bracket(eps[r], eps[t]), F.inv(F.from_int(L.N(r, t))));
    int ng = rd.neg(g), nr = rd.neg(r), nt = rd.neg(t);
    eps[ng] = vscale(Fp, L.bracket(eps[nr], eps[nt]), F.inv(F.from_int(L.N(nr, nt))));
  }
  // Cartan: h'_i = sum_j (C^-1)_ij [e_j, e_-j]
  Mat C(Fp, l, l);
  for (int i = 0; i < l; ++i)
    for (int j = 0; j < l; ++j) C(i, j) = F.from_int(rd.cartan[i][j]);
  Mat Ci = inverse(C);
  std::vector<Vec> hs(l);
  for (int j = 0; j < l; ++j) hs[j] = L.bracket(eps[rd.simple(j)], eps[rd.neg(rd.simple(j))]);
  Mat P(Fp, d, d);
  for (int r = 0; r < R; ++r) P.set_row(L.pos(r), eps[r]);
  for (int i = 0; i < l; ++i) {
    Vec h(d, 0);
    for (int j = 0; j < l; ++j) h = vadd(Fp, h, vscale(Fp, hs[j], Ci(i, j)));
    P.set_row(L.cartan_pos(i), h);
  }
  ChevBasisChange out{P, std::vector<int>(R)};
  for (int r = 0; r < R; ++r) out.target_order[r] = label[r];
  return out;
}

}  // namespace lie
