#include "lie/torus.hpp"

#include <numeric>
#include <random>
#include <unordered_map>

namespace lie {

Perm perm_inverse(const Perm& p) {
  Perm q(p.size());
  for (size_t i = 0; i < p.size(); ++i) q[p[i]] = static_cast<int>(i);
  return q;
}

int perm_order(const Perm& p) { return WeylGroup::perm_order(p); }

NElem nelem_identity(const AdjointGroup& G) {
  NElem a;
  a.perm.resize(G.L().rd().nroots());
  std::iota(a.perm.begin(), a.perm.end(), 0);
  a.scal.assign(a.perm.size(), 1);
  a.cartan = Mat::identity(G.field(), G.rank());
  return a;
}

NElem nelem_of(const AdjointGroup& G, const Mat& g) {
  auto p = G.root_perm(g);
  if (!p) throw NotNormalizing("element is not monomial on root lines");
  const auto& L = G.L();
  int l = G.rank();
  NElem a;
  a.perm = *p;
  a.scal.resize(p->size());
  for (size_t r = 0; r < p->size(); ++r) a.scal[r] = g(L.pos(int(r)), L.pos((*p)[r]));
  a.cartan = Mat(G.field(), l, l);
  for (int i = 0; i < l; ++i)
    for (int j = 0; j < G.dim(); ++j) {
      Elt v = g(L.cartan_pos(i), j);
      int c = j - L.cartan_pos(0);
      if (c >= 0 && c < l)
        a.cartan(i, c) = v;
      else if (v)
        throw NotNormalizing("Cartan block not preserved");
    }
  return a;
}

NElem nelem_mul(const FieldPtr& F, const NElem& a, const NElem& b) {
  NElem c;
  size_t n = a.perm.size();
  c.perm.resize(n);
  c.scal.resize(n);
  for (size_t r = 0; r < n; ++r) {
    int m = a.perm[r];
    c.perm[r] = b.perm[m];
    c.scal[r] = F->mul(a.scal[r], b.scal[m]);
  }
  c.cartan = a.cartan * b.cartan;
  return c;
}

NElem nelem_pow(const FieldPtr& F, const NElem& a, std::uint64_t e) {
  NElem r;
  r.perm.resize(a.perm.size());
  std::iota(r.perm.begin(), r.perm.end(), 0);
  r.scal.assign(a.perm.size(), 1);
  r.cartan = Mat::identity(F, a.cartan.rows());
  NElem b = a;
  while (e) {
    if (e & 1) r = nelem_mul(F, r, b);
    e >>= 1;
    if (e) b = nelem_mul(F, b, b);
  }
  return r;
}

bool nelem_is_identity(const NElem& a) {
  for (size_t r = 0; r < a.perm.size(); ++r)
    if (a.perm[r] != int(r) || a.scal[r] != 1) return false;
  return a.cartan.is_identity();
}

Mat nelem_mat(const AdjointGroup& G, const NElem& a) {
  const auto& L = G.L();
  Mat m(G.field(), G.dim(), G.dim());
  for (size_t r = 0; r < a.perm.size(); ++r) m(L.pos(int(r)), L.pos(a.perm[r])) = a.scal[r];
  for (int i = 0; i < G.rank(); ++i)
    for (int j = 0; j < G.rank(); ++j) m(L.cartan_pos(i), L.cartan_pos(j)) = a.cartan(i, j);
  return m;
}

std::uint64_t nelem_order(const FieldPtr& F, const NElem& a) {
  std::uint64_t m = perm_order(a.perm);
  NElem t = nelem_pow(F, a, m);
  if (!t.cartan.is_identity()) {
    // the Cartan block of a torus element is trivial; anything else is a bad input
    throw NotNormalizing("power of the Weyl order is not a torus element");
  }
  std::uint64_t o = 1;
  for (Elt v : t.scal) {
    std::uint64_t ov = F->order(v);
    o = o / gcd_u64(o, ov) * ov;
  }
  return m * o;
}

IMat conj_action(const RootDatum& rd, const Perm& p) {
  Perm pi = perm_inverse(p);
  int l = rd.rank;
  IMat n(l, IVec(l));
  for (int k = 0; k < l; ++k)
    for (int i = 0; i < l; ++i) n[k][i] = rd.roots[pi[rd.simple(k)]][i];
  return n;
}

std::vector<I64> torus_coords(const AdjointGroup& G, const Mat& t) {
  if (!t.is_diagonal()) throw NotNormalizing("not a torus element");
  const auto& F = *G.field();
  Vec v = G.torus_values(t);
  std::vector<I64> b(v.size());
  for (size_t i = 0; i < v.size(); ++i) b[i] = F.log(v[i]);
  return b;
}

Mat torus_from_coords(const AdjointGroup& G, const std::vector<I64>& b) {
  const auto& F = *G.field();
  Vec v(b.size());
  for (size_t i = 0; i < b.size(); ++i) v[i] = F.exp(static_cast<std::uint64_t>(mod(b[i], F.q() - 1)));
  return G.torus(v);
}

TorusLayer torus_layer(const AdjointGroup& G, std::uint64_t prime, int level) {
  const auto& F = *G.field();
  std::uint64_t pl = 1;
  for (int i = 0; i < level; ++i) pl *= prime;
  if ((F.q() - 1) % pl) throw FieldTooSmall(std::to_string(pl) + " does not divide " + std::to_string(F.q() - 1));
  TorusLayer L;
  L.prime = prime;
  L.level = level;
  Elt mu = F.exp((F.q() - 1) / pl);
  for (int i = 0; i < G.rank(); ++i) L.gens.push_back(G.h(i, mu));
  return L;
}

Mat action_on_torus_layer(const AdjointGroup& G, const Mat& s, const TorusLayer& layer) {
  if (layer.level != 1) throw NotNormalizing("only the first layer is read over GF(prime)");
  const auto& F = *G.field();
  const auto& L = G.L();
  const auto& rd = L.rd();
  auto Fl = Field::prime(static_cast<std::uint32_t>(layer.prime));
  std::uint64_t step = (F.q() - 1) / layer.prime;
  int l = G.rank(), nr = rd.nroots();
  Mat D(Fl, l, nr);
  for (int j = 0; j < l; ++j)
    for (int r = 0; r < nr; ++r) D(j, r) = Fl->from_int(rd.pairing_simple(r, j));
  Mat sinv = inverse(s);
  Mat out(Fl, l, l);
  for (int i = 0; i < l; ++i) {
    Mat c = sinv * layer.gens[i] * s;
    if (!c.is_diagonal()) throw NotNormalizing("conjugate of a layer generator is not diagonal");
    Vec rhs(nr);
    for (int r = 0; r < nr; ++r) {
      Elt v = c(L.pos(r), L.pos(r));
      std::uint64_t lg = F.log(v);
      if (lg % step) throw NotNormalizing("conjugate leaves the layer");
      rhs[r] = static_cast<Elt>((lg / step) % layer.prime);
    }
    auto a = solve_left(D, rhs);
    if (!a) throw NotNormalizing("conjugate outside the span of the layer");
    out.set_row(i, *a);
  }
  return out;
}

Vec find_u_exponents(const Mat& sbar, const Poly& target) {
  auto R = rational_canonical_form(sbar);
  Poly want = target.monic();
  for (size_t b = 0; b < R.blocks.size(); ++b) {
    if (R.blocks[b].monic() != want) continue;
    Vec y(sbar.rows(), 0);
    y[R.offsets[b]] = 1;
    Vec z = y * R.conj;
    if (!vzero(z * eval_poly(want, sbar))) continue;
    return z;
  }
  throw BlockNotFound(want.to_string());
}

Mat layer_element(const AdjointGroup& G, const TorusLayer& layer, const Vec& z) {
  const auto& F = *G.field();
  Mat u = G.identity();
  for (size_t j = 0; j < z.size(); ++j) {
    if (!z[j]) continue;
    for (int p = 0; p < G.dim(); ++p) u(p, p) = F.mul(u(p, p), F.pow(layer.gens[j](p, p), z[j]));
  }
  return u;
}

Mat find_u(const AdjointGroup& G, const Mat& sbar, const TorusLayer& layer, const Poly& target) {
  return layer_element(G, layer, find_u_exponents(sbar, target));
}

namespace {

I64Mat to_i64(const IMat& m) {
  I64Mat o(m.size());
  for (size_t i = 0; i < m.size(); ++i) o[i].assign(m[i].begin(), m[i].end());
  return o;
}

I64Mat mul(const I64Mat& a, const I64Mat& b) {
  size_t n = a.size(), k = b.size(), m = b[0].size();
  I64Mat c(n, std::vector<I64>(m, 0));
  for (size_t i = 0; i < n; ++i)
    for (size_t t = 0; t < k; ++t)
      for (size_t j = 0; j < m; ++j) c[i][j] += a[i][t] * b[t][j];
  return c;
}

// exact determinant by fraction-free elimination
std::int64_t int_det(I64Mat m) {
  int n = static_cast<int>(m.size());
  __int128 prev = 1;
  std::vector<std::vector<__int128>> a(n, std::vector<__int128>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a[i][j] = m[i][j];
  int sign = 1;
  for (int k = 0; k < n - 1; ++k) {
    if (a[k][k] == 0) {
      int sw = -1;
      for (int i = k + 1; i < n; ++i)
        if (a[i][k] != 0) sw = i;
      if (sw < 0) return 0;
      std::swap(a[k], a[sw]);
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i)
      for (int j = k + 1; j < n; ++j) a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
    prev = a[k][k];
  }
  return static_cast<std::int64_t>(sign * a[n - 1][n - 1]);
}

}  // namespace

TorusCentralizer centralizer_in_torus_layers(const WeylGroup& W, const Perm& w,
                                             const std::vector<std::uint64_t>& primes) {
  if (W.fixed_space_dim(w) != 0) throw NotFinite("Weyl image has fixed vectors on the reflection representation");
  const auto& rd = W.datum();
  int l = rd.rank;
  I64Mat M = to_i64(conj_action(rd, w));
  for (int i = 0; i < l; ++i) M[i][i] -= 1;
  I64Mat K(l, std::vector<I64>(l));
  for (int k = 0; k < l; ++k)
    for (int i = 0; i < l; ++i) K[k][i] = rd.pairing_simple(rd.simple(k), i);
  I64Mat MK = mul(M, K);
  TorusCentralizer out;
  for (auto p : primes) {
    LayerCount lc;
    lc.prime = p;
    I64 n = 1;
    int flat = 0;
    for (int j = 1; j <= 40 && n <= (I64(1) << 30) / I64(p); ++j) {
      n *= static_cast<I64>(p);
      Count c = count_kernel(MK, n) / count_kernel(K, n);
      lc.counts.push_back(static_cast<std::uint64_t>(c));
      if (lc.counts.size() > 1 && lc.counts.back() == lc.counts[lc.counts.size() - 2]) {
        if (++flat == 2) break;
      } else {
        flat = 0;
      }
    }
    lc.stable = lc.counts.back();
    out.order *= lc.stable;
    out.layers.push_back(lc);
  }
  std::int64_t d = int_det(M);
  out.det_check = d < 0 ? -d : d;
  return out;
}

WeylLift random_weyl_lift(const AdjointGroup& G, int order, std::uint64_t seed,
                          const std::function<bool(const WeylLift&)>& accept, int max_tries) {
  const auto& F = G.field();
  int l = G.rank();
  std::vector<NElem> ns;
  for (int i = 0; i < l; ++i) ns.push_back(nelem_of(G, G.n(G.L().rd().simple(i))));
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> pick(0, l - 1);
  for (int tries = 1; tries <= max_tries; ++tries) {
    WeylLift c;
    c.elem = nelem_identity(G);
    int len = 40 + static_cast<int>(rng() % 20);
    for (int k = 0; k < len; ++k) {
      int i = pick(rng);
      c.word.push_back(i);
      c.elem = nelem_mul(F, c.elem, ns[i]);
    }
    if (perm_order(c.elem.perm) != order) continue;
    if (nelem_order(F, c.elem) != static_cast<std::uint64_t>(order)) continue;
    c.mat = nelem_mat(G, c.elem);
    c.seed = seed;
    c.tries = tries;
    if (accept && !accept(c)) continue;
    return c;
  }
  throw SearchFailed("no lift of order " + std::to_string(order));
}

namespace {

struct PermHash {
  size_t operator()(const Perm& p) const {
    size_t h = 1469598103934665603ull;
    for (int x : p) h = (h ^ static_cast<size_t>(x)) * 1099511628211ull;
    return h;
  }
};

// is b (mod n) in the span of the columns cols?
std::optional<std::vector<I64>> in_span(const std::vector<std::vector<I64>>& cols, const std::vector<I64>& b, I64 n) {
  int l = static_cast<int>(b.size());
  I64Mat A(l, std::vector<I64>(cols.size()));
  for (int i = 0; i < l; ++i)
    for (size_t j = 0; j < cols.size(); ++j) A[i][j] = cols[j][i];
  auto sol = solve_congruence(A, b, n);
  return sol.particular;
}

std::vector<I64> apply(const IMat& N, const std::vector<I64>& b, I64 n) {
  std::vector<I64> o(b.size(), 0);
  for (size_t k = 0; k < b.size(); ++k) {
    I64 s = 0;
    for (size_t i = 0; i < b.size(); ++i) s += N[k][i] * b[i];
    o[k] = mod(s, n);
  }
  return o;
}

}  // namespace

NormalizerResult normalizer_in_torus_normalizer(const WeylGroup& W, const AdjointGroup& G,
                                                const std::vector<Mat>& a_gens, const Mat& s) {
  const auto& F = G.field();
  const auto& rd = G.L().rd();
  int l = rd.rank;
  I64 n = F->q() - 1;
  NormalizerResult res;

  std::vector<std::vector<I64>> A;
  for (auto& a : a_gens) A.push_back(torus_coords(G, a));
  I64Mat Am(l, std::vector<I64>(A.size()));
  for (int i = 0; i < l; ++i)
    for (size_t j = 0; j < A.size(); ++j) Am[i][j] = A[j][i];
  Count a_order = A.empty() ? 1 : Count(1);
  for (size_t j = 0; j < A.size(); ++j) a_order *= Count(n);
  Count a_kernel = A.empty() ? 1 : count_kernel(Am, n);
  a_order /= a_kernel;

  NElem se = nelem_of(G, s);
  int k = perm_order(se.perm);
  if (nelem_order(F, se) != static_cast<std::uint64_t>(k)) throw NotNormalizing("<s> meets the torus");
  res.b_order = a_order * Count(k);

  std::unordered_map<Perm, int, PermHash> wpow;
  {
    Perm p(se.perm.size());
    std::iota(p.begin(), p.end(), 0);
    for (int j = 0; j < k; ++j) {
      wpow[p] = j;
      Perm q(p.size());
      for (size_t r = 0; r < p.size(); ++r) q[r] = se.perm[p[r]];
      p = q;
    }
  }
  const Perm& w = se.perm;
  std::vector<std::pair<std::vector<int>, int>> cand;  // word, exponent j
  W.enumerate([&](const Perm& v, const std::vector<int>& word) {
    Perm vi = perm_inverse(v);
    Perm c(v.size());
    for (size_t r = 0; r < v.size(); ++r) c[r] = v[w[vi[r]]];
    auto it = wpow.find(c);
    if (it != wpow.end()) cand.emplace_back(word, it->second);
  });
  res.weyl_candidates = static_cast<int>(cand.size());

  std::vector<NElem> ns;
  for (int i = 0; i < l; ++i) ns.push_back(nelem_of(G, G.n(rd.simple(i))));
  IMat Ns = conj_action(rd, w);
  Mat sinv = inverse(s);

  Count total = 0;
  for (auto& [word, j] : cand) {
    NElem nv = nelem_identity(G);
    for (int i : word) nv = nelem_mul(F, nv, ns[i]);
    IMat Nv = conj_action(rd, nv.perm);
    bool keeps_a = true;
    for (auto& a : A)
      if (!in_span(A, apply(Nv, a, n), n)) keeps_a = false;
    if (!keeps_a) continue;
    // tau = s^-j n_v^-1 s n_v
    NElem nvinv = nelem_pow(F, nv, nelem_order(F, nv) - 1);
    NElem tau = nelem_mul(F, nelem_mul(F, nelem_pow(F, se, (k - j) % k), nvinv), nelem_mul(F, se, nv));
    Mat taum = nelem_mat(G, tau);
    auto tc = torus_coords(G, taum);
    // N_v (1 - N_s) t - A lambda = -tau
    I64Mat sys(l, std::vector<I64>(l + A.size(), 0));
    for (int r = 0; r < l; ++r) {
      for (int c = 0; c < l; ++c) {
        I64 v = 0;
        for (int m = 0; m < l; ++m) v += Nv[r][m] * ((m == c ? 1 : 0) - Ns[m][c]);
        sys[r][c] = mod(v, n);
      }
      for (size_t c = 0; c < A.size(); ++c) sys[r][l + c] = mod(-A[c][r], n);
    }
    std::vector<I64> rhs(l);
    for (int r = 0; r < l; ++r) rhs[r] = mod(-tc[r], n);
    auto sol = solve_congruence(sys, rhs, n);
    if (!sol.particular) continue;
    Count nt = sol.count / a_kernel;
    total += nt;

    auto check = [&](const std::vector<I64>& tcoords) -> std::optional<Mat> {
      Mat x = torus_from_coords(G, tcoords) * nelem_mat(G, nv);
      Mat xi = inverse(x);
      for (auto& a : a_gens) {
        Mat c = xi * a * x;
        if (!c.is_diagonal() || !in_span(A, torus_coords(G, c), n)) return std::nullopt;
      }
      Mat y = power(sinv, j) * xi * s * x;
      if (!y.is_diagonal() || !in_span(A, torus_coords(G, y), n)) return std::nullopt;
      return x;
    };
    std::vector<I64> t0(sol.particular->begin(), sol.particular->begin() + l);
    bool in_b = wpow.count(nv.perm) > 0;
    if (!in_b) {
      auto x = check(t0);
      if (!x) throw NotNormalizing("computed normalizer element failed the matrix check");
      res.extra_gens.push_back(*x);
    } else if (word.empty()) {
      // torus part: kernel generators whose t is not already in A
      for (auto& g : sol.kernel_gens) {
        std::vector<I64> tg(g.begin(), g.begin() + l);
        if (in_span(A, tg, n)) continue;
        bool dup = false;
        for (auto& x : res.extra_gens) {
          auto xc = torus_coords(G, x);
          std::vector<I64> d(l);
          for (int i = 0; i < l; ++i) d[i] = mod(tg[i] - xc[i], n);
          if (in_span(A, d, n)) dup = true;
        }
        if (dup) continue;
        auto x = check(tg);
        if (!x) throw NotNormalizing("computed torus element failed the matrix check");
        res.extra_gens.push_back(*x);
      }
    }
  }
  res.order = total;
  res.index = static_cast<std::uint64_t>(total / res.b_order);
  return res;
}

}  // namespace lie
