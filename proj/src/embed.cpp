#include "lie/embed.hpp"

#include <unordered_set>

#include "json.hpp"

namespace lie {

Mat build_inverting_involution(const LieAlgebra& L, const Mat& s, const ChevBasisChange& change) {
  const Mat& P = change.matrix;
  Mat Pinv = inverse(P);
  if (!(P * s * Pinv).is_diagonal()) throw OrderingViolated("s is not diagonal in the adapted basis");
  Mat e = Pinv * chevalley_involution(L) * P;
  return e;
}

Mat CentralizerSpan::combine(const Vec& x) const {
  const auto& F = P.field();
  Mat acc(F, P.rows(), P.cols());
  for (size_t i = 0; i < basis.size(); ++i)
    if (x[i]) acc = axpy(acc, x[i], basis[i]);
  return Pinv * acc * P;
}

namespace {

// incremental echelon basis of sparse vectors
struct Echelon {
  FieldPtr F;
  std::vector<Vec> rows;
  std::vector<int> piv;
  std::vector<std::vector<int>> nz;

  bool add(Vec v) {
    const auto& f = *F;
    for (size_t k = 0; k < rows.size(); ++k) {
      Elt c = v[piv[k]];
      if (!c) continue;
      Elt m = f.neg(c);
      for (int j : nz[k]) v[j] = f.add(v[j], f.mul(m, rows[k][j]));
    }
    int p = -1;
    for (size_t j = 0; j < v.size(); ++j)
      if (v[j]) {
        p = static_cast<int>(j);
        break;
      }
    if (p < 0) return false;
    Elt inv = f.inv(v[p]);
    std::vector<int> idx;
    for (size_t j = 0; j < v.size(); ++j)
      if (v[j]) {
        v[j] = f.mul(v[j], inv);
        idx.push_back(static_cast<int>(j));
      }
    rows.push_back(std::move(v));
    piv.push_back(p);
    nz.push_back(std::move(idx));
    return true;
  }
};

}  // namespace

CentralizerSpan centralizer_span(const Mat& P, const std::function<Mat(std::mt19937_64&)>& sample,
                                 std::uint64_t seed, const std::string& source, int stable_rounds) {
  CentralizerSpan out;
  out.P = P;
  out.Pinv = inverse(P);
  out.source = source;
  std::mt19937_64 rng(seed);
  Echelon ech{P.field(), {}, {}, {}};
  int quiet = 0;
  while (quiet < stable_rounds) {
    Mat g = sample(rng);
    ++out.samples;
    if (ech.add(g.data())) {
      out.basis.push_back(g);
      quiet = 0;
    } else {
      ++quiet;
    }
  }
  return out;
}

CentralizerSpan torus_centralizer_span(const AdjointGroup& G, const Mat& P, const std::vector<int>& fixed_roots,
                                       std::uint64_t seed) {
  const auto& F = *G.field();
  int l = G.rank();
  std::vector<Mat> xs;
  for (int r : fixed_roots) xs.push_back(G.x(r, 1));
  auto sample = [&](std::mt19937_64& rng) {
    std::uniform_int_distribution<Elt> nz(1, F.q() - 1);
    auto torus = [&]() {
      Vec v(l);
      for (auto& x : v) x = nz(rng);
      return G.torus(v);
    };
    Mat g = torus();
    if (xs.empty()) return g;
    int len = 2 + static_cast<int>(rng() % 4);
    for (int k = 0; k < len; ++k) {
      g = g * xs[rng() % xs.size()];
      g = g * torus();
    }
    return g;
  };
  std::string src = fixed_roots.empty() ? "adapted torus" : "adapted torus and root A1";
  return centralizer_span(P, sample, seed, src);
}

int span_dimension_bound(const std::map<int, int>& decomposition, int dim) {
  int total = 0, bound = 1;
  for (auto [j, n] : decomposition) {
    if (j < 0 || n < 0) throw InconsistentDecomposition("negative entry");
    total += (j == 0 ? 1 : j) * n;
    if (j > 0) bound += n * j * j;
  }
  if (total != dim)
    throw InconsistentDecomposition("modules sum to " + std::to_string(total) + ", not " + std::to_string(dim));
  return bound;
}

std::map<int, int> module_decomposition(const RootDatum& rd, const std::vector<int>& fixed_roots) {
  std::map<int, int> out;
  if (fixed_roots.empty()) {
    out[0] = rd.rank;
    out[1] = rd.nroots();
    return out;
  }
  int r = fixed_roots[0];
  for (int x : fixed_roots)
    if (x != r && x != rd.neg(r)) throw InconsistentDecomposition("more than one fixed root pair");
  out[0] = rd.rank - 1;
  out[3] = 1;
  std::vector<char> seen(rd.nroots(), 0);
  seen[r] = seen[rd.neg(r)] = 1;
  for (int b = 0; b < rd.nroots(); ++b) {
    if (seen[b]) continue;
    // walk to the bottom of the r-string, then count
    int bottom = b;
    while (true) {
      int d = rd.sum(bottom, rd.neg(r));
      if (d < 0) break;
      bottom = d;
    }
    int len = 0;
    for (int c = bottom; c >= 0; c = rd.sum(c, r)) {
      seen[c] = 1;
      ++len;
    }
    out[len]++;
  }
  return out;
}

TuSystem assemble_tu_system(const Mat& u, const Mat& e, const CentralizerSpan& span,
                            const std::vector<Vec>& fixed_vectors) {
  const auto& F = *u.field();
  int d = u.rows();
  int n = static_cast<int>(span.basis.size());
  Mat uinv = inverse(u);
  Mat Q1 = span.P * e * u, Q2 = span.P * e;
  Mat eu = e * u;
  TuSystem sys;
  sys.equations = static_cast<int>(fixed_vectors.size()) * d;
  sys.unknowns = n;
  sys.matrix = Mat(u.field(), sys.equations, n);
  for (size_t f = 0; f < fixed_vectors.size(); ++f) {
    Vec a = (fixed_vectors[f] * eu) * span.Pinv;
    Vec b = (fixed_vectors[f] * uinv) * span.Pinv;
    for (int i = 0; i < n; ++i) {
      Vec w = vsub(u.field(), (a * span.basis[i]) * Q1, (b * span.basis[i]) * Q2);
      for (int j = 0; j < d; ++j) sys.matrix(int(f) * d + j, i) = w[j];
    }
  }
  (void)F;
  return sys;
}

bool tu_condition_holds(const Mat& u, const Mat& e, const Mat& c, const std::vector<Vec>& fixed_vectors) {
  Mat m = e * u * c * e * u - inverse(u) * c * e;
  for (auto& v : fixed_vectors)
    if (!vzero(v * m)) return false;
  return true;
}

std::vector<int> fixed_roots_of(const LieAlgebra& L, const Mat& ds) {
  std::vector<int> out;
  for (int r = 0; r < L.rd().nroots(); ++r)
    if (ds(L.pos(r), L.pos(r)) == 1) out.push_back(r);
  return out;
}

std::vector<Vec> adapted_fixed_vectors(const LieAlgebra& L, const Mat& P, const std::vector<int>& fixed_roots) {
  const auto& rd = L.rd();
  int l = rd.rank;
  auto F = L.field();
  // coefficient vectors c with [sum_i c_i h_i, e_r] = 0 for the fixed roots
  std::vector<Vec> coeffs;
  if (fixed_roots.empty()) {
    for (int i = 0; i < l; ++i) {
      Vec c(l, 0);
      c[i] = 1;
      coeffs.push_back(c);
    }
  } else {
    Mat A(F, l, static_cast<int>(fixed_roots.size()));
    for (size_t k = 0; k < fixed_roots.size(); ++k) {
      Vec er(L.dim(), 0);
      er[L.pos(fixed_roots[k])] = 1;
      for (int i = 0; i < l; ++i) {
        Vec h(L.dim(), 0);
        h[L.cartan_pos(i)] = 1;
        A(i, int(k)) = L.bracket(h, er)[L.pos(fixed_roots[k])];
      }
    }
    coeffs = left_kernel(A);
  }
  std::vector<Vec> out;
  for (auto& c : coeffs) {
    Vec v(L.dim(), 0);
    for (int i = 0; i < l; ++i)
      if (c[i]) v = vadd(F, v, vscale(F, P.row_vec(L.cartan_pos(i)), c[i]));
    out.push_back(v);
  }
  return out;
}

bool CaseReport::ok() const {
  for (auto& [k, v] : checks)
    if (!v) return false;
  return !checks.empty();
}

namespace {

nlohmann::json mat_json(const Mat& m) {
  std::vector<std::vector<std::string>> rows;
  const auto& F = *m.field();
  for (int i = 0; i < m.rows(); ++i) {
    std::vector<std::string> r;
    for (int j = 0; j < m.cols(); ++j) r.push_back(F.to_string(m(i, j)));
    rows.push_back(r);
  }
  return rows;
}

}  // namespace

std::string CaseReport::json(bool with_matrices) const {
  nlohmann::json j;
  j["q"] = q;
  j["group"] = type;
  j["field"] = field;
  j["seed"] = seed;
  j["dims"] = dims;
  j["checks"] = checks;
  j["info"] = info;
  j["ok"] = ok();
  j["seconds"] = seconds;
  j["solutions"] = solutions.size();
  nlohmann::json sols = nlohmann::json::array();
  for (auto& s : solutions) {
    nlohmann::json js;
    js["membership"] = s.member;
    nlohmann::json rel;
    for (auto& c : s.relations.checks) rel[c.name] = c.pass;
    js["relations"] = rel;
    js["traces"] = s.traces;
    if (with_matrices) js["t"] = mat_json(s.t);
    sols.push_back(js);
  }
  j["solution_details"] = sols;
  if (with_matrices && u.rows()) {
    j["u"] = mat_json(u);
    j["s"] = mat_json(s);
    j["e"] = mat_json(e);
  }
  return j.dump(2);
}

BorelTable::BorelTable(const std::vector<Mat>& elements, std::uint64_t seed) : elems_(elements) {
  const auto& F = elements.at(0).field();
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<Elt> any(0, F->q() - 1);
  probe_.resize(elements[0].rows());
  for (auto& x : probe_) x = any(rng);
  for (size_t i = 0; i < elems_.size(); ++i) table_[probe_ * elems_[i]].push_back(static_cast<int>(i));
}

bool BorelTable::contains(const Mat& g) const {
  auto it = table_.find(probe_ * g);
  if (it == table_.end()) return false;
  for (int i : it->second)
    if (elems_[i] == g) return true;
  return false;
}

bool BorelTable::in_double_coset(const Mat& g, const Mat& t) const {
  Mat tinv = inverse(t);
  Vec p1 = probe_ * tinv;
  for (const auto& b : elems_) {
    Vec key = (p1 * b) * g;
    auto it = table_.find(key);
    if (it == table_.end()) continue;
    Mat cand = tinv * b * g;
    for (int i : it->second)
      if (elems_[i] == cand) return true;
  }
  return false;
}

std::vector<Mat> enumerate_group(const std::vector<Mat>& gens, size_t limit) {
  const auto& F = gens.at(0).field();
  int n = gens[0].rows();
  std::mt19937_64 rng(99);
  std::uniform_int_distribution<Elt> any(0, F->q() - 1);
  Vec probe(n);
  for (auto& x : probe) x = any(rng);
  std::map<Vec, std::vector<size_t>> seen;
  std::vector<Mat> out{Mat::identity(F, n)};
  seen[probe].push_back(0);
  for (size_t i = 0; i < out.size(); ++i) {
    for (auto& g : gens) {
      Mat h = out[i] * g;
      Vec key = probe * h;
      auto& bucket = seen[key];
      bool dup = false;
      for (size_t k : bucket)
        if (out[k] == h) dup = true;
      if (dup) continue;
      bucket.push_back(out.size());
      out.push_back(std::move(h));
      if (out.size() > limit) throw SearchFailed("group larger than " + std::to_string(limit));
    }
  }
  return out;
}

std::string trace_str(const FieldPtr& F, Elt x) {
  if (F->in_prime_subfield(x)) {
    long long v = x;
    if (v > static_cast<long long>(F->p() / 2)) v -= F->p();
    return std::to_string(v);
  }
  return F->to_string(x);
}

CaseReport solve_case(int q, const DriverOptions& o) {
  switch (q) {
    case 25:
      return solve_case_25(o);
    case 27:
      return solve_case_27(o);
    case 37:
      return solve_case_37(o);
    case 29:
      return solve_case_29(o);
    default:
      throw UnsupportedQ(std::to_string(q));
  }
}

}  // namespace lie
