#include <array>
#include <atomic>
#include <chrono>
#include <iostream>
#include <mutex>
#include <set>
#include <unordered_map>
#include <thread>

#include "lie/embed.hpp"

namespace lie {

namespace {

using Clock = std::chrono::steady_clock;

void say(const DriverOptions& o, const std::string& s) {
  if (o.verbose) std::cerr << "  " << s << std::endl;
}

struct Setup {
  std::shared_ptr<const LieAlgebra> L;
  std::unique_ptr<AdjointGroup> G;
  std::unique_ptr<WeylGroup> W;
  WeylLift lift;
  TorusLayer layer;
  Mat sbar, u, s;
  ChevBasisChange change;
  Mat P, Pinv, ds, e;
};

// lift of order (q-1)/2 whose layer action carries a block with minimal polynomial target
Setup borel_setup(const std::string& type, FieldPtr F, int order, std::uint64_t ell, const Poly& target,
                  std::uint64_t seed, CaseReport& rep, const DriverOptions& o) {
  Setup S;
  S.L = build_lie_algebra(roots_from_dynkin(type), F);
  S.G = std::make_unique<AdjointGroup>(S.L);
  S.W = std::make_unique<WeylGroup>(S.L->rd());
  S.layer = torus_layer(*S.G, ell);
  S.lift = random_weyl_lift(*S.G, order, seed, [&](const WeylLift& c) {
    try {
      find_u_exponents(action_on_torus_layer(*S.G, c.mat, S.layer), target);
      return true;
    } catch (const BlockNotFound&) {
      return false;
    }
  });
  S.s = S.lift.mat;
  S.sbar = action_on_torus_layer(*S.G, S.s, S.layer);
  S.u = find_u(*S.G, S.sbar, S.layer, target);
  rep.dims["s_search_tries"] = S.lift.tries;
  rep.dims["s_order"] = static_cast<long long>(order_dividing(S.s, 2 * order));
  rep.dims["s_weyl_order"] = perm_order(S.lift.elem.perm);
  say(o, "s found after " + std::to_string(S.lift.tries) + " tries");
  return S;
}

void adapt(Setup& S, std::uint64_t seed, CaseReport& rep, const DriverOptions& o) {
  auto t0 = Clock::now();
  S.change = adapted_chevalley_basis(*S.L, S.s, seed);
  S.P = S.change.matrix;
  S.Pinv = inverse(S.P);
  S.ds = S.P * S.s * S.Pinv;
  S.e = build_inverting_involution(*S.L, S.s, S.change);
  rep.checks["e_involution"] = (S.e * S.e).is_identity();
  rep.checks["e_inverts_s"] = S.e * S.s * S.e == inverse(S.s);
  rep.checks["e_member"] = S.G->membership(S.e);
  rep.checks["adapted_basis_member"] = S.G->membership(S.P);
  rep.dims["fixed_space"] = static_cast<long long>(fixed_space(S.s).size());
  say(o, "adapted basis in " +
             std::to_string(std::chrono::duration<double>(Clock::now() - t0).count()) + " s");
}

std::string field_name(const FieldPtr& F) { return F->name(); }

void finish_solution(const Setup& S, int q, const Mat& t, CaseReport& rep) {
  SolutionInfo si;
  si.t = t;
  si.member = S.G->membership(t);
  si.relations = verify_presentation(q, S.u, S.s, t);
  si.traces["t"] = trace_str(S.L->field(), t.trace());
  rep.solutions.push_back(std::move(si));
}

}  // namespace

CaseReport solve_case_25(const DriverOptions& o) {
  auto start = Clock::now();
  CaseReport rep;
  rep.q = 25;
  rep.type = "F4";
  rep.seed = o.seed ? o.seed : 1;
  auto F = Field::prime(61);
  rep.field = field_name(F);
  auto F5 = Field::prime(5);
  Poly mu = Poly::from_ints(F5, {4, 3, 1});
  Setup S = borel_setup("F4", F, 12, 5, mu, rep.seed, rep, o);
  const auto& G = *S.G;
  rep.checks["borel_relations"] = verify_relations(borel_relations(25), S.u, S.s, G.identity()).ok();
  rep.checks["u_s_member"] = G.membership(S.u) && G.membership(S.s);

  auto C = centralizer_in_torus_layers(*S.W, S.lift.elem.perm, {2, 3});
  rep.dims["torus_centralizer"] = static_cast<long long>(C.order);
  rep.checks["torus_centralizer_trivial"] = C.order == 1 && C.det_check == 1;

  adapt(S, rep.seed, rep, o);
  auto fr = fixed_roots_of(*S.L, S.ds);
  auto span = torus_centralizer_span(G, S.P, fr, rep.seed);
  int bound = span_dimension_bound(module_decomposition(S.L->rd(), fr), G.dim());
  rep.dims["span"] = static_cast<long long>(span.basis.size());
  rep.dims["span_bound"] = bound;
  rep.checks["span_meets_bound"] = static_cast<int>(span.basis.size()) == bound;

  auto fixed = adapted_fixed_vectors(*S.L, S.P, fr);
  auto sys = assemble_tu_system(S.u, S.e, span, fixed);
  auto ker = kernel(sys.matrix);
  rep.dims["equations"] = sys.equations;
  rep.dims["unknowns"] = sys.unknowns;
  rep.dims["nullspace"] = static_cast<long long>(ker.size());
  rep.checks["nullspace_dim_1"] = ker.size() == 1;
  if (ker.size() != 1) {
    rep.seconds = std::chrono::duration<double>(Clock::now() - start).count();
    return rep;
  }
  Mat m0 = span.combine(ker[0]);
  rep.checks["tu_recheck"] = tu_condition_holds(S.u, S.e, m0, fixed);

  // ad(a) m0 = r m0 ad(a m0) for r m0 to be an automorphism
  const auto& Fr = *F;
  std::optional<Elt> r;
  {
    const auto& a = G.generators()[0];
    int p = 0;
    while (!a[p]) ++p;
    Mat lhs = S.L->ad(a) * m0;
    Mat rhs = m0 * S.L->ad(m0.row_vec(p));
    for (size_t k = 0; k < lhs.data().size() && !r; ++k)
      if (rhs.data()[k]) r = Fr.div(lhs.data()[k], rhs.data()[k]);
  }
  if (!r || !G.membership(scale(m0, *r))) throw NoScalarFound("no scalar multiple of m0 lies in the group");
  rep.info["r"] = Fr.to_string(*r);
  Mat t = scale(m0, *r) * S.e;
  finish_solution(S, 25, t, rep);
  auto& sol = rep.solutions.back();
  sol.traces["u"] = trace_str(F, S.u.trace());
  rep.checks["t_member"] = sol.member;
  rep.checks["presentation"] = sol.relations.ok();
  rep.checks["trace_t_minus4"] = S.u.field()->from_int(-4) == t.trace();
  rep.checks["trace_u_2"] = S.u.trace() == 2;
  rep.u = S.u;
  rep.s = S.s;
  rep.e = S.e;
  rep.seconds = std::chrono::duration<double>(Clock::now() - start).count();
  return rep;
}

}  // namespace lie


namespace lie {

namespace {

double since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

// run body(i) for i in [0, n) on o.threads workers
void parallel_for(int threads, std::uint64_t n, const std::function<void(std::uint64_t, int)>& body) {
  threads = std::max(1, threads);
  std::atomic<std::uint64_t> next{0};
  auto work = [&](int w) {
    for (std::uint64_t i; (i = next.fetch_add(1)) < n;) body(i, w);
  };
  std::vector<std::thread> pool;
  for (int w = 1; w < threads; ++w) pool.emplace_back(work, w);
  work(0);
  for (auto& th : pool) th.join();
}

// order of g in PSL2, g a 2x2 reference image
int psl_order(const Mat& g) {
  Mat x = g;
  const auto& F = g.field();
  for (int k = 1; k < 200; ++k) {
    if (x.is_scalar() && (x(0, 0) == 1 || x(0, 0) == F->neg(1))) return k;
    x = x * g;
  }
  return 0;
}

struct Word {
  int a = 0, b = 0;  // t u^a s^b
};

// first t u^a s^b of the given order in the reference images, in order of (b, a)
std::vector<Word> words_of_order(const ReferenceImages& R, int q, int order) {
  std::vector<Word> out;
  int k = (q - 1) / 2;
  Mat sb = Mat::identity(R.F, 2);
  for (int b = 0; b < k; ++b, sb = sb * R.s) {
    Mat ua = Mat::identity(R.F, 2);
    for (int a = 0; a < q; ++a, ua = ua * R.u)
      if (psl_order(R.t * ua * sb) == order) out.push_back({a, b});
  }
  return out;
}

Mat word_mat(const Mat& t, const Mat& u, const Mat& s, Word w) { return t * power(u, w.a) * power(s, w.b); }

struct Prepared {
  CentralizerSpan span;
  std::vector<Vec> fixed;
  std::vector<Vec> ker;
};

Prepared prepare_system(Setup& S, CaseReport& rep, const DriverOptions& o) {
  auto t0 = Clock::now();
  adapt(S, rep.seed, rep, o);
  auto fr = fixed_roots_of(*S.L, S.ds);
  rep.dims["fixed_roots"] = static_cast<long long>(fr.size());
  auto deco = module_decomposition(S.L->rd(), fr);
  for (auto [j, m] : deco) rep.info["decomposition_" + std::to_string(j)] = std::to_string(m);
  int bound = span_dimension_bound(deco, S.G->dim());
  Prepared P;
  P.span = torus_centralizer_span(*S.G, S.P, fr, rep.seed);
  rep.dims["span"] = static_cast<long long>(P.span.basis.size());
  rep.dims["span_bound"] = bound;
  rep.checks["span_meets_bound"] = static_cast<int>(P.span.basis.size()) == bound;
  say(o, "span " + std::to_string(P.span.basis.size()) + " (bound " + std::to_string(bound) + ") at " +
             std::to_string(since(t0)) + " s");
  P.fixed = adapted_fixed_vectors(*S.L, S.P, fr);
  rep.dims["fixed_vectors"] = static_cast<long long>(P.fixed.size());
  bool fixed_ok = true;
  for (size_t i = 0; i < P.span.basis.size() && fixed_ok; ++i) {
    Mat c = P.span.element(static_cast<int>(i));
    for (auto& v : P.fixed) fixed_ok = fixed_ok && v * c == v;
  }
  rep.checks["fixed_vectors_fixed"] = fixed_ok;
  auto sys = assemble_tu_system(S.u, S.e, P.span, P.fixed);
  P.ker = kernel(sys.matrix);
  rep.dims["equations"] = sys.equations;
  rep.dims["unknowns"] = sys.unknowns;
  rep.dims["nullspace"] = static_cast<long long>(P.ker.size());
  say(o, "system " + std::to_string(sys.equations) + "x" + std::to_string(sys.unknowns) + ", nullspace " +
             std::to_string(P.ker.size()));
  return P;
}

// x in Z with x - offset a root of f, for monic quadratic f over the prime field
bool root_shift(const FieldPtr& F, Elt x, long long offset, long long c1, long long c0) {
  Elt z = F->sub(x, F->from_int(offset));
  return F->add(F->add(F->mul(z, z), F->mul(F->from_int(c1), z)), F->from_int(c0)) == 0;
}

// tr(u) - off and tr(u^2) - off are the two roots of X^2 - X - c
bool unipotent_traces_ok(const Mat& u, long long off, long long c) {
  const auto& F = u.field();
  Elt a = u.trace(), b = (u * u).trace();
  return root_shift(F, a, off, -1, -c) && root_shift(F, b, off, -1, -c) &&
         F->add(F->sub(a, F->from_int(off)), F->sub(b, F->from_int(off))) == 1;
}

// pairs (i, j) with t_i^x in H_j, H_j = B u B t_j B
std::vector<std::vector<bool>> fusion_table(const BorelTable& B, const std::vector<Mat>& ts, const Mat& x) {
  Mat xi = inverse(x);
  std::vector<std::vector<bool>> m(ts.size(), std::vector<bool>(ts.size()));
  for (size_t i = 0; i < ts.size(); ++i) {
    Mat c = xi * ts[i] * x;
    for (size_t j = 0; j < ts.size(); ++j) m[i][j] = B.in_double_coset(c, ts[j]);
  }
  return m;
}

std::vector<Mat> borel_elements(const Mat& u, const Mat& s, int p, int k) {
  std::vector<Mat> out;
  Mat ua = Mat::identity(u.field(), u.rows());
  for (int a = 0; a < p; ++a, ua = ua * u) {
    Mat x = ua;
    for (int b = 0; b < k; ++b, x = x * s) out.push_back(x);
  }
  return out;
}

Elt order3_trace(const Setup& S, const Mat& t, const ReferenceImages& R) {
  auto w3 = words_of_order(R, static_cast<int>(R.F->q()), 3);
  return word_mat(t, S.u, S.s, w3.at(0)).trace();
}

void common_traces(const Setup& S, SolutionInfo& si, const ReferenceImages& R) {
  const auto& F = S.L->field();
  si.traces["u"] = trace_str(F, S.u.trace());
  si.traces["u^2"] = trace_str(F, (S.u * S.u).trace());
  si.traces["order3"] = trace_str(F, order3_trace(S, si.t, R));
}

}  // namespace

CaseReport solve_case_37(const DriverOptions& o) {
  auto start = Clock::now();
  CaseReport rep;
  rep.q = 37;
  rep.type = "E7";
  rep.seed = o.seed ? o.seed : 1;
  auto F = Field::extension(73, 2);
  rep.field = field_name(F);
  auto R = reference_images(37);
  Setup S = borel_setup("E7", F, 18, 37, Poly::linear(R.F, 4), rep.seed, rep, o);
  const auto& G = *S.G;
  rep.checks["borel_relations"] = verify_relations(borel_relations(37), S.u, S.s, G.identity()).ok();
  rep.checks["u_s_member"] = G.membership(S.u) && G.membership(S.s);
  rep.checks["u_traces_z37"] = unipotent_traces_ok(S.u, 3, 9);

  auto C = centralizer_in_torus_layers(*S.W, S.lift.elem.perm, {2, 3});
  rep.dims["torus_centralizer"] = static_cast<long long>(C.order);
  rep.dims["torus_centralizer_det"] = C.det_check;
  rep.checks["torus_centralizer_2"] = C.order == 2 && C.det_check == 2;

  Prepared Pr = prepare_system(S, rep, o);
  rep.checks["span_127"] = Pr.span.basis.size() == 127;
  rep.checks["nullspace_dim_2"] = Pr.ker.size() == 2;
  if (Pr.ker.size() != 2) {
    rep.seconds = since(start);
    return rep;
  }
  Mat M = Pr.span.combine(Pr.ker[0]), N = Pr.span.combine(Pr.ker[1]);

  // det(a (M + i N)) = a^133 det(M + i N) = 1, and 133 is prime to q - 1
  auto t0 = Clock::now();
  Poly Pdet = det_pencil(M, N);
  const auto& Fr = *F;
  std::int64_t n = Fr.q() - 1;
  std::int64_t kinv = 1;
  while ((kinv * G.dim()) % n != 1) ++kinv;
  std::vector<std::optional<Mat>> found(Fr.q() + 1);
  std::atomic<int> filtered{0};
  parallel_for(o.threads, Fr.q() + 1, [&](std::uint64_t i, int w) {
    std::mt19937_64 rng(rep.seed * 7919 + i);
    Mat c;
    Elt d;
    if (i < Fr.q()) {
      d = Pdet.eval(static_cast<Elt>(i));
      if (!d) return;
      c = axpy(M, static_cast<Elt>(i), N);
    } else {
      d = det(N);
      if (!d) return;
      c = N;
    }
    (void)w;
    Elt a = Fr.pow(Fr.inv(d), kinv);
    c = scale(c, a);
    if (!G.quick_filter(c, rng)) return;
    ++filtered;
    if (G.membership(c)) found[i] = c;
  });
  std::vector<Mat> ts;
  for (auto& c : found)
    if (c) ts.push_back(*c * S.e);
  rep.dims["scan_filtered"] = filtered;
  rep.dims["solutions"] = static_cast<long long>(ts.size());
  rep.checks["two_solutions"] = ts.size() == 2;
  say(o, "determinant scan " + std::to_string(since(t0)) + " s, " + std::to_string(ts.size()) + " solutions");

  for (auto& t : ts) {
    finish_solution(S, 37, t, rep);
    common_traces(S, rep.solutions.back(), R);
  }
  bool all_ok = !ts.empty();
  for (auto& si : rep.solutions) {
    all_ok = all_ok && si.member && si.relations.ok() && si.t.trace() == F->from_int(-7) &&
             order3_trace(S, si.t, R) == F->from_int(-2);
  }
  rep.checks["solutions_valid"] = all_ok;

  // N_G(B) inside N(T), B = <u, s>
  t0 = Clock::now();
  auto NB = normalizer_in_torus_normalizer(*S.W, G, {S.u}, S.s);
  rep.dims["normalizer_index"] = static_cast<long long>(NB.index);
  rep.dims["weyl_candidates"] = NB.weyl_candidates;
  rep.checks["normalizer_index_2"] = NB.index == 2 && NB.extra_gens.size() == 1;
  say(o, "normalizer " + std::to_string(since(t0)) + " s");
  if (ts.size() == 2 && !NB.extra_gens.empty()) {
    BorelTable B(borel_elements(S.u, S.s, 37, 18), rep.seed);
    auto T = fusion_table(B, ts, NB.extra_gens[0]);
    rep.checks["fusion_swaps"] = !T[0][0] && T[0][1] && T[1][0] && !T[1][1];
    rep.checks["groups_distinct"] = !B.in_double_coset(ts[0], ts[1]);
  }
  rep.u = S.u;
  rep.s = S.s;
  rep.e = S.e;
  rep.seconds = since(start);
  return rep;
}

}  // namespace lie

namespace lie {

CaseReport solve_case_29(const DriverOptions& o) {
  auto start = Clock::now();
  CaseReport rep;
  rep.q = 29;
  rep.type = "E7";
  rep.seed = o.seed ? o.seed : 1;
  auto F = Field::prime(36541);
  rep.field = field_name(F);
  const auto& Fr = *F;
  auto R = reference_images(29);
  Setup S = borel_setup("E7", F, 14, 29, Poly::linear(R.F, 4), rep.seed, rep, o);
  const auto& G = *S.G;
  rep.checks["borel_relations"] = verify_relations(borel_relations(29), S.u, S.s, G.identity()).ok();
  rep.checks["u_s_member"] = G.membership(S.u) && G.membership(S.s);
  rep.checks["u_traces_z29"] = unipotent_traces_ok(S.u, 2, 7);

  auto C = centralizer_in_torus_layers(*S.W, S.lift.elem.perm, {2, 7});
  rep.dims["torus_centralizer"] = static_cast<long long>(C.order);
  rep.dims["torus_centralizer_det"] = C.det_check;
  rep.checks["torus_centralizer_2"] = C.order == 2 && C.det_check == 2;

  Prepared Pr = prepare_system(S, rep, o);
  rep.checks["span_198"] = Pr.span.basis.size() == 198;
  rep.checks["nullspace_dim_4"] = Pr.ker.size() == 4;
  if (Pr.ker.size() != 4) {
    rep.seconds = since(start);
    return rep;
  }
  std::vector<Mat> m;
  for (auto& k : Pr.ker) m.push_back(Pr.span.combine(k));

  // one representative t u^a s^b from each class of elements of order 5
  auto w5 = words_of_order(R, 29, 5);
  auto key = [&](Word w) {
    Elt tr = (R.t * power(R.u, w.a) * power(R.s, w.b)).trace();
    return R.F->mul(tr, tr);
  };
  std::vector<Word> reps{w5.at(0)};
  for (auto w : w5)
    if (key(w) != key(reps[0])) {
      reps.push_back(w);
      break;
    }
  if (reps.size() != 2) throw SearchFailed("no second class of elements of order 5");
  for (int k = 0; k < 2; ++k)
    rep.info["order5_word_" + std::to_string(k)] = "t u^" + std::to_string(reps[k].a) + " s^" + std::to_string(reps[k].b);

  // roots of X^2 - X - 1
  auto ys = roots_in_field(Poly::from_ints(F, {-1, -1, 1}));
  if (ys.size() != 2) throw FieldTooSmall("X^2 - X - 1 does not split");
  // S_ik = tr(m_i e w_k) with w_k = u^a s^b
  Mat Smat(F, 4, 2);
  for (int i = 0; i < 4; ++i)
    for (int k = 0; k < 2; ++k)
      Smat(i, k) = (m[i] * S.e * power(S.u, reps[k].a) * power(S.s, reps[k].b)).trace();

  std::vector<Mat> ts;
  std::vector<int> system_of;
  long long scanned_candidates = 0;
  for (int sys = 0; sys < 2; ++sys) {
    auto t0 = Clock::now();
    Vec target{ys[sys], ys[1 - sys]};
    auto sol = solve_left(Smat, target);
    if (!sol) continue;
    // x S = target: particular plus a 2-dim kernel
    auto ker = left_kernel(Smat);
    if (ker.size() != 2) throw TraceMatrixSingular("trace matrix has rank " + std::to_string(4 - ker.size()));
    auto comb = [&](const Vec& x) {
      Mat z(F, G.dim(), G.dim());
      for (int i = 0; i < 4; ++i)
        if (x[i]) z = axpy(z, x[i], m[i]);
      return z;
    };
    Mat A = comb(*sol), Cm = comb(ker[0]), D = comb(ker[1]);
    BiPoly P = bivariate_det_interpolate(A, Cm, D);
    say(o, "bivariate determinant " + std::to_string(since(t0)) + " s");
    std::mutex mu;
    std::vector<std::pair<std::uint64_t, Mat>> hits;
    std::atomic<long long> cands{0};
    parallel_for(o.threads, Fr.q(), [&](std::uint64_t xi, int) {
      Elt x = static_cast<Elt>(xi);
      Poly px = bipoly_at_x(P, x);
      if (px.is_zero()) throw SearchFailed("determinant vanishes on a whole line");
      std::mt19937_64 rng(rep.seed * 104729 + xi);
      for (Elt y : roots_in_field(px)) {
        ++cands;
        Mat c = axpy(axpy(A, x, Cm), y, D);
        if (!G.quick_filter(c, rng) || !G.membership(c)) continue;
        std::lock_guard<std::mutex> lock(mu);
        hits.emplace_back(xi * Fr.q() + y, c);
      }
    });
    std::sort(hits.begin(), hits.end(), [](auto& a, auto& b) { return a.first < b.first; });
    for (auto& [key2, c] : hits) {
      ts.push_back(c * S.e);
      system_of.push_back(sys);
    }
    scanned_candidates += cands;
    rep.dims["solutions_system_" + std::to_string(sys)] = static_cast<long long>(hits.size());
    say(o, "scan " + std::to_string(sys) + ": " + std::to_string(hits.size()) + " solutions, " +
               std::to_string(since(t0)) + " s");
  }
  rep.dims["scan_candidates"] = scanned_candidates;
  rep.dims["solutions"] = static_cast<long long>(ts.size());
  rep.checks["four_solutions"] = ts.size() == 4;

  bool all_ok = !ts.empty();
  for (size_t i = 0; i < ts.size(); ++i) {
    finish_solution(S, 29, ts[i], rep);
    auto& si = rep.solutions.back();
    common_traces(S, si, R);
    Elt y0 = word_mat(ts[i], S.u, S.s, reps[0]).trace(), y1 = word_mat(ts[i], S.u, S.s, reps[1]).trace();
    si.traces["order5_0"] = trace_str(F, y0);
    si.traces["order5_1"] = trace_str(F, y1);
    int sys = system_of[i];
    all_ok = all_ok && si.member && si.relations.ok() && si.t.trace() == F->from_int(-7) &&
             order3_trace(S, si.t, R) == F->from_int(-2) && y0 == ys[sys] && y1 == ys[1 - sys];
  }
  rep.checks["solutions_valid"] = all_ok;

  auto t0 = Clock::now();
  auto NB = normalizer_in_torus_normalizer(*S.W, G, {S.u}, S.s);
  rep.dims["normalizer_index"] = static_cast<long long>(NB.index);
  rep.dims["weyl_candidates"] = NB.weyl_candidates;
  rep.checks["normalizer_index_2"] = NB.index == 2 && NB.extra_gens.size() == 1;
  say(o, "normalizer " + std::to_string(since(t0)) + " s");
  if (ts.size() == 4 && !NB.extra_gens.empty()) {
    BorelTable B(borel_elements(S.u, S.s, 29, 14), rep.seed);
    auto T = fusion_table(B, ts, NB.extra_gens[0]);
    // a fixed-point-free involution on the four groups, matching solutions with equal order-5 traces
    bool pairs = true;
    for (size_t i = 0; i < 4; ++i) {
      int hitsn = 0;
      for (size_t j = 0; j < 4; ++j)
        if (T[i][j]) {
          ++hitsn;
          pairs = pairs && j != i && T[j][i] && system_of[j] == system_of[i];
        }
      pairs = pairs && hitsn == 1;
    }
    rep.checks["fusion_pairs"] = pairs;
    bool distinct = true;
    for (size_t i = 0; i < 4; ++i)
      for (size_t j = 0; j < 4; ++j)
        if (i != j && B.in_double_coset(ts[i], ts[j])) distinct = false;
    rep.checks["groups_distinct"] = distinct;
  }
  rep.u = S.u;
  rep.s = S.s;
  rep.e = S.e;
  rep.seconds = since(start);
  return rep;
}

}  // namespace lie

namespace lie {

namespace {

// fingerprint lookup of a small explicit list of matrices
class ElemIndex {
 public:
  ElemIndex(std::vector<Mat> elems, std::uint64_t seed) : elems_(std::move(elems)) {
    const auto& F = elems_.at(0).field();
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<Elt> any(0, F->q() - 1);
    probe_.resize(elems_[0].rows());
    for (auto& x : probe_) x = any(rng);
    for (size_t i = 0; i < elems_.size(); ++i) map_[probe_ * elems_[i]].push_back(static_cast<int>(i));
  }
  int find(const Mat& g) const {
    auto it = map_.find(probe_ * g);
    if (it == map_.end()) return -1;
    for (int i : it->second)
      if (elems_[i] == g) return i;
    return -1;
  }
  const Mat& operator[](int i) const { return elems_[i]; }

 private:
  std::vector<Mat> elems_;
  Vec probe_;
  std::map<Vec, std::vector<int>> map_;
};

// 3x3 matrices over GF(3), rows packed base 3
using M3 = std::array<int, 9>;
M3 m3_mul(const M3& a, const M3& b) {
  M3 c{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      int v = 0;
      for (int k = 0; k < 3; ++k) v += a[3 * i + k] * b[3 * k + j];
      c[3 * i + j] = v % 3;
    }
  return c;
}
int m3_code(const M3& a) {
  int c = 0;
  for (int i = 8; i >= 0; --i) c = 3 * c + a[i];
  return c;
}
M3 m3_id() { return {1, 0, 0, 0, 1, 0, 0, 0, 1}; }
int m3_order(const M3& a) {
  M3 x = a;
  for (int k = 1; k < 100; ++k) {
    if (x == m3_id()) return k;
    x = m3_mul(x, a);
  }
  return 0;
}

// E = <u1, u2, u3> listed as u1^a u2^b u3^c at index a + 3b + 9c
std::vector<Mat> list_e(const Mat& u1, const Mat& u2, const Mat& u3) {
  std::vector<Mat> out;
  Mat c = Mat::identity(u1.field(), u1.rows());
  for (int k = 0; k < 3; ++k, c = c * u3) {
    Mat b = Mat::identity(u1.field(), u1.rows());
    for (int j = 0; j < 3; ++j, b = b * u2) {
      Mat a = Mat::identity(u1.field(), u1.rows());
      for (int i = 0; i < 3; ++i, a = a * u1) out.push_back(a * b * c);
    }
  }
  return out;
}

std::optional<M3> action_on_e(const ElemIndex& E, const std::array<Mat, 3>& us, const Mat& g, const Mat& ginv) {
  M3 m{};
  for (int i = 0; i < 3; ++i) {
    int k = E.find(ginv * us[i] * g);
    if (k < 0) return std::nullopt;
    m[3 * i] = k % 3;
    m[3 * i + 1] = (k / 3) % 3;
    m[3 * i + 2] = k / 9;
  }
  return m;
}

}  // namespace

CaseReport solve_case_27(const DriverOptions& o) {
  auto start = Clock::now();
  CaseReport rep;
  rep.q = 27;
  rep.type = "F4";
  rep.seed = o.seed ? o.seed : 1;
  auto F = Field::prime(547);
  rep.field = field_name(F);
  const auto& Fr = *F;
  auto R = reference_images(27);
  Setup S;
  S.L = build_lie_algebra(roots_from_dynkin("F4"), F);
  S.G = std::make_unique<AdjointGroup>(S.L);
  S.W = std::make_unique<WeylGroup>(S.L->rd());
  const auto& G = *S.G;
  const auto& L = *S.L;

  // u3: order 3 in <n_i> with trace -2; u1, u2 in the 3-torsion of T centralised by it
  auto lift3 = random_weyl_lift(G, 3, rep.seed, [&](const WeylLift& c) { return c.mat.trace() == Fr.from_int(-2); });
  Mat u3 = lift3.mat;
  auto layer = torus_layer(G, 3);
  auto fix3 = eigenspace(action_on_torus_layer(G, u3, layer), 1);
  rep.dims["u3_search_tries"] = lift3.tries;
  rep.dims["layer_fixed_dim"] = static_cast<long long>(fix3.size());
  if (fix3.size() != 2) throw SearchFailed("u3 centralises a 3-torsion subgroup of rank " + std::to_string(fix3.size()));
  Mat u1 = layer_element(G, layer, fix3[0]), u2 = layer_element(G, layer, fix3[1]);
  std::array<Mat, 3> us{u1, u2, u3};
  auto elist = list_e(u1, u2, u3);
  ElemIndex E(elist, rep.seed);
  {
    bool ok = u1 * u3 == u3 * u1 && u2 * u3 == u3 * u2;
    std::set<Vec> seen;
    for (size_t i = 1; i < elist.size(); ++i) ok = ok && elist[i].trace() == Fr.from_int(-2);
    for (size_t i = 0; i < elist.size(); ++i) ok = ok && E.find(elist[i]) == static_cast<int>(i);
    rep.checks["e_elementary_27_traces_minus2"] = ok;
  }

  // N1 inside N(T), N2 inside N(T') for a torus T' meeting E in a plane through u3
  auto t0 = Clock::now();
  auto N1 = normalizer_in_torus_normalizer(*S.W, G, {u1, u2}, u3);
  rep.dims["n1_order"] = static_cast<long long>(N1.order);
  rep.checks["n1_order_11664"] = N1.order == 11664;
  std::vector<Mat> gens = N1.extra_gens;
  std::vector<Mat> gens2;
  for (int j = 0; j < 3 && gens2.empty(); ++j) {
    Mat a = u1 * power(u2, j);
    auto fa = fixed_space(a), f3 = fixed_space(u3);
    // intersection of the two fixed spaces
    Mat stack = vstack(Mat::from_rows(F, fa), scale(Mat::from_rows(F, f3), Fr.neg(1)));
    std::vector<Vec> H;
    for (auto& k : left_kernel(stack)) {
      Vec v(L.dim(), 0);
      for (size_t i = 0; i < fa.size(); ++i)
        if (k[i]) v = vadd(F, v, vscale(F, fa[i], k[i]));
      H.push_back(v);
    }
    H = row_basis(H, F);
    if (static_cast<int>(H.size()) != G.rank()) continue;
    try {
      auto ch = adapted_chevalley_basis_for(L, H, rep.seed);
      Mat P = ch.matrix, Pinv = inverse(P);
      auto N2 = normalizer_in_torus_normalizer(*S.W, G, {P * a * Pinv, P * u3 * Pinv}, P * u2 * Pinv);
      rep.dims["n2_order"] = static_cast<long long>(N2.order);
      rep.checks["n2_order_11664"] = N2.order == 11664;
      for (auto& x : N2.extra_gens) gens2.push_back(Pinv * x * P);
      rep.info["second_torus_plane"] = "u1 u2^" + std::to_string(j) + ", u3";
    } catch (const LieError& err) {
      say(o, std::string("plane ") + std::to_string(j) + ": " + err.what());
    }
  }
  if (gens2.empty()) throw SearchFailed("no split torus through a second plane of E");
  say(o, "parabolic normalisers in " + std::to_string(since(t0)) + " s");

  // image of <N1, N2> in GL(E) = GL3(3); representatives by breadth-first search on a greedy generating set
  t0 = Clock::now();
  std::vector<Mat> all_gens = gens;
  all_gens.insert(all_gens.end(), gens2.begin(), gens2.end());
  std::vector<M3> all_img;
  for (auto& g : all_gens) {
    auto m = action_on_e(E, us, g, inverse(g));
    if (!m) throw NotNormalizing("generator does not normalise E");
    all_img.push_back(*m);
  }
  std::vector<int> chosen;
  std::unordered_map<int, int> where;
  std::vector<M3> img{m3_id()};
  std::vector<Mat> reps{G.identity()}, reps_inv{G.identity()};
  where[m3_code(m3_id())] = 0;
  auto close = [&](size_t from) {
    for (size_t i = 0; i < img.size(); ++i)
      for (size_t gi = (i < from ? chosen.size() - 1 : 0); gi < chosen.size(); ++gi) {
        int g = chosen[gi];
        M3 y = m3_mul(img[i], all_img[g]);
        if (where.count(m3_code(y))) continue;
        where[m3_code(y)] = static_cast<int>(img.size());
        img.push_back(y);
        reps.push_back(reps[i] * all_gens[g]);
        reps_inv.push_back(inverse(all_gens[g]) * reps_inv[i]);
      }
  };
  for (size_t g = 0; g < all_gens.size(); ++g) {
    if (where.count(m3_code(all_img[g]))) continue;
    chosen.push_back(static_cast<int>(g));
    close(img.size());
  }
  // every generator is accounted for: image in the list, and g r^-1 in E
  bool gens_in = true;
  for (size_t g = 0; g < all_gens.size(); ++g) {
    auto it = where.find(m3_code(all_img[g]));
    gens_in = gens_in && it != where.end() && E.find(all_gens[g] * reps_inv[it->second]) >= 0;
  }
  // Schreier generators of the kernel on the chosen generators
  bool kernel_e = true;
  for (size_t i = 0; i < img.size() && kernel_e; ++i)
    for (int g : chosen) {
      int j = where.at(m3_code(m3_mul(img[i], all_img[g])));
      if (E.find(reps[i] * all_gens[g] * reps_inv[j]) < 0) {
        kernel_e = false;
        break;
      }
    }
  std::set<int> spectrum;
  for (auto& m : img) spectrum.insert(m3_order(m));
  unsigned long long n_order = img.size() * 27ull;
  rep.dims["image_order"] = static_cast<long long>(img.size());
  rep.dims["normaliser_order"] = static_cast<long long>(n_order);
  rep.dims["normaliser_generators"] = static_cast<long long>(chosen.size());
  rep.checks["n_order_151632"] = n_order == 151632 && kernel_e && gens_in;
  rep.checks["image_order_spectrum"] = spectrum == std::set<int>{1, 2, 3, 4, 6, 8, 13};
  say(o, "normaliser " + std::to_string(n_order) + " in " + std::to_string(since(t0)) + " s");

  // s of order 13 whose image has minimal polynomial X^3 + X^2 + X + 2, u = u1
  const M3* sbar = nullptr;
  int sidx = -1;
  for (size_t i = 0; i < img.size(); ++i) {
    if (m3_order(img[i]) != 13) continue;
    // m(S) = S^3 + S^2 + S + 2
    M3 s2 = m3_mul(img[i], img[i]), s3 = m3_mul(s2, img[i]);
    bool zero = true;
    for (int k = 0; k < 9; ++k) zero = zero && (s3[k] + s2[k] + img[i][k] + 2 * m3_id()[k]) % 3 == 0;
    if (zero) {
      sbar = &img[i];
      sidx = static_cast<int>(i);
      break;
    }
  }
  if (!sbar) throw SearchFailed("no element of order 13 with the required minimal polynomial");
  S.s = power(reps[sidx], 27);
  S.u = u1;
  rep.dims["s_order"] = static_cast<long long>(order_dividing(S.s, 39));
  rep.checks["borel_relations"] = verify_relations(borel_relations(27), S.u, S.s, G.identity()).ok();
  rep.checks["u_s_member"] = G.membership(S.u) && G.membership(S.s);

  Prepared Pr = prepare_system(S, rep, o);
  rep.checks["nullspace_dim_3"] = Pr.ker.size() == 3;
  if (Pr.ker.size() != 3) {
    rep.seconds = since(start);
    return rep;
  }
  std::vector<Mat> m;
  for (auto& k : Pr.ker) m.push_back(Pr.span.combine(k));

  // order-7 traces: z1 = 1+y^3+y^4, z2 = 1+y+y^6, z3 = 1+y^2+y^5
  Elt y = Fr.pow(Fr.prim(), (Fr.q() - 1) / 7);
  auto yy = [&](int k) { return Fr.pow(y, k); };
  Vec z{Fr.add(1, Fr.add(yy(3), yy(4))), Fr.add(1, Fr.add(yy(1), yy(6))), Fr.add(1, Fr.add(yy(2), yy(5)))};
  bool zpoly = true;
  for (Elt zi : z) {
    // X^3 - 2X^2 - X + 1 at z, and X^3 - X^2 - 2X + 1 at 1/z
    Elt a = Fr.from_int(0);
    for (long long c : {1, -2, -1, 1}) a = Fr.add(Fr.mul(a, zi), Fr.from_int(c));
    Elt w = Fr.inv(zi), b = 0;
    for (long long c : {1, -1, -2, 1}) b = Fr.add(Fr.mul(b, w), Fr.from_int(c));
    zpoly = zpoly && a == 0 && b == 0;
  }
  rep.checks["z_roots"] = zpoly;
  int js[3] = {2, 5, 6};
  bool orders7 = true;
  for (int j : js) orders7 = orders7 && psl_order(R.t * R.u * power(R.s, j)) == 7;
  rep.checks["tus_order7"] = orders7;
  Mat Smat(F, 3, 3), Cmat(F, 3, 3);
  for (int i = 0; i < 3; ++i)
    for (int k = 0; k < 3; ++k) {
      Smat(i, k) = (m[i] * S.e * S.u * power(S.s, js[k])).trace();
      Cmat(i, k) = z[(i + k) % 3];
    }
  auto Sinv = try_inverse(Smat);
  if (!Sinv) throw TraceMatrixSingular("trace matrix S is singular");
  Mat A = Cmat * *Sinv;
  std::vector<Mat> ts;
  for (int i = 0; i < 3; ++i) {
    Mat c(F, G.dim(), G.dim());
    for (int k = 0; k < 3; ++k) c = axpy(c, A(i, k), m[k]);
    if (G.membership(c)) ts.push_back(c * S.e);
  }
  rep.dims["solutions"] = static_cast<long long>(ts.size());
  rep.checks["three_solutions"] = ts.size() == 3;
  bool all_ok = !ts.empty();
  for (size_t i = 0; i < ts.size(); ++i) {
    finish_solution(S, 27, ts[i], rep);
    auto& si = rep.solutions.back();
    si.traces["u"] = trace_str(F, S.u.trace());
    std::vector<Elt> tr;
    for (int j : js) {
      tr.push_back((ts[i] * S.u * power(S.s, j)).trace());
      si.traces["tus^" + std::to_string(j)] = trace_str(F, tr.back());
    }
    bool cyc = false;
    for (int r = 0; r < 3; ++r) cyc = cyc || (tr[0] == z[r] && tr[1] == z[(r + 1) % 3] && tr[2] == z[(r + 2) % 3]);
    all_ok = all_ok && si.member && si.relations.ok() && cyc;
  }
  rep.checks["solutions_valid"] = all_ok;

  // N_N(B) = B.3: an element whose image normalises <sbar> without lying in it
  std::set<int> sgroup;
  {
    M3 x = m3_id();
    for (int k = 0; k < 13; ++k, x = m3_mul(x, *sbar)) sgroup.insert(m3_code(x));
  }
  int gidx = -1;
  for (size_t i = 0; i < img.size() && gidx < 0; ++i) {
    if (sgroup.count(m3_code(img[i]))) continue;
    // g^-1 sbar g in <sbar>, with img[i]^-1 = img[i]^(ord-1)
    M3 inv = img[i];
    for (int k = 2; k < m3_order(img[i]); ++k) inv = m3_mul(inv, img[i]);
    if (sgroup.count(m3_code(m3_mul(m3_mul(inv, *sbar), img[i])))) gidx = static_cast<int>(i);
  }
  if (gidx >= 0 && ts.size() == 3) {
    Mat g = reps[gidx];
    rep.dims["normaliser_element_order"] = static_cast<long long>(order_dividing(g, 2 * 3 * 13 * 27 * 8));
    auto belems = borel_elements(G.identity(), S.s, 1, 13);
    // B = E <s>
    std::vector<Mat> bl;
    for (auto& e : elist)
      for (auto& x : belems) bl.push_back(e * x);
    BorelTable B(bl, rep.seed);
    Mat gi = reps_inv[gidx];
    rep.checks["normaliser_element_normalises_b"] = B.contains(gi * S.s * g) && B.contains(gi * S.u * g) &&
                                                     !B.contains(g);
    auto T = fusion_table(B, ts, g);
    bool cyclic = true;
    for (int i = 0; i < 3; ++i) {
      int hits = 0;
      for (int j = 0; j < 3; ++j) hits += T[i][j];
      cyclic = cyclic && hits == 1 && !T[i][i];
    }
    rep.checks["normaliser_element_cycles_groups"] = cyclic;
    bool distinct = true;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        if (i != j && B.in_double_coset(ts[i], ts[j])) distinct = false;
    rep.checks["groups_distinct"] = distinct;
  } else {
    rep.checks["normaliser_element_cycles_groups"] = false;
  }
  rep.u = S.u;
  rep.s = S.s;
  rep.e = S.e;
  rep.seconds = since(start);
  return rep;
}

}  // namespace lie
