#include "lie/adjgroup.hpp"

namespace lie {

AdjointGroup::AdjointGroup(std::shared_ptr<const LieAlgebra> L) : L_(std::move(L)) {
  const auto& rd = L_->rd();
  for (int i = 0; i < rd.rank; ++i) {
    gens_.push_back(L_->basis(L_->pos(rd.simple(i))));
    gens_.push_back(L_->basis(L_->pos(rd.neg(rd.simple(i)))));
  }
}

Mat AdjointGroup::x(int root, Elt t) const {
  const auto& F = *field();
  int d = dim();
  Vec er = L_->basis(L_->pos(root));
  Mat m(field(), d, d);
  for (int i = 0; i < d; ++i) {
    Vec acc = L_->basis(i);
    Vec term = acc;
    for (int k = 1; k < 8; ++k) {
      term = L_->bracket(er, term);
      if (vzero(term)) break;
      term = vscale(field(), term, F.div(t, F.from_int(k)));
      acc = vadd(field(), acc, term);
    }
    m.set_row(i, acc);
  }
  return m;
}

Mat AdjointGroup::h(int i, Elt lambda) const {
  const auto& F = *field();
  const auto& rd = L_->rd();
  Mat m = identity();
  for (int r = 0; r < rd.nroots(); ++r) {
    int p = L_->pos(r);
    m(p, p) = F.pow(lambda, rd.pairing_simple(r, i));
  }
  return m;
}

Mat AdjointGroup::h_root(int root, Elt lambda) const {
  const auto& F = *field();
  const auto& rd = L_->rd();
  Mat m = identity();
  for (int r = 0; r < rd.nroots(); ++r) {
    int p = L_->pos(r);
    m(p, p) = F.pow(lambda, rd.pairing(r, root));
  }
  return m;
}

Mat AdjointGroup::n(int root) const {
  const auto& F = *field();
  Mat a = x(root, 1);
  return a * x(L_->rd().neg(root), F.neg(1)) * a;
}

Mat AdjointGroup::torus(const Vec& simple_values) const {
  const auto& F = *field();
  const auto& rd = L_->rd();
  Mat m = identity();
  for (int r = 0; r < rd.nroots(); ++r) {
    Elt v = 1;
    for (int i = 0; i < rd.rank; ++i)
      if (rd.roots[r][i]) v = F.mul(v, F.pow(simple_values[i], rd.roots[r][i]));
    int p = L_->pos(r);
    m(p, p) = v;
  }
  return m;
}

Vec AdjointGroup::torus_values(const Mat& t) const {
  const auto& rd = L_->rd();
  Vec v(rd.rank);
  for (int i = 0; i < rd.rank; ++i) {
    int p = L_->pos(rd.simple(i));
    v[i] = t(p, p);
  }
  return v;
}

bool AdjointGroup::membership(const Mat& g) const {
  if (g.rows() != dim() || g.cols() != dim()) return false;
  int d = dim();
  for (const auto& a : gens_) {
    int p = 0;
    while (!a[p]) ++p;
    // ad(a) g, computed sparsely
    Mat lhs(field(), d, d);
    const auto& F = *field();
    for (int i = 0; i < d; ++i)
      for (auto [k, c] : L_->bracket_basis(p, i)) {
        Elt ce = F.from_int(c);
        Elt* out = lhs.row(i);
        const Elt* gr = g.row(k);
        for (int j = 0; j < d; ++j)
          if (gr[j]) out[j] = F.add(out[j], F.mul(ce, gr[j]));
      }
    Mat rhs = g * L_->ad(g.row_vec(p));
    if (lhs != rhs) return false;
  }
  return true;
}

bool AdjointGroup::quick_filter(const Mat& g, std::mt19937_64& rng) const {
  int d = dim();
  std::uniform_int_distribution<Elt> u(0, field()->q() - 1);
  Vec x(d);
  for (auto& e : x) e = u(rng);
  Vec xg = x * g;
  for (const auto& a : gens_) {
    int p = 0;
    while (!a[p]) ++p;
    Vec lhs = L_->bracket(a, x) * g;
    if (lhs != L_->bracket(g.row_vec(p), xg)) return false;
  }
  return true;
}

std::optional<Perm> AdjointGroup::root_perm(const Mat& g) const {
  const auto& rd = L_->rd();
  Perm p(rd.nroots());
  for (int r = 0; r < rd.nroots(); ++r) {
    const Elt* row = g.row(L_->pos(r));
    int hit = -1;
    for (int j = 0; j < dim(); ++j) {
      if (!row[j]) continue;
      if (hit >= 0 || L_->root_at(j) < 0) return std::nullopt;
      hit = j;
    }
    if (hit < 0) return std::nullopt;
    p[r] = L_->root_at(hit);
  }
  return p;
}

GHN ghn(const AdjointGroup& G, Elt lambda) {
  GHN out;
  const auto& rd = G.L().rd();
  for (int i = 0; i < rd.rank; ++i) {
    int a = rd.simple(i);
    out.xplus.push_back(G.x(a, 1));
    out.xminus.push_back(G.x(rd.neg(a), 1));
    out.h.push_back(G.h(i, lambda));
    out.n.push_back(G.n(a));
  }
  return out;
}

GHNReport verify_ghn(const AdjointGroup& G, const GHN& g) {
  GHNReport rep;
  int l = G.rank();
  const auto& L = G.L();
  for (int i = 0; i < l; ++i)
    for (int j = 0; j < l; ++j) {
      if (g.h[i] * g.h[j] != g.h[j] * g.h[i]) rep.h_commute = false;
      if (!(g.n[i] * g.h[j] * inverse(g.n[i])).is_diagonal()) rep.n_normalise = false;
    }
  for (int i = 0; i < l; ++i) {
    int p = L.pos(L.rd().simple(i));
    if (L.basis(p) * g.xplus[i] != L.basis(p)) rep.x_fix = false;
    for (auto* m : {&g.xplus[i], &g.xminus[i], &g.h[i], &g.n[i]})
      if (!G.membership(*m)) rep.members = false;
  }
  return rep;
}

bool membership(const AdjointGroup& G, const Mat& g) { return G.membership(g); }

}  // namespace lie
