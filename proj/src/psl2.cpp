#include "lie/psl2.hpp"

#include <cctype>
#include <numeric>

namespace lie {

namespace {

struct Parser {
  const std::string& s;
  size_t i = 0;

  void ws() {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
  }
  bool peek(char c) {
    ws();
    return i < s.size() && s[i] == c;
  }
  void expect(char c) {
    if (!peek(c)) throw ParseError("expected '" + std::string(1, c) + "' at " + std::to_string(i) + " in " + s);
    ++i;
  }
  bool at_atom() {
    ws();
    if (i >= s.size()) return false;
    char c = s[i];
    return c == 'u' || c == 's' || c == 't' || c == '(' || c == '[';
  }
  long long integer() {
    ws();
    bool neg = false;
    if (i < s.size() && s[i] == '-') {
      neg = true;
      ++i;
    }
    size_t st = i;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
    if (st == i) throw ParseError("expected integer at " + std::to_string(st) + " in " + s);
    long long v = std::stoll(s.substr(st, i - st));
    return neg ? -v : v;
  }

  WordNode atom() {
    ws();
    char c = s[i];
    WordNode n;
    if (c == 'u' || c == 's' || c == 't') {
      ++i;
      n.kind = WordNode::Gen;
      n.gen = c == 'u' ? 0 : c == 's' ? 1 : 2;
      return n;
    }
    if (c == '(') {
      ++i;
      n = seq();
      expect(')');
      return n;
    }
    if (c == '[') {
      ++i;
      n.kind = WordNode::Comm;
      n.kids.push_back(seq());
      expect(',');
      n.kids.push_back(seq());
      expect(']');
      return n;
    }
    throw ParseError("unexpected '" + std::string(1, c) + "' in " + s);
  }

  WordNode factor() {
    WordNode base = atom();
    while (peek('^')) {
      ++i;
      ws();
      if (i < s.size() && (s[i] == '-' || std::isdigit(static_cast<unsigned char>(s[i])))) {
        WordNode p;
        p.kind = WordNode::Pow;
        p.exp = integer();
        p.kids.push_back(std::move(base));
        base = std::move(p);
      } else {
        WordNode by;
        if (peek('{')) {
          ++i;
          by = seq();
          expect('}');
        } else {
          by = atom();
        }
        WordNode c;
        c.kind = WordNode::Conj;
        c.kids.push_back(std::move(base));
        c.kids.push_back(std::move(by));
        base = std::move(c);
      }
    }
    return base;
  }

  WordNode seq() {
    WordNode n;
    n.kind = WordNode::Seq;
    while (at_atom()) n.kids.push_back(factor());
    if (n.kids.size() == 1) return std::move(n.kids[0]);
    return n;
  }
};

}  // namespace

Relation parse_relation(const std::string& name, const std::string& text) {
  Relation r{name, text, {}};
  Parser p{text};
  r.sides.push_back(p.seq());
  while (p.peek('=')) {
    ++p.i;
    r.sides.push_back(p.seq());
  }
  p.ws();
  if (p.i != text.size()) throw ParseError("trailing input in " + text);
  return r;
}

WordEvaluator::WordEvaluator(const Mat& u, const Mat& s, const Mat& t) : F_(u.field()), n_(u.rows()) {
  g_[0] = u;
  g_[1] = s;
  g_[2] = t;
}

Mat WordEvaluator::gen_power(int g, long long e) {
  if (e == 0) return Mat::identity(F_, n_);
  if (e == 1) return g_[g];
  if (e < 0 && !have_inv_[g]) {
    ginv_[g] = inverse(g_[g]);
    have_inv_[g] = true;
  }
  if (e == -1) return ginv_[g];
  auto key = std::make_pair(g, e);
  auto it = cache_.find(key);
  if (it != cache_.end()) return it->second;
  Mat m = power(e > 0 ? g_[g] : ginv_[g], e > 0 ? e : -e);
  cache_.emplace(key, m);
  return m;
}

Mat WordEvaluator::inv_of(const WordNode& w) {
  if (w.kind == WordNode::Gen) return gen_power(w.gen, -1);
  if (w.kind == WordNode::Pow && w.kids[0].kind == WordNode::Gen) return gen_power(w.kids[0].gen, -w.exp);
  return inverse(eval(w));
}

Mat WordEvaluator::eval(const WordNode& w) {
  switch (w.kind) {
    case WordNode::Gen:
      return g_[w.gen];
    case WordNode::Seq: {
      if (w.kids.empty()) return Mat::identity(F_, n_);
      Mat m = eval(w.kids[0]);
      for (size_t k = 1; k < w.kids.size(); ++k) m = m * eval(w.kids[k]);
      return m;
    }
    case WordNode::Pow: {
      if (w.kids[0].kind == WordNode::Gen) return gen_power(w.kids[0].gen, w.exp);
      Mat b = eval(w.kids[0]);
      if (w.exp < 0) b = inverse(b);
      return power(b, w.exp < 0 ? -w.exp : w.exp);
    }
    case WordNode::Conj:
      return inv_of(w.kids[1]) * eval(w.kids[0]) * eval(w.kids[1]);
    case WordNode::Comm: {
      Mat a = eval(w.kids[0]), b = eval(w.kids[1]);
      return inverse(a) * inverse(b) * a * b;
    }
  }
  return {};
}

namespace {

Presentation make(int q, int delta, const std::vector<std::pair<std::string, std::string>>& rels) {
  Presentation P;
  P.q = q;
  P.delta = delta;
  for (auto& [n, t] : rels) P.relations.push_back(parse_relation(n, t));
  return P;
}

}  // namespace

Presentation presentation(int q) {
  switch (q) {
    case 25:
      return make(25, 2,
                  {{"i", "u^5"},
                   {"ii", "u^{s^2} = u u^{s^4} = u^{s^4} u"},
                   {"iii", "u s^-2 u^4 s^-2 u s^4"},
                   {"iv", "u^s = u^2 s^-2 u^3 s^2"},
                   {"v", "t^2"},
                   {"vi", "(t s)^2"},
                   {"vii", "(t u)^3"},
                   {"viii", "s t = u s^-2 u s^2 (u^4 s^-2 u^3 s^2)^t u s^-2 u s^2"},
                   {"extra", "u^4 s^-1 u^3 s^-1 u s^2"}});
    case 27:
      return make(27, 1,
                  {{"i", "u^3"},
                   {"ii", "u^s = u u^{s^6} = u^{s^6} u"},
                   {"iii", "u^2 s^-1 u s^-1 u s^-1 u s^3"},
                   {"iv", "t^2"},
                   {"v", "(t s)^2"},
                   {"vi", "(t u)^3"},
                   {"vii", "s t = u s^-1 u^2 s (s^-1 u s^-1 u^2 s^2)^t u s^-1 u^2 s"}});
    case 37:
      return make(37, 1,
                  {{"i", "u^37"},
                   {"ii", "u^s = u u^{s^13} = u^{s^13} u"},
                   {"iii", "u^s = u^4"},
                   {"iv", "t^2"},
                   {"v", "(t s)^2"},
                   {"vi", "(t u)^3"},
                   {"vii", "s t = u^19 t u^2 t u^19"}});
    case 29:
      return make(29, 1,
                  {{"i", "u^29"},
                   {"ii", "u^{s^11} = u u^s = u^s u"},
                   {"iii", "u^s = u^4"},
                   {"iv", "t^2"},
                   {"v", "(t s)^2"},
                   {"vi", "(t u)^3"},
                   {"vii", "s t = u^15 t u^2 t u^15"}});
    default:
      throw UnsupportedQ(std::to_string(q));
  }
}

Presentation borel_relations(int q) {
  switch (q) {
    case 25:
      return make(25, 2, {{"u", "u^5"}, {"s", "s^12"}, {"comm", "[u, u^s]"}, {"extra", "u^4 s^-1 u^3 s^-1 u s^2"}});
    case 27:
      return make(27, 1, {{"u", "u^3"}, {"s", "s^13"}, {"comm", "[u, u^s]"}, {"iii", "u^2 s^-1 u s^-1 u s^-1 u s^3"}});
    case 37:
      return make(37, 1, {{"u", "u^37"}, {"s", "s^18"}, {"iii", "u^s u^-4"}});
    case 29:
      return make(29, 1, {{"u", "u^29"}, {"s", "s^14"}, {"iii", "u^s u^-4"}});
    default:
      throw UnsupportedQ(std::to_string(q));
  }
}

Mat bracket_eval(const Mat& a, const Mat& b, const Poly& g) {
  const auto& F = a.field();
  int n = a.rows();
  Mat out = Mat::identity(F, n);
  if (g.is_zero()) return out;
  Mat binv = inverse(b);
  Mat bp = Mat::identity(F, n), bpinv = bp;
  for (int i = 0; i <= g.deg(); ++i) {
    Elt c = g[i];
    if (c) out = out * bpinv * power(a, c) * bp;
    bp = bp * b;
    bpinv = bpinv * binv;
  }
  return out;
}

bool PresentationReport::ok() const {
  if (!u_nontrivial) return false;
  for (auto& c : checks)
    if (!c.pass) return false;
  return true;
}

PresentationReport verify_relations(const Presentation& P, const Mat& u, const Mat& s, const Mat& t,
                                    bool modulo_scalars) {
  PresentationReport rep;
  rep.q = P.q;
  WordEvaluator ev(u, s, t);
  auto good = [&](const Mat& m) { return modulo_scalars ? m.is_scalar() : m.is_identity(); };
  for (const auto& r : P.relations) {
    RelationCheck c{r.name, r.text, {}, true};
    std::vector<Mat> vals;
    for (auto& side : r.sides) vals.push_back(ev.eval(side));
    if (vals.size() == 1) {
      c.value = vals[0];
      c.pass = good(c.value);
    } else {
      for (size_t k = 1; k < vals.size(); ++k) {
        Mat d = vals[0] * inverse(vals[k]);
        if (k == 1) c.value = d;
        if (!good(d)) c.pass = false;
      }
    }
    rep.checks.push_back(std::move(c));
  }
  rep.u_nontrivial = modulo_scalars ? !u.is_scalar() : !u.is_identity();
  return rep;
}

PresentationReport verify_presentation(int q, const Mat& u, const Mat& s, const Mat& t, bool modulo_scalars) {
  return verify_relations(presentation(q), u, s, t, modulo_scalars);
}

ReferenceImages reference_images(int q) {
  ReferenceImages R;
  switch (q) {
    case 25:
      R.F = Field::extension(5, {2, 4, 1});
      R.omega = R.F->gen();
      break;
    case 27:
      R.F = Field::extension(3, {1, 2, 0, 1});
      R.omega = R.F->gen();
      break;
    case 37:
    case 29:
      R.F = Field::prime(q);
      R.omega = 2;
      break;
    default:
      throw UnsupportedQ(std::to_string(q));
  }
  const auto& F = *R.F;
  R.u = Mat::from_ints(R.F, {{1, 1}, {0, 1}});
  R.s = Mat::diag(R.F, {F.inv(R.omega), R.omega});
  R.t = Mat::from_ints(R.F, {{0, 1}, {-1, 0}});
  return R;
}

namespace {

// g with g(beta) = gamma, deg g < deg m, coefficients in the prime field
Poly express(const FieldPtr& F, Elt beta, int d, Elt gamma) {
  auto Fp = Field::prime(F->p());
  int r = F->r();
  Mat A(Fp, r, d);
  Elt pw = 1;
  for (int j = 0; j < d; ++j) {
    auto c = F->coeffs(pw);
    for (int i = 0; i < r; ++i) A(i, j) = c[i];
    pw = F->mul(pw, beta);
  }
  auto gc = F->coeffs(gamma);
  Vec b(gc.begin(), gc.end());
  auto sol = solve_affine(A, b);
  if (!sol.particular) throw LieError("RecipeError", "element outside the span of powers");
  return Poly(F, *sol.particular);
}

std::string bracket_text(const Poly& g, int delta) {
  std::string out;
  int e = g.deg();
  if (e < 0) return "u^0";
  for (int i = 0; i <= e; ++i) {
    if (i) out += " s^" + std::to_string(-delta) + " ";
    out += "u^" + std::to_string(g[i]);
  }
  if (e > 0) out += " s^" + std::to_string(e * delta);
  return out;
}

}  // namespace

RecipeData recipe_data(const FieldPtr& F, Elt omega, int k, int l) {
  RecipeData R;
  R.k = k;
  R.l = l;
  if (F->pow(omega, 2 * k) != F->add(F->pow(omega, 2 * l), 1))
    throw LieError("RecipeError", "w^2k != w^2l + 1");
  R.delta = std::gcd(k, l);
  Elt beta = F->pow(omega, 2 * R.delta);
  R.m = min_poly_over_prime(F, beta);
  int d = R.m.deg();
  R.g_omega = express(F, beta, d, omega);
  R.g_omega_inv = express(F, beta, d, F->inv(omega));
  R.g_omega_sq = express(F, beta, d, F->mul(omega, omega));
  return R;
}

Presentation recipe_presentation(const FieldPtr& F, Elt omega, int k, int l) {
  RecipeData R = recipe_data(F, omega, k, l);
  int q = static_cast<int>(F->q());
  std::string sk = "s^" + std::to_string(k), sl = "s^" + std::to_string(l);
  std::string inv = bracket_text(R.g_omega_inv, R.delta);
  return make(q, R.delta,
              {{"i", "u^" + std::to_string(F->p())},
               {"ii", "u^{" + sk + "} = u u^{" + sl + "} = u^{" + sl + "} u"},
               {"iii", bracket_text(R.m, R.delta)},
               {"iv", "u^s = " + bracket_text(R.g_omega_sq, R.delta)},
               {"v", "t^2"},
               {"vi", "s^t = s^-1"},
               {"vii", "t = u u^t u"},
               {"viii", "s t = " + inv + " (" + bracket_text(R.g_omega, R.delta) + ")^t " + inv}});
}

}  // namespace lie
