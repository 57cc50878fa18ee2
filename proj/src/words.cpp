#include "lie/words.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <fstream>
#include <numeric>
#include <set>
#include <sstream>

#include "lie/embed.hpp"
#include "lie/errors.hpp"
#include "lie/rootdata.hpp"

namespace lie {

int an_nroots(int n) { return n * (n + 1) / 2; }

int gamma(int n, int i, int j) {
  if (n < 1 || i < 1 || j < 1 || i > n + 1 || j > n + 1 || i == j)
    throw IndexOutOfRange("gamma(" + std::to_string(i) + ", " + std::to_string(j) + ") for A" + std::to_string(n));
  int h = std::abs(i - j), k = std::min(i, j);
  int idx = k;
  for (int hh = 1; hh < h; ++hh) idx += n - hh + 1;
  return i > j ? idx : -idx;
}

std::pair<int, int> gamma_pair(int n, int root) {
  int a = std::abs(root);
  if (a < 1 || a > an_nroots(n)) throw IndexOutOfRange("root " + std::to_string(root) + " of A" + std::to_string(n));
  int h = 1;
  while (a > n - h + 1) a -= n - h + 1, ++h;
  int lo = a, hi = a + h;
  return root > 0 ? std::pair{hi, lo} : std::pair{lo, hi};
}

std::string AnWord::to_string() const {
  std::ostringstream os;
  for (size_t k = 0; k < tokens.size(); ++k) {
    const auto& tk = tokens[k];
    os << (k ? " " : "") << (tk.kind == AnToken::X ? "x" : "h") << tk.root << "(" << F->to_string(tk.t) << ")";
  }
  return os.str();
}

Mat rho_x(const FieldPtr& F, int n, int root, Elt t) {
  auto [i, j] = gamma_pair(n, root);
  Mat m = Mat::identity(F, n + 1);
  m(i - 1, j - 1) = (i + j + 1) % 2 ? F->neg(t) : t;
  return m;
}

Mat rho_h(const FieldPtr& F, int n, int simple, Elt t) {
  if (simple < 1 || simple > n) throw IndexOutOfRange("simple root " + std::to_string(simple));
  Mat m = Mat::identity(F, n + 1);
  m(simple - 1, simple - 1) = t;
  m(simple, simple) = F->inv(t);
  return m;
}

Mat rho(const AnWord& w) {
  Mat m = Mat::identity(w.F, w.n + 1);
  for (auto& tk : w.tokens)
    m = m * (tk.kind == AnToken::X ? rho_x(w.F, w.n, tk.root, tk.t) : rho_h(w.F, w.n, tk.root, tk.t));
  return m;
}

namespace {

// unitriangular factor as x-terms; lower = positive roots
void sweep(const Mat& target, bool lower, AnWord& w) {
  const auto& F = *w.F;
  int n = w.n;
  Mat cur = Mat::identity(w.F, n + 1);
  for (int c = 1; c <= n; ++c) {
    for (int k = 1; k + c <= n + 1; ++k) {
      int i = lower ? k + c : k, j = lower ? k : k + c;
      Elt diff = F.sub(target(i - 1, j - 1), cur(i - 1, j - 1));
      if (diff == 0) continue;
      Elt t = c % 2 ? diff : F.neg(diff);
      int r = gamma(n, i, j);
      w.tokens.push_back({AnToken::X, r, t});
      cur = cur * rho_x(w.F, n, r, t);
    }
  }
}

}  // namespace

AnWord word_from_matrix(const Mat& M) {
  if (!M.square() || M.rows() < 2) throw DimensionMismatch("word_from_matrix");
  auto [L, D, U] = ldu(M);
  AnWord w;
  w.n = M.rows() - 1;
  w.F = M.field();
  const auto& F = *w.F;
  sweep(L, true, w);
  Elt t = 1;
  for (int c = 1; c <= w.n; ++c) {
    t = F.mul(D(c - 1, c - 1), t);
    if (t != 1) w.tokens.push_back({AnToken::H, c, t});
  }
  sweep(U, false, w);
  return w;
}

namespace {

Mat comm(const Mat& a, const Mat& b) { return inverse(a) * inverse(b) * a * b; }

Mat n_of(const std::function<Mat(int, Elt)>& x, const FieldPtr& F, int r, Elt t) {
  Mat a = x(r, t);
  return a * x(-r, F->neg(F->inv(t))) * a;
}

}  // namespace

A2A2Transplant::A2A2Transplant(const AdjointGroup& G) : G_(G) {
  const auto& rd = G.L().rd();
  const auto& F = G.field();
  auto ss = subsystem_a2a2_f4(rd);
  for (int w = 0; w < 2; ++w) {
    const auto& roots = w == 0 ? ss.first : ss.second;
    for (int r = 1; r <= 3; ++r) {
      root_[w][3 + r] = roots[r - 1];
      root_[w][3 - r] = rd.neg(roots[r - 1]);
      sign_[w][3 + r] = sign_[w][3 - r] = 1;
    }
    // sign on the third root from [x_1(1), x_2(1)]
    for (int s : {1, -1}) {
      Mat C = comm(rho_x(F, 2, s, 1), rho_x(F, 2, 2 * s, 1));
      auto [i, j] = gamma_pair(2, 3 * s);
      Elt c = C(i - 1, j - 1);
      if ((i + j + 1) % 2) c = F->neg(c);
      if (C != rho_x(F, 2, 3 * s, c)) throw GraphMismatch("A2 commutator is not a root element");
      Mat D = comm(G.x(root_[w][3 + s], 1), G.x(root_[w][3 + 2 * s], 1));
      int found = 0;
      for (int e : {1, -1})
        if (D == G.x(root_[w][3 + 3 * s], F->mul(F->from_int(e), c))) found = e;
      if (!found) throw GraphMismatch("F4 commutator does not match the A2 one");
      sign_[w][3 + 3 * s] = found;
    }
  }
  // h_r(t) = n_r(t) n_r(-1) on both sides fixes the direction of the torus terms
  Elt t = F->prim();
  if (F->mul(t, t) == 1) t = F->from_int(2);
  auto rx = [&](int r, Elt v) { return rho_x(F, 2, r, v); };
  Mat hr = n_of(rx, F, 1, t) * n_of(rx, F, 1, F->neg(1));
  int erho = hr == rho_h(F, 2, 1, t) ? 1 : hr == rho_h(F, 2, 1, F->inv(t)) ? -1 : 0;
  int eg = 0;
  for (int w = 0; w < 2; ++w)
    for (int r = 1; r <= 2; ++r) {
      auto gx = [&](int rr, Elt v) { return G.x(root_[w][3 + rr], F->mul(F->from_int(sign_[w][3 + rr]), v)); };
      Mat hg = n_of(gx, F, r, t) * n_of(gx, F, r, F->neg(1));
      int e = hg == G.h_root(root_[w][3 + r], t) ? 1 : hg == G.h_root(root_[w][3 + r], F->inv(t)) ? -1 : 0;
      if (!e || (eg && e != eg)) throw GraphMismatch("inconsistent torus terms");
      eg = e;
    }
  if (!erho) throw GraphMismatch("A2 torus terms are not n_r(t) n_r(-1)");
  hexp_ = erho * eg;
}

int A2A2Transplant::root(int which, int r) const { return root_.at(which).at(3 + r); }
int A2A2Transplant::sign(int which, int r) const { return sign_.at(which).at(3 + r); }

Mat A2A2Transplant::image(int which, const AnWord& w) const {
  const auto& F = G_.field();
  if (w.n != 2 && !w.tokens.empty()) throw DimensionMismatch("transplant needs A2 words");
  Mat m = G_.identity();
  for (auto& tk : w.tokens) {
    if (tk.kind == AnToken::X) {
      m = m * G_.x(root(which, tk.root), sign(which, tk.root) == 1 ? tk.t : F->neg(tk.t));
    } else {
      if (tk.root < 1 || tk.root > 2) throw IndexOutOfRange("simple root " + std::to_string(tk.root));
      m = m * G_.h_root(root(which, tk.root), F->pow(tk.t, hexp_));
    }
  }
  return m;
}

Mat A2A2Transplant::operator()(const AnWord& a, const AnWord& b) const { return image(0, a) * image(1, b); }

Mat transplant_a2a2_to_f4(const AdjointGroup& G, const AnWord& a, const AnWord& b) {
  return A2A2Transplant(G)(a, b);
}

// ---- words in two generators

namespace {

struct WordParser {
  const std::string& s;
  size_t p = 0;

  void skip() {
    while (p < s.size() && std::isspace(static_cast<unsigned char>(s[p]))) ++p;
  }
  [[noreturn]] void fail(const std::string& what) {
    throw ParseError("word '" + s + "': " + what + " at " + std::to_string(p));
  }
  static GenWord inv(GenWord w) {
    std::reverse(w.letters.begin(), w.letters.end());
    for (auto& l : w.letters) l.second = -l.second;
    return w;
  }
  static void append(GenWord& a, const GenWord& b) {
    for (auto& l : b.letters) {
      if (!a.letters.empty() && a.letters.back().first == l.first) {
        a.letters.back().second += l.second;
        if (!a.letters.back().second) a.letters.pop_back();
      } else {
        a.letters.push_back(l);
      }
    }
  }
  GenWord word() {
    GenWord w;
    for (;;) {
      skip();
      if (p >= s.size() || s[p] == ')' || s[p] == ',' || s[p] == ']') return w;
      append(w, item());
    }
  }
  GenWord item() {
    GenWord a = atom();
    skip();
    if (p < s.size() && s[p] == '^') {
      ++p;
      skip();
      size_t used = 0;
      long long e;
      try {
        e = std::stoll(s.substr(p), &used);
      } catch (...) {
        fail("bad exponent");
      }
      p += used;
      GenWord base = e < 0 ? inv(a) : a, out;
      for (long long k = 0; k < std::llabs(e); ++k) append(out, base);
      return out;
    }
    return a;
  }
  GenWord atom() {
    skip();
    if (p >= s.size()) fail("unexpected end");
    char c = s[p++];
    if (c == 'a' || c == 'b') return GenWord{{{c - 'a', 1}}};
    if (c == 'A' || c == 'B') return GenWord{{{c - 'A', -1}}};
    if (c == '(') {
      GenWord w = word();
      if (p >= s.size() || s[p] != ')') fail("missing )");
      ++p;
      return w;
    }
    if (c == '[') {
      GenWord x = word();
      if (p >= s.size() || s[p] != ',') fail("missing ,");
      ++p;
      GenWord y = word();
      if (p >= s.size() || s[p] != ']') fail("missing ]");
      ++p;
      GenWord out = inv(x);
      append(out, inv(y));
      append(out, x);
      append(out, y);
      return out;
    }
    --p;
    fail(std::string("unexpected '") + c + "'");
  }
};

using Perm6 = std::array<int, 6>;

Perm6 pmul(const Perm6& a, const Perm6& b) {  // first a then b
  Perm6 c;
  for (int i = 0; i < 6; ++i) c[i] = b[a[i]];
  return c;
}
Perm6 pinv(const Perm6& a) {
  Perm6 c;
  for (int i = 0; i < 6; ++i) c[a[i]] = i;
  return c;
}
Perm6 pid() {
  Perm6 c;
  std::iota(c.begin(), c.end(), 0);
  return c;
}
bool even(const Perm6& a) {
  int inv = 0;
  for (int i = 0; i < 6; ++i)
    for (int j = i + 1; j < 6; ++j) inv += a[i] > a[j];
  return inv % 2 == 0;
}
int porder(const Perm6& a) {
  Perm6 x = a;
  int k = 1;
  while (x != pid()) x = pmul(x, a), ++k;
  return k;
}
Perm6 peval(const GenWord& w, const Perm6& a, const Perm6& b) {
  Perm6 m = pid();
  for (auto [g, e] : w.letters) {
    Perm6 x = g == 0 ? a : b;
    if (e < 0) x = pinv(x);
    for (long long k = 0; k < std::llabs(e); ++k) m = pmul(m, x);
  }
  return m;
}
size_t perm_group_order(const Perm6& a, const Perm6& b) {
  std::set<Perm6> seen{pid()};
  std::vector<Perm6> todo{pid()};
  while (!todo.empty()) {
    Perm6 x = todo.back();
    todo.pop_back();
    for (auto& g : {a, b}) {
      Perm6 y = pmul(x, g);
      if (seen.insert(y).second) todo.push_back(y);
    }
  }
  return seen.size();
}

}  // namespace

GenWord parse_gen_word(const std::string& text) {
  WordParser P{text};
  GenWord w = P.word();
  P.skip();
  if (P.p != text.size()) P.fail("trailing input");
  return w;
}

Mat eval_gen_word(const GenWord& w, const Mat& a, const Mat& b) {
  Mat m = Mat::identity(a.field(), a.rows());
  Mat ai, bi;
  for (auto [g, e] : w.letters) {
    const Mat& x = g == 0 ? a : b;
    if (e > 0) {
      m = m * power(x, e);
    } else {
      Mat& xi = g == 0 ? ai : bi;
      if (xi.rows() == 0) xi = inverse(x);
      m = m * power(xi, -e);
    }
  }
  return m;
}

std::vector<std::string> alt6_relators() { return {"a^2", "b^4", "(ab)^5", "(ab^2)^5"}; }

bool alt6_relators_hold_on_permutations(const std::vector<std::string>& relators, int* group_order) {
  std::vector<GenWord> ws;
  for (auto& r : relators) ws.push_back(parse_gen_word(r));
  std::vector<Perm6> invols, fours;
  Perm6 p = pid();
  do {
    if (!even(p)) continue;
    int o = porder(p);
    if (o == 2) invols.push_back(p);
    if (o == 4) fours.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  for (auto& a : invols)
    for (auto& b : fours) {
      bool ok = true;
      for (auto& w : ws) ok = ok && peval(w, a, b) == pid();
      if (!ok) continue;
      size_t n = perm_group_order(a, b);
      if (n == 360) {
        if (group_order) *group_order = int(n);
        return true;
      }
    }
  return false;
}

// ---- data files

RepData read_rep_data(std::istream& is) {
  RepData d;
  std::string line;
  FieldPtr F;
  bool in_rel = false;
  while (std::getline(is, line)) {
    auto b = line.find_first_not_of(" \t\r");
    if (b == std::string::npos || line[b] == '#') continue;
    std::string key = line.substr(b);
    while (!key.empty() && std::isspace(static_cast<unsigned char>(key.back()))) key.pop_back();
    Mat* slot = key == "a1" ? &d.a1 : key == "a2" ? &d.a2 : key == "b1" ? &d.b1 : key == "b2" ? &d.b2 : nullptr;
    if (slot) {
      in_rel = false;
      *slot = read_matrix(is, F);
      F = slot->field();
    } else if (key == "relators") {
      in_rel = true;
    } else if (key.rfind("central", 0) == 0) {
      in_rel = false;
      d.central = key.substr(7);
      d.central.erase(0, d.central.find_first_not_of(" \t"));
    } else if (in_rel) {
      d.relators.push_back(key);
    } else {
      throw ParseError("rep data: unexpected line '" + key + "'");
    }
  }
  if (!d.a1.rows() || !d.a2.rows() || !d.b1.rows() || !d.b2.rows()) throw BadRepData("rep data: missing matrices");
  if (d.relators.empty()) throw BadRepData("rep data: no relators");
  return d;
}

RepData read_rep_data_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw BadRepData("cannot open " + path);
  return read_rep_data(f);
}

void write_rep_data(std::ostream& os, const RepData& d, const std::string& comment) {
  std::istringstream cs(comment);
  std::string line;
  while (std::getline(cs, line)) os << "# " << line << "\n";
  using Named = std::pair<const char*, const Mat*>;
  for (auto [name, m] : {Named{"a1", &d.a1}, Named{"a2", &d.a2}, Named{"b1", &d.b1}, Named{"b2", &d.b2}}) {
    os << name << "\n";
    write_matrix(os, *m);
  }
  os << "relators\n";
  for (auto& r : d.relators) os << r << "\n";
  if (!d.central.empty()) os << "central " << d.central << "\n";
}

std::string default_rep_data_path() { return std::string(LIE_DATA_DIR) + "/alt6_f4_19.txt"; }

bool Alt6Result::ok() const {
  for (auto& [k, v] : checks)
    if (!v) return false;
  return !checks.empty();
}

Alt6Result build_alt6_f4(const RepData& d) {
  const auto& F = d.a1.field();
  for (const Mat* m : {&d.a1, &d.a2, &d.b1, &d.b2}) {
    if (m->rows() != 3 || m->cols() != 3) throw BadRepData("rep data: matrices must be 3x3");
    if (m->field()->q() != F->q()) throw BadRepData("rep data: mixed fields");
    if (det(*m) != 1) throw BadRepData("rep data: determinant is not 1");
  }
  Alt6Result res;
  int perm_order = 0;
  if (!alt6_relators_hold_on_permutations(d.relators, &perm_order))
    throw BadRepData("relators do not hold on a generating pair of Alt6 permutations");
  res.checks["relators_on_permutations"] = perm_order == 360;

  std::vector<GenWord> rels;
  for (auto& r : d.relators) rels.push_back(parse_gen_word(r));
  // in SL3 the relators only hold up to the centre
  for (size_t k = 0; k < rels.size(); ++k) {
    if (!eval_gen_word(rels[k], d.a1, d.a2).is_scalar() || !eval_gen_word(rels[k], d.b1, d.b2).is_scalar())
      throw BadRepData("SL3 generators fail relator " + d.relators[k]);
  }

  const Mat* src[4] = {&d.a1, &d.a2, &d.b1, &d.b2};
  bool roundtrip = true;
  for (int k = 0; k < 4; ++k) {
    res.words[k] = word_from_matrix(*src[k]);
    roundtrip = roundtrip && rho(res.words[k]) == *src[k];
  }
  res.checks["word_roundtrip"] = roundtrip;

  AdjointGroup G(build_lie_algebra(roots_from_dynkin("F4"), F));
  A2A2Transplant T(G);
  res.g1 = T(res.words[0], res.words[2]);
  res.g2 = T(res.words[1], res.words[3]);
  res.checks["g1_member"] = G.membership(res.g1);
  res.checks["g2_member"] = G.membership(res.g2);
  bool rel_ok = true;
  for (auto& w : rels) rel_ok = rel_ok && eval_gen_word(w, res.g1, res.g2).is_identity();
  res.checks["relators_identity"] = rel_ok;
  res.checks["nontrivial"] = !res.g1.is_identity() && !res.g2.is_identity() && res.g1 != res.g2;
  auto ord = [](const Mat& g) -> std::uint64_t {
    try {
      return order_dividing(g, 60);
    } catch (const NotFinite&) {
      return 0;
    }
  };
  res.checks["orders_2_4_5"] = ord(res.g1) == 2 && ord(res.g2) == 4 && ord(res.g1 * res.g2) == 5;

  if (!d.central.empty()) {
    GenWord z = parse_gen_word(d.central);
    Mat za = eval_gen_word(z, d.a1, d.a2), zb = eval_gen_word(z, d.b1, d.b2);
    bool central = za.is_scalar() && zb.is_scalar() && !za.is_identity() && !zb.is_identity();
    res.checks["central_word_scalar"] = central;
    if (central) {
      res.checks["centre_maps_to_identity"] = T(word_from_matrix(za), word_from_matrix(zb)).is_identity() &&
                                              eval_gen_word(z, res.g1, res.g2).is_identity();
      res.traces["central_a"] = trace_str(F, za(0, 0));
      res.traces["central_b"] = trace_str(F, zb(0, 0));
    }
  }
  res.traces["g1"] = trace_str(F, res.g1.trace());
  res.traces["g2"] = trace_str(F, res.g2.trace());
  res.traces["g1g2"] = trace_str(F, (res.g1 * res.g2).trace());
  res.traces["g1g2^2"] = trace_str(F, (res.g1 * res.g2 * res.g2).trace());
  return res;
}

}  // namespace lie
