#include "lie/rootdata.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace lie {

namespace {

IMat simply_laced(int n, const std::vector<std::pair<int, int>>& edges) {
  IMat c(n, IVec(n, 0));
  for (int i = 0; i < n; ++i) c[i][i] = 2;
  for (auto [a, b] : edges) c[a][b] = c[b][a] = -1;
  return c;
}

}  // namespace

int RootDatum::find(const IVec& v) const {
  auto it = index.find(v);
  return it == index.end() ? -1 : it->second;
}

int RootDatum::sum(int r, int s) const {
  IVec v(rank);
  for (int i = 0; i < rank; ++i) v[i] = roots[r][i] + roots[s][i];
  return find(v);
}

int RootDatum::form2(const IVec& a, const IVec& b) const {
  // 2(alpha_i, alpha_j) = cartan[i][j] * len_i
  int s = 0;
  for (int i = 0; i < rank; ++i) {
    if (!a[i]) continue;
    for (int j = 0; j < rank; ++j)
      if (b[j]) s += a[i] * b[j] * cartan[i][j] * simple_len[i];
  }
  return s;
}

int RootDatum::pairing(int r, int s) const {
  return 2 * form2(roots[r], roots[s]) / form2(roots[s], roots[s]);
}

int RootDatum::pairing_simple(int r, int i) const {
  int s = 0;
  for (int j = 0; j < rank; ++j) s += roots[r][j] * cartan[i][j];
  return s;
}

RootDatum roots_from_dynkin(const std::string& type) {
  RootDatum rd;
  rd.type = type;
  if (type.size() < 2) throw UnsupportedType(type);
  char fam = type[0];
  int n = 0;
  try {
    n = std::stoi(type.substr(1));
  } catch (...) {
    throw UnsupportedType(type);
  }
  if (n < 1) throw UnsupportedType(type);
  rd.rank = n;
  rd.simple_len.assign(n, 1);
  if (fam == 'A') {
    std::vector<std::pair<int, int>> e;
    for (int i = 0; i + 1 < n; ++i) e.emplace_back(i, i + 1);
    rd.cartan = simply_laced(n, e);
  } else if (fam == 'E' && n >= 6 && n <= 8) {
    // 1-3-4-5-6-7-8 with 2 attached to 4
    std::vector<std::pair<int, int>> e{{0, 2}, {2, 3}, {1, 3}};
    for (int i = 3; i + 1 < n; ++i) e.emplace_back(i, i + 1);
    rd.cartan = simply_laced(n, e);
  } else if (fam == 'F' && n == 4) {
    // alpha1, alpha2 long; alpha3, alpha4 short
    rd.cartan = {{2, -1, 0, 0}, {-1, 2, -1, 0}, {0, -2, 2, -1}, {0, 0, -1, 2}};
    rd.simple_len = {2, 2, 1, 1};
  } else {
    throw UnsupportedType(type);
  }

  // grow positive roots by height: r + alpha_i is a root iff the alpha_i-string through r
  // extends upwards, i.e. p - <r, alpha_i^vee> > 0
  std::set<IVec> have;
  std::vector<std::vector<IVec>> by_height(1);
  for (int i = 0; i < n; ++i) {
    IVec v(n, 0);
    v[i] = 1;
    by_height[0].push_back(v);
    have.insert(v);
  }
  for (size_t h = 0; !by_height[h].empty(); ++h) {
    by_height.emplace_back();
    for (const auto& r : by_height[h]) {
      for (int i = 0; i < n; ++i) {
        int p = 0;
        IVec d = r;
        for (;;) {
          d[i] -= 1;
          if (!have.count(d)) break;
          ++p;
        }
        int pr = 0;
        for (int j = 0; j < n; ++j) pr += r[j] * rd.cartan[i][j];
        if (p - pr > 0) {
          IVec up = r;
          up[i] += 1;
          if (have.insert(up).second) by_height[h + 1].push_back(up);
        }
      }
    }
  }
  std::vector<IVec> pos;
  for (auto& layer : by_height) {
    std::sort(layer.begin(), layer.end(), std::greater<IVec>());
    for (auto& v : layer) pos.push_back(v);
  }
  rd.npos = static_cast<int>(pos.size());
  rd.roots = pos;
  for (auto& v : pos) {
    IVec w = v;
    for (auto& x : w) x = -x;
    rd.roots.push_back(w);
  }
  for (int i = 0; i < rd.nroots(); ++i) {
    rd.index[rd.roots[i]] = i;
    int h = std::accumulate(rd.roots[i].begin(), rd.roots[i].end(), 0);
    rd.height.push_back(h);
  }
  for (int i = 0; i < n; ++i) {
    IVec v(n, 0);
    v[i] = 1;
    rd.simple_idx.push_back(rd.find(v));
  }
  rd.refl.assign(n, Perm(rd.nroots()));
  for (int i = 0; i < n; ++i)
    for (int r = 0; r < rd.nroots(); ++r) {
      IVec v = rd.roots[r];
      v[i] -= rd.pairing_simple(r, i);
      rd.refl[i][r] = rd.find(v);
    }
  return rd;
}

std::map<int, std::pair<int, int>> extraspecial_pairs(const RootDatum& rd) {
  std::map<int, std::pair<int, int>> out;
  for (int g = 0; g < rd.npos; ++g) {
    if (rd.height[g] == 1) continue;
    for (int r = 0; r < g; ++r) {
      IVec d(rd.rank);
      for (int i = 0; i < rd.rank; ++i) d[i] = rd.roots[g][i] - rd.roots[r][i];
      int s = rd.find(d);
      if (s >= 0 && rd.positive(s)) {
        out[g] = {r, s};
        break;
      }
    }
  }
  return out;
}

bool WeylClass::operator<(const WeylClass& o) const {
  return std::tie(order, cycle_type, trace) < std::tie(o.order, o.cycle_type, o.trace);
}

WeylGroup::WeylGroup(const RootDatum& rd) : rd_(rd) {}

void WeylGroup::enumerate(const std::function<void(const Perm&, const std::vector<int>&)>& visit) const {
  // depth-first walk over the orbit of rho in fundamental-weight coordinates;
  // the parent of mu is s_i mu for the first i with mu_i < 0
  int l = rd_.rank;
  IVec mu(l, 1);
  Perm id(rd_.nroots());
  std::iota(id.begin(), id.end(), 0);
  std::vector<int> word;
  std::function<void(const IVec&, const Perm&)> rec = [&](const IVec& m, const Perm& w) {
    visit(w, word);
    for (int j = 0; j < l; ++j) {
      if (m[j] <= 0) continue;
      IVec nu(l);
      for (int i = 0; i < l; ++i) nu[i] = m[i] - m[j] * rd_.cartan[i][j];
      bool ok = true;
      for (int i = 0; i < j; ++i)
        if (nu[i] < 0) {
          ok = false;
          break;
        }
      if (!ok) continue;
      Perm w2(w.size());
      const Perm& s = rd_.refl[j];
      for (size_t r = 0; r < w.size(); ++r) w2[r] = s[w[r]];
      word.push_back(j);
      rec(nu, w2);
      word.pop_back();
    }
  };
  rec(mu, id);
}

std::uint64_t WeylGroup::order() const {
  std::uint64_t n = 0;
  enumerate([&](const Perm&, const std::vector<int>&) { ++n; });
  return n;
}

int WeylGroup::perm_order(const Perm& w) {
  std::vector<char> seen(w.size(), 0);
  long long o = 1;
  for (size_t i = 0; i < w.size(); ++i) {
    if (seen[i]) continue;
    long long len = 0;
    for (size_t j = i; !seen[j]; j = w[j]) seen[j] = 1, ++len;
    o = std::lcm(o, len);
  }
  return static_cast<int>(o);
}

std::vector<int> WeylGroup::cycle_type(const Perm& w) {
  std::vector<char> seen(w.size(), 0);
  std::vector<int> out;
  for (size_t i = 0; i < w.size(); ++i) {
    if (seen[i]) continue;
    int len = 0;
    for (size_t j = i; !seen[j]; j = w[j]) seen[j] = 1, ++len;
    out.push_back(len);
  }
  std::sort(out.begin(), out.end());
  return out;
}

IMat WeylGroup::reflection_matrix(const Perm& w) const {
  IMat m(rd_.rank);
  for (int j = 0; j < rd_.rank; ++j) m[j] = rd_.roots[w[rd_.simple(j)]];
  return m;
}

int int_rank(IMat m) {
  // fraction-free elimination; entries stay small for reflection matrices
  int rows = static_cast<int>(m.size());
  if (!rows) return 0;
  int cols = static_cast<int>(m[0].size());
  std::vector<std::vector<long long>> a(rows, std::vector<long long>(cols));
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) a[i][j] = m[i][j];
  int r = 0;
  for (int c = 0; c < cols && r < rows; ++c) {
    int k = r;
    while (k < rows && a[k][c] == 0) ++k;
    if (k == rows) continue;
    std::swap(a[k], a[r]);
    for (int i = r + 1; i < rows; ++i) {
      if (!a[i][c]) continue;
      long long f = a[i][c], g = a[r][c];
      for (int j = c; j < cols; ++j) a[i][j] = a[i][j] * g - a[r][j] * f;
      long long d = 0;
      for (int j = c; j < cols; ++j) d = std::gcd(d, std::llabs(a[i][j]));
      if (d > 1)
        for (int j = c; j < cols; ++j) a[i][j] /= d;
    }
    ++r;
  }
  return r;
}

int WeylGroup::fixed_space_dim(const Perm& w) const {
  IMat m = reflection_matrix(w);
  for (int i = 0; i < rd_.rank; ++i) m[i][i] -= 1;
  return rd_.rank - int_rank(m);
}

std::vector<WeylClass> WeylGroup::fingerprints() const {
  std::map<std::tuple<int, std::vector<int>, int>, WeylClass> acc;
  enumerate([&](const Perm& w, const std::vector<int>& word) {
    int tr = 0;
    for (int j = 0; j < rd_.rank; ++j) tr += rd_.roots[w[rd_.simple(j)]][j];
    auto ct = cycle_type(w);
    int o = 1;
    for (int c : ct) o = std::lcm(o, c);
    auto key = std::make_tuple(o, ct, tr);
    auto it = acc.find(key);
    if (it == acc.end()) {
      WeylClass c;
      c.order = o;
      c.cycle_type = ct;
      c.trace = tr;
      c.word = word;
      c.count = 1;
      acc.emplace(key, std::move(c));
    } else {
      ++it->second.count;
    }
  });
  std::vector<WeylClass> out;
  for (auto& [k, c] : acc) {
    c.fixed_dim = fixed_space_dim(perm_of_word(c.word));
    out.push_back(c);
  }
  return out;
}

Perm WeylGroup::perm_of_word(const std::vector<int>& word) const {
  Perm w(rd_.nroots());
  std::iota(w.begin(), w.end(), 0);
  for (int j : word)
    for (auto& x : w) x = rd_.refl[j][x];
  return w;
}

int reflection_rep_fixed_space(const WeylGroup& W, const std::vector<int>& word) {
  return W.fixed_space_dim(W.perm_of_word(word));
}

A2A2 subsystem_a2a2_f4(const RootDatum& rd) {
  if (rd.type != "F4") throw WrongType(rd.type);
  int a0 = rd.highest();
  int ma0 = rd.neg(a0);
  int a1 = rd.simple(0);
  int a1ma0 = rd.sum(a1, ma0);
  int a3 = rd.simple(2), a4 = rd.simple(3);
  int a34 = rd.sum(a3, a4);
  if (a1ma0 < 0 || a34 < 0) throw WrongType("A2A2 roots missing");
  return {{ma0, a1, a1ma0}, {a3, a4, a34}};
}

}  // namespace lie
