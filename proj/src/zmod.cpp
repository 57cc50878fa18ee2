#include "lie/zmod.hpp"

#include <string>
#include <utility>

#include "lie/field.hpp"

namespace lie {

I64 mod(I64 a, I64 n) {
  a %= n;
  return a < 0 ? a + n : a;
}

std::string count_str(Count c) {
  if (c == 0) return "0";
  std::string s;
  while (c) {
    s.insert(s.begin(), char('0' + int(c % 10)));
    c /= 10;
  }
  return s;
}

namespace {

int val(I64 a, I64 p, int e) {
  if (a == 0) return e;
  int v = 0;
  while (a % p == 0) {
    a /= p;
    ++v;
  }
  return v;
}

Congruence solve_local(I64Mat m, std::vector<I64> c, I64 p, int e) {
  I64 pe = 1;
  for (int i = 0; i < e; ++i) pe *= p;
  int rows = static_cast<int>(m.size());
  int cols = rows ? static_cast<int>(m[0].size()) : 0;
  for (auto& r : m)
    for (auto& x : r) x = mod(x, pe);
  for (auto& x : c) x = mod(x, pe);
  I64Mat V(cols, std::vector<I64>(cols, 0));
  for (int i = 0; i < cols; ++i) V[i][i] = 1;

  std::vector<int> v;
  int r = 0;
  for (; r < std::min(rows, cols); ++r) {
    int bi = -1, bj = -1, bv = e;
    for (int i = r; i < rows; ++i)
      for (int j = r; j < cols; ++j)
        if (m[i][j]) {
          int vv = val(m[i][j], p, e);
          if (vv < bv) bv = vv, bi = i, bj = j;
        }
    if (bi < 0) break;
    std::swap(m[r], m[bi]);
    std::swap(c[r], c[bi]);
    for (int i = 0; i < rows; ++i) std::swap(m[i][r], m[i][bj]);
    for (int i = 0; i < cols; ++i) std::swap(V[i][r], V[i][bj]);
    I64 pv = 1;
    for (int k = 0; k < bv; ++k) pv *= p;
    I64 unit = m[r][r] / pv;
    I64 ui = mod(mod_inverse(unit % pe, pe), pe);
    for (auto& x : m[r]) x = (x * ui) % pe;
    c[r] = (c[r] * ui) % pe;
    for (int i = 0; i < rows; ++i) {
      if (i == r || m[i][r] == 0) continue;
      I64 f = m[i][r] / pv;
      for (int j = 0; j < cols; ++j) m[i][j] = mod(m[i][j] - f * m[r][j], pe);
      c[i] = mod(c[i] - f * c[r], pe);
    }
    for (int j = 0; j < cols; ++j) {
      if (j == r || m[r][j] == 0) continue;
      I64 f = m[r][j] / pv;
      for (int i = 0; i < rows; ++i) m[i][j] = mod(m[i][j] - f * m[i][r], pe);
      for (int i = 0; i < cols; ++i) V[i][j] = mod(V[i][j] - f * V[i][r], pe);
    }
    v.push_back(bv);
  }
  Congruence out;
  for (int i = r; i < rows; ++i)
    if (c[i]) return out;
  Count cnt = 1;
  std::vector<I64> y(cols, 0);
  for (int k = 0; k < r; ++k) {
    I64 pv = 1;
    for (int t = 0; t < v[k]; ++t) pv *= p;
    if (c[k] % pv) return out;
    y[k] = c[k] / pv;
    cnt *= Count(pv);
  }
  for (int k = r; k < cols; ++k) cnt *= Count(pe);
  std::vector<I64> x(cols, 0);
  for (int i = 0; i < cols; ++i) {
    I64 s = 0;
    for (int j = 0; j < cols; ++j) s = (s + V[i][j] * y[j]) % pe;
    x[i] = s;
  }
  out.count = cnt;
  out.particular = x;
  auto add_gen = [&](int k, I64 scale) {
    std::vector<I64> g(cols, 0);
    for (int i = 0; i < cols; ++i) g[i] = (V[i][k] * scale) % pe;
    out.kernel_gens.push_back(g);
  };
  for (int k = 0; k < r; ++k)
    if (v[k] > 0) {
      I64 s = 1;
      for (int t = v[k]; t < e; ++t) s *= p;
      add_gen(k, s);
    }
  for (int k = r; k < cols; ++k) add_gen(k, 1);
  return out;
}

}  // namespace

Congruence solve_congruence(const I64Mat& a, const std::vector<I64>& c, I64 n) {
  int cols = a.empty() ? 0 : static_cast<int>(a[0].size());
  Congruence out;
  out.count = 1;
  std::vector<I64> x(cols, 0);
  I64 modsofar = 1;
  for (auto [p, e] : factorize(static_cast<std::uint64_t>(n))) {
    auto loc = solve_local(a, c, static_cast<I64>(p), e);
    if (!loc.particular) return Congruence{};
    out.count *= loc.count;
    I64 pe = 1;
    for (int i = 0; i < e; ++i) pe *= static_cast<I64>(p);
    // glue x (mod modsofar) with loc (mod pe)
    I64 inv = mod(mod_inverse(modsofar % pe, pe), pe);
    for (int i = 0; i < cols; ++i) {
      I64 d = mod((*loc.particular)[i] - x[i], pe);
      x[i] = x[i] + modsofar * ((d * inv) % pe);
    }
    modsofar *= pe;
    // kernel generators: lift by x = g mod pe, 0 mod the rest
    I64 rest = n / pe;
    I64 lift = mod(mod_inverse(rest % pe, pe), pe) * rest;
    for (auto& g : loc.kernel_gens) {
      std::vector<I64> h(cols);
      for (int i = 0; i < cols; ++i) h[i] = static_cast<I64>((static_cast<__int128>(g[i]) * lift) % n);
      out.kernel_gens.push_back(h);
    }
  }
  out.particular = x;
  return out;
}

Count count_kernel(const I64Mat& a, I64 n) {
  return solve_congruence(a, std::vector<I64>(a.size(), 0), n).count;
}

}  // namespace lie
