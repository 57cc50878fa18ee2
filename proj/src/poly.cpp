#include "lie/poly.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>
#include <unordered_map>

namespace lie {

Poly Poly::from_ints(FieldPtr F, const std::vector<long long>& c) {
  std::vector<Elt> v;
  v.reserve(c.size());
  for (auto x : c) v.push_back(F->from_int(x));
  return Poly(F, std::move(v));
}

Elt Poly::eval(Elt x) const {
  Elt r = 0;
  for (size_t i = c_.size(); i-- > 0;) r = F_->add(F_->mul(r, x), c_[i]);
  return r;
}

Poly Poly::monic() const {
  if (c_.empty()) return *this;
  return scale(*this, F_->inv(lead()));
}

std::string Poly::to_string(const char* var) const {
  if (c_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (size_t i = c_.size(); i-- > 0;) {
    if (!c_[i]) continue;
    if (!first) os << " + ";
    first = false;
    bool unit = c_[i] == 1 && i > 0;
    if (!unit) os << (F_->r() > 1 ? "[" + F_->to_string(c_[i]) + "]" : F_->to_string(c_[i]));
    if (i > 0) {
      if (!unit) os << "*";
      os << var;
      if (i > 1) os << "^" << i;
    }
  }
  return os.str();
}

Poly operator+(const Poly& a, const Poly& b) {
  const auto& F = a.field() ? a.field() : b.field();
  std::vector<Elt> c(std::max(a.coeffs().size(), b.coeffs().size()), 0);
  for (size_t i = 0; i < c.size(); ++i) c[i] = F->add(a[i], b[i]);
  return Poly(F, std::move(c));
}

Poly operator-(const Poly& a, const Poly& b) {
  const auto& F = a.field() ? a.field() : b.field();
  std::vector<Elt> c(std::max(a.coeffs().size(), b.coeffs().size()), 0);
  for (size_t i = 0; i < c.size(); ++i) c[i] = F->sub(a[i], b[i]);
  return Poly(F, std::move(c));
}

Poly operator*(const Poly& a, const Poly& b) {
  const auto& F = a.field() ? a.field() : b.field();
  if (a.is_zero() || b.is_zero()) return Poly(F);
  const auto& x = a.coeffs();
  const auto& y = b.coeffs();
  std::vector<Elt> c(x.size() + y.size() - 1, 0);
  if (F->is_prime()) {
    std::vector<std::uint64_t> acc(c.size(), 0);
    std::uint64_t p2 = std::uint64_t(F->p()) * F->p();
    for (size_t i = 0; i < x.size(); ++i) {
      if (!x[i]) continue;
      for (size_t j = 0; j < y.size(); ++j) {
        std::uint64_t t = acc[i + j] + std::uint64_t(x[i]) * y[j];
        acc[i + j] = t >= p2 ? t - p2 : t;
      }
    }
    for (size_t i = 0; i < c.size(); ++i) c[i] = static_cast<Elt>(acc[i] % F->p());
  } else {
    for (size_t i = 0; i < x.size(); ++i)
      for (size_t j = 0; j < y.size(); ++j) c[i + j] = F->add(c[i + j], F->mul(x[i], y[j]));
  }
  return Poly(F, std::move(c));
}

Poly scale(const Poly& a, Elt s) {
  std::vector<Elt> c(a.coeffs());
  for (auto& x : c) x = a.field()->mul(x, s);
  return Poly(a.field(), std::move(c));
}

std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b) {
  if (b.is_zero()) throw std::domain_error("polynomial division by zero");
  const auto& F = b.field();
  if (a.deg() < b.deg()) return {Poly(F), a};
  std::vector<Elt> r(a.coeffs());
  const auto& d = b.coeffs();
  int n = b.deg();
  std::vector<Elt> q(a.deg() - n + 1, 0);
  Elt li = F->inv(b.lead());
  for (int k = a.deg(); k >= n; --k) {
    Elt t = F->mul(r[k], li);
    q[k - n] = t;
    if (!t) continue;
    Elt nt = F->neg(t);
    for (int i = 0; i <= n; ++i) r[k - n + i] = F->add(r[k - n + i], F->mul(nt, d[i]));
  }
  r.resize(n);
  return {Poly(F, std::move(q)), Poly(F, std::move(r))};
}

Poly operator%(const Poly& a, const Poly& b) { return divmod(a, b).second; }
Poly operator/(const Poly& a, const Poly& b) { return divmod(a, b).first; }

Poly gcd(Poly a, Poly b) {
  while (!b.is_zero()) {
    Poly r = a % b;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

Poly powmod(Poly base, unsigned long long e, const Poly& m) {
  Poly r = Poly::constant(m.field(), 1) % m;
  base = base % m;
  while (e) {
    if (e & 1) r = (r * base) % m;
    e >>= 1;
    if (e) base = (base * base) % m;
  }
  return r;
}

Poly derivative(const Poly& a) {
  const auto& F = a.field();
  if (a.deg() < 1) return Poly(F);
  std::vector<Elt> c(a.deg());
  for (int i = 1; i <= a.deg(); ++i) c[i - 1] = F->mul(a[i], F->from_int(i));
  return Poly(F, std::move(c));
}

namespace {

// split a squarefree product of distinct linear factors into its roots
void split_linear(const Poly& f, std::mt19937_64& rng, std::vector<Elt>& out) {
  const auto& F = f.field();
  if (f.deg() <= 0) return;
  if (f.deg() == 1) {
    Poly m = f.monic();
    out.push_back(F->neg(m[0]));
    return;
  }
  std::uniform_int_distribution<Elt> dist(0, F->q() - 1);
  for (;;) {
    Poly a(F, {dist(rng), 1});
    Poly g;
    if (F->p() == 2) {
      // trace map a + a^2 + ... + a^(2^(n-1)), n = r
      Poly t = a, s = a;
      for (unsigned i = 1; i < F->r(); ++i) {
        s = (s * s) % f;
        t = t + s;
      }
      g = gcd(f, t);
    } else {
      Poly h = powmod(a, (std::uint64_t(F->q()) - 1) / 2, f);
      g = gcd(f, h - Poly::constant(F, 1));
    }
    if (g.deg() > 0 && g.deg() < f.deg()) {
      split_linear(g, rng, out);
      split_linear(f / g, rng, out);
      return;
    }
  }
}

// equal-degree splitting of a squarefree product of irreducibles of degree d
void split_equal(const Poly& f, int d, std::mt19937_64& rng, std::vector<Poly>& out) {
  const auto& F = f.field();
  if (f.deg() == d) {
    out.push_back(f.monic());
    return;
  }
  std::uniform_int_distribution<Elt> dist(0, F->q() - 1);
  std::uint64_t q = F->q();
  for (;;) {
    std::vector<Elt> c(f.deg());
    for (auto& x : c) x = dist(rng);
    Poly a(F, c);
    if (a.deg() < 1) continue;
    Poly g;
    if (F->p() == 2) {
      Poly t = a, s = a;
      for (unsigned i = 1; i < F->r() * unsigned(d); ++i) {
        s = (s * s) % f;
        t = t + s;
      }
      g = gcd(f, t);
    } else {
      // a^((q^d-1)/2) = prod_i (a^((q-1)/2))^(q^i)
      Poly b = powmod(a, (q - 1) / 2, f);
      Poly acc = b;
      Poly cur = b;
      for (int i = 1; i < d; ++i) {
        cur = powmod(cur, q, f);
        acc = (acc * cur) % f;
      }
      g = gcd(f, acc - Poly::constant(F, 1));
    }
    if (g.deg() > 0 && g.deg() < f.deg()) {
      split_equal(g, d, rng, out);
      split_equal(f / g, d, rng, out);
      return;
    }
  }
}

// p-th root of a polynomial whose derivative vanishes
Poly pth_root(const Poly& f) {
  const auto& F = f.field();
  std::uint32_t p = F->p();
  std::vector<Elt> c(f.deg() / p + 1, 0);
  // Frobenius inverse on coefficients: x^(q/p)
  std::uint64_t e = F->q() / p;
  for (int i = 0; i <= f.deg(); i += p) c[i / p] = F->pow(f[i], static_cast<std::int64_t>(e));
  return Poly(F, std::move(c));
}

void squarefree(const Poly& f, int mult, std::vector<std::pair<Poly, int>>& out) {
  // Yun-style decomposition with characteristic-p handling
  const auto& F = f.field();
  if (f.deg() <= 0) return;
  Poly d = derivative(f);
  if (d.is_zero()) {
    squarefree(pth_root(f), mult * static_cast<int>(F->p()), out);
    return;
  }
  Poly c = gcd(f, d);
  Poly w = f / c;
  int i = 1;
  while (w.deg() > 0) {
    Poly y = gcd(w, c);
    Poly z = w / y;
    if (z.deg() > 0) out.emplace_back(z.monic(), i * mult);
    ++i;
    w = y;
    c = c / y;
  }
  if (c.deg() > 0) {
    // remaining part is a p-th power
    squarefree(pth_root(c), mult * static_cast<int>(F->p()), out);
  }
}

}  // namespace

std::vector<Elt> roots_in_field(const Poly& f) {
  if (f.is_zero()) throw std::domain_error("roots of the zero polynomial");
  const auto& F = f.field();
  std::vector<Elt> out;
  if (f.deg() <= 0) return out;
  Poly m = f.monic();
  Poly x = Poly::x(F);
  Poly xq = powmod(x, F->q(), m);
  Poly g = gcd(m, xq - x);
  std::mt19937_64 rng(0x5eed1234u + f.deg());
  split_linear(g, rng, out);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<std::pair<Poly, int>> factor(const Poly& f) {
  const auto& F = f.field();
  std::vector<std::pair<Poly, int>> sqf, out;
  if (f.deg() <= 0) return out;
  squarefree(f.monic(), 1, sqf);
  std::mt19937_64 rng(0xfac7u);
  Poly x = Poly::x(F);
  for (auto& [g0, mult] : sqf) {
    Poly g = g0;
    Poly h = x;
    for (int d = 1; g.deg() >= 2 * d; ++d) {
      h = powmod(h, F->q(), g);
      Poly gd = gcd(g, h - x);
      if (gd.deg() > 0) {
        std::vector<Poly> parts;
        split_equal(gd, d, rng, parts);
        for (auto& pp : parts) out.emplace_back(pp, mult);
        g = g / gd;
        h = h % g;
      }
    }
    if (g.deg() > 0) out.emplace_back(g.monic(), mult);
  }
  // merge equal factors
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    if (a.first.deg() != b.first.deg()) return a.first.deg() < b.first.deg();
    return a.first.coeffs() < b.first.coeffs();
  });
  std::vector<std::pair<Poly, int>> merged;
  for (auto& pr : out) {
    if (!merged.empty() && merged.back().first == pr.first)
      merged.back().second += pr.second;
    else
      merged.push_back(pr);
  }
  return merged;
}

Poly min_poly_over_prime(const FieldPtr& F, Elt x) {
  // powers of x as coordinate vectors over GF(p); first dependency
  unsigned r = F->r();
  std::uint32_t p = F->p();
  auto P = Field::prime(p);
  std::vector<std::vector<Elt>> rows;  // echelon rows with combination tracking
  std::vector<std::vector<Elt>> combos;
  std::vector<int> pivots;
  Elt pw = 1;
  for (unsigned k = 0; k <= r; ++k) {
    auto cf = F->coeffs(pw);
    std::vector<Elt> v(cf.begin(), cf.end());
    std::vector<Elt> comb(r + 1, 0);
    comb[k] = 1;
    for (size_t i = 0; i < rows.size(); ++i) {
      Elt t = v[pivots[i]];
      if (!t) continue;
      Elt nt = P->neg(t);
      for (unsigned j = 0; j < r; ++j) v[j] = P->add(v[j], P->mul(nt, rows[i][j]));
      for (unsigned j = 0; j <= r; ++j) comb[j] = P->add(comb[j], P->mul(nt, combos[i][j]));
    }
    int piv = -1;
    for (unsigned j = 0; j < r; ++j)
      if (v[j]) {
        piv = static_cast<int>(j);
        break;
      }
    if (piv < 0) {
      // comb gives the relation sum comb_j x^j = 0 in prime-subfield coefficients
      std::vector<Elt> c(comb.begin(), comb.begin() + k + 1);
      Poly m(F, c);
      return m.monic();
    }
    Elt inv = P->inv(v[piv]);
    for (auto& a : v) a = P->mul(a, inv);
    for (auto& a : comb) a = P->mul(a, inv);
    rows.push_back(v);
    combos.push_back(comb);
    pivots.push_back(piv);
    pw = F->mul(pw, x);
  }
  throw std::logic_error("minimal polynomial search exceeded degree");
}

Poly interpolate(const FieldPtr& F, const std::vector<Elt>& xs, const std::vector<Elt>& ys) {
  // Newton divided differences
  size_t n = xs.size();
  std::vector<Elt> coef(ys);
  for (size_t j = 1; j < n; ++j)
    for (size_t i = n - 1; i >= j; --i) {
      Elt num = F->sub(coef[i], coef[i - 1]);
      Elt den = F->sub(xs[i], xs[i - j]);
      coef[i] = F->div(num, den);
      if (i == j) break;
    }
  Poly r(F);
  for (size_t k = n; k-- > 0;) r = r * Poly::linear(F, xs[k]) + Poly::constant(F, coef[k]);
  return r;
}

Poly cyclotomic(const FieldPtr& F, unsigned n) {
  // X^n - 1 divided by cyclotomic polynomials of proper divisors
  std::vector<Elt> c(n + 1, 0);
  c[0] = F->neg(1);
  c[n] = 1;
  Poly r(F, c);
  for (unsigned d = 1; d < n; ++d)
    if (n % d == 0) r = r / cyclotomic(F, d);
  return r;
}

std::uint64_t discrete_log(const FieldPtr& F, Elt base, Elt target) {
  if (base == 0 || target == 0) throw NotInSubgroup("zero has no logarithm");
  std::uint64_t n = F->order(base);
  if (F->has_log()) {
    // base = g^a, target = g^b: need e with a e = b mod q-1
    std::uint64_t N = F->q() - 1;
    std::uint64_t a = F->log(base), b = F->log(target);
    std::uint64_t step = N / n;  // <base> = <g^step>
    if (b % step) throw NotInSubgroup(F->to_string(target));
    // a = step * a', gcd(a', n) = 1
    std::uint64_t a1 = a / step, b1 = b / step;
    auto inv = static_cast<std::uint64_t>(mod_inverse(static_cast<std::int64_t>(a1 % n), static_cast<std::int64_t>(n)));
    return static_cast<std::uint64_t>((unsigned __int128)b1 * inv % n);
  }
  std::uint64_t m = static_cast<std::uint64_t>(std::ceil(std::sqrt(double(n))));
  std::unordered_map<Elt, std::uint64_t> baby;
  Elt x = 1;
  for (std::uint64_t j = 0; j < m; ++j) {
    baby.emplace(x, j);
    x = F->mul(x, base);
  }
  Elt giant = F->inv(F->pow(base, static_cast<std::int64_t>(m)));
  Elt y = target;
  for (std::uint64_t i = 0; i <= m; ++i) {
    auto it = baby.find(y);
    if (it != baby.end()) return (i * m + it->second) % n;
    y = F->mul(y, giant);
  }
  throw NotInSubgroup(F->to_string(target));
}

}  // namespace lie
