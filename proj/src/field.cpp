#include "lie/field.hpp"

#include <algorithm>
#include <tuple>
#include <sstream>

namespace lie {

namespace {

using U64 = std::uint64_t;
using PolyP = std::vector<U64>;  // coefficients mod p, low-to-high

void trim(PolyP& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

U64 powmod_u64(U64 b, U64 e, U64 m) {
  U64 r = 1 % m;
  b %= m;
  while (e) {
    if (e & 1) r = static_cast<U64>((unsigned __int128)r * b % m);
    b = static_cast<U64>((unsigned __int128)b * b % m);
    e >>= 1;
  }
  return r;
}

PolyP pmulmod(const PolyP& a, const PolyP& b, const PolyP& f, U64 p) {
  if (a.empty() || b.empty()) return {};
  PolyP c(a.size() + b.size() - 1, 0);
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) c[i + j] = (c[i + j] + a[i] * b[j]) % p;
  // f monic
  size_t n = f.size() - 1;
  for (size_t k = c.size(); k-- > n;) {
    U64 t = c[k];
    if (!t) continue;
    for (size_t i = 0; i <= n; ++i) c[k - n + i] = (c[k - n + i] + (p - t) * f[i]) % p;
  }
  c.resize(std::min(c.size(), n));
  trim(c);
  return c;
}

PolyP ppowmod(PolyP b, U64 e, const PolyP& f, U64 p) {
  PolyP r{1};
  while (e) {
    if (e & 1) r = pmulmod(r, b, f, p);
    b = pmulmod(b, b, f, p);
    e >>= 1;
  }
  return r;
}

PolyP pgcd(PolyP a, PolyP b, U64 p) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    // a mod b
    U64 inv = powmod_u64(b.back(), p - 2, p);
    while (a.size() >= b.size()) {
      U64 t = a.back() * inv % p;
      size_t sh = a.size() - b.size();
      for (size_t i = 0; i < b.size(); ++i) a[sh + i] = (a[sh + i] + (p - t) * b[i]) % p;
      trim(a);
      if (a.empty()) break;
    }
    std::swap(a, b);
  }
  return a;
}

bool irreducible(const PolyP& f, U64 p) {
  size_t r = f.size() - 1;
  if (r == 1) return true;
  PolyP x{0, 1};
  // X^(p^r) == X mod f
  PolyP y = x;
  for (size_t i = 0; i < r; ++i) y = ppowmod(y, p, f, p);
  if (y != x) return false;
  for (auto [l, _] : factorize(r)) {
    PolyP z = x;
    for (size_t i = 0; i < r / l; ++i) z = ppowmod(z, p, f, p);
    PolyP d = z;
    d.resize(std::max<size_t>(d.size(), 2), 0);
    d[1] = (d[1] + p - 1) % p;
    trim(d);
    PolyP g = pgcd(f, d, p);
    if (g.size() != 1) return false;
  }
  return true;
}

}  // namespace

std::vector<std::pair<std::uint64_t, int>> factorize(std::uint64_t n) {
  std::vector<std::pair<std::uint64_t, int>> out;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d) continue;
    int e = 0;
    while (n % d == 0) n /= d, ++e;
    out.emplace_back(d, e);
  }
  if (n > 1) out.emplace_back(n, 1);
  return out;
}

bool is_prime_u64(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

std::uint64_t gcd_u64(std::uint64_t a, std::uint64_t b) {
  while (b) {
    a %= b;
    std::swap(a, b);
  }
  return a;
}

std::int64_t mod_inverse(std::int64_t a, std::int64_t m) {
  std::int64_t g = m, x = 0, x1 = 1, a1 = ((a % m) + m) % m;
  while (a1) {
    std::int64_t qq = g / a1;
    std::tie(g, a1) = std::make_pair(a1, g - qq * a1);
    std::tie(x, x1) = std::make_pair(x1, x - qq * x1);
  }
  if (g != 1) throw NotInSubgroup("no inverse of " + std::to_string(a) + " mod " + std::to_string(m));
  return ((x % m) + m) % m;
}

FieldPtr Field::prime(std::uint32_t p) {
  if (!is_prime_u64(p) || p >= (1u << 31)) throw BadCharacteristic("p=" + std::to_string(p));
  auto f = std::shared_ptr<Field>(new Field());
  f->p_ = p;
  f->r_ = 1;
  f->q_ = p;
  f->barrett_ = p > 1 ? ~std::uint64_t(0) / p : 0;
  f->find_primitive();
  f->init_tables();
  return f;
}

FieldPtr Field::extension(std::uint32_t p, unsigned r) {
  if (r == 1) return prime(p);
  // first monic irreducible (lexicographic on constant-term-first digits)
  // for which X is primitive
  U64 q = 1;
  for (unsigned i = 0; i < r; ++i) q *= p;
  auto fac = factorize(q - 1);
  for (U64 code = 0; code < q; ++code) {
    PolyP f(r + 1, 0);
    U64 c = code;
    for (unsigned i = 0; i < r; ++i) f[i] = c % p, c /= p;
    f[r] = 1;
    if (f[0] == 0) continue;
    if (!irreducible(f, p)) continue;
    bool prim = true;
    for (auto [l, _] : fac)
      if (ppowmod(PolyP{0, 1}, (q - 1) / l, f, p) == PolyP{1}) {
        prim = false;
        break;
      }
    if (!prim) continue;
    std::vector<std::uint32_t> m(f.begin(), f.end());
    return extension(p, m);
  }
  throw BadCharacteristic("no primitive polynomial");
}

FieldPtr Field::extension(std::uint32_t p, const std::vector<std::uint32_t>& modulus) {
  if (!is_prime_u64(p)) throw BadCharacteristic("p=" + std::to_string(p));
  unsigned r = static_cast<unsigned>(modulus.size()) - 1;
  if (r == 1) return prime(p);
  if (modulus.back() != 1) throw BadCharacteristic("modulus not monic");
  PolyP f(modulus.begin(), modulus.end());
  for (auto& c : f) c %= p;
  if (!irreducible(f, p)) throw BadCharacteristic("modulus reducible");
  U64 q = 1;
  for (unsigned i = 0; i < r; ++i) q *= p;
  if (q > (1u << 22)) throw FieldTooSmall("extension fields limited to q <= 2^22");
  auto F = std::shared_ptr<Field>(new Field());
  F->p_ = p;
  F->r_ = r;
  F->q_ = static_cast<std::uint32_t>(q);
  F->barrett_ = ~std::uint64_t(0) / p;
  F->mod_ = modulus;
  for (auto& c : F->mod_) c %= p;
  F->pw_.resize(r + 1);
  F->pw_[0] = 1;
  for (unsigned i = 1; i <= r; ++i) F->pw_[i] = F->pw_[i - 1] * p;
  F->digit_.resize(size_t(q) * r);
  for (U64 e = 0; e < q; ++e) {
    U64 c = e;
    for (unsigned i = 0; i < r; ++i) F->digit_[e * r + i] = static_cast<std::uint16_t>(c % p), c /= p;
  }
  F->find_primitive();
  F->init_tables();
  return F;
}

std::string Field::name() const {
  std::ostringstream os;
  os << "GF(" << p_;
  if (r_ > 1) os << "^" << r_;
  os << ")";
  return os.str();
}

Elt Field::add_ext(Elt a, Elt b) const {
  const std::uint16_t* da = &digit_[size_t(a) * r_];
  const std::uint16_t* db = &digit_[size_t(b) * r_];
  Elt s = 0;
  for (unsigned i = 0; i < r_; ++i) {
    std::uint32_t d = std::uint32_t(da[i]) + db[i];
    if (d >= p_) d -= p_;
    s += d * pw_[i];
  }
  return s;
}

Elt Field::neg_ext(Elt a) const {
  const std::uint16_t* da = &digit_[size_t(a) * r_];
  Elt s = 0;
  for (unsigned i = 0; i < r_; ++i) s += (da[i] ? p_ - da[i] : 0) * pw_[i];
  return s;
}

Elt Field::mul_slow(Elt a, Elt b) const {
  if (r_ == 1) return reduce(std::uint64_t(a) * b);
  PolyP pa(r_), pb(r_), f(mod_.begin(), mod_.end());
  for (unsigned i = 0; i < r_; ++i) pa[i] = digit_[size_t(a) * r_ + i], pb[i] = digit_[size_t(b) * r_ + i];
  trim(pa);
  trim(pb);
  PolyP c = pmulmod(pa, pb, f, p_);
  Elt s = 0;
  for (size_t i = 0; i < c.size(); ++i) s += static_cast<Elt>(c[i]) * pw_[i];
  return s;
}

void Field::find_primitive() {
  auto fac = factorize(std::uint64_t(q_) - 1);
  auto is_prim = [&](Elt g) {
    for (auto [l, _] : fac) {
      std::uint64_t e = (std::uint64_t(q_) - 1) / l;
      // generic power via slow multiplication
      Elt r = 1, b = g;
      while (e) {
        if (e & 1) r = mul_slow(r, b);
        b = mul_slow(b, b);
        e >>= 1;
      }
      if (r == 1) return false;
    }
    return true;
  };
  if (q_ == 2) {
    prim_ = 1;
    return;
  }
  if (r_ > 1 && is_prim(p_)) {
    prim_ = p_;  // the class of X
    return;
  }
  for (Elt g = 2; g < q_; ++g)
    if (is_prim(g)) {
      prim_ = g;
      return;
    }
  throw BadCharacteristic("no primitive element");
}

void Field::init_tables() {
  if (q_ > (1u << 22)) return;
  std::uint32_t n = q_ - 1;
  log_.assign(q_, 0);
  exp_.assign(r_ > 1 ? 2 * size_t(n) : size_t(n), 0);
  Elt x = 1;
  for (std::uint32_t k = 0; k < n; ++k) {
    exp_[k] = x;
    log_[x] = k;
    x = mul_slow(x, prim_);
  }
  if (r_ > 1)
    for (std::uint32_t k = 0; k < n; ++k) exp_[n + k] = exp_[k];
}

Elt Field::inv(Elt a) const {
  if (a == 0) throw std::domain_error("inverse of zero in " + name());
  if (r_ > 1) return exp_[(q_ - 1 - log_[a]) % (q_ - 1)];
  return static_cast<Elt>(mod_inverse(a, p_));
}

Elt Field::pow(Elt a, std::int64_t e) const {
  if (e < 0) {
    a = inv(a);
    e = -e;
  }
  if (a == 0) return e == 0 ? 1 : 0;
  if (has_log()) return exp_[(std::uint64_t(log_[a]) * (std::uint64_t(e) % (q_ - 1))) % (q_ - 1)];
  Elt r = 1;
  while (e) {
    if (e & 1) r = mul(r, a);
    a = mul(a, a);
    e >>= 1;
  }
  return r;
}

Elt Field::from_int(std::int64_t v) const {
  std::int64_t m = v % std::int64_t(p_);
  if (m < 0) m += p_;
  return static_cast<Elt>(m);
}

std::vector<std::uint32_t> Field::coeffs(Elt a) const {
  if (r_ == 1) return {a};
  std::vector<std::uint32_t> c(r_);
  for (unsigned i = 0; i < r_; ++i) c[i] = digit_[size_t(a) * r_ + i];
  return c;
}

Elt Field::from_coeffs(const std::vector<std::uint32_t>& c) const {
  if (r_ == 1) return c.empty() ? 0 : c[0] % p_;
  Elt s = 0;
  for (unsigned i = 0; i < r_ && i < c.size(); ++i) s += (c[i] % p_) * pw_[i];
  return s;
}

std::uint64_t Field::order(Elt a) const {
  if (a == 0) throw std::domain_error("order of zero");
  std::uint64_t n = std::uint64_t(q_) - 1;
  for (auto [l, e] : factorize(n)) {
    for (int i = 0; i < e; ++i)
      if (pow(a, static_cast<std::int64_t>(n / l)) == 1)
        n /= l;
      else
        break;
  }
  return n;
}

std::string Field::to_string(Elt a) const {
  if (r_ == 1) return std::to_string(a);
  auto c = coeffs(a);
  std::string s;
  for (unsigned i = 0; i < r_; ++i) {
    if (i) s += ",";
    s += std::to_string(c[i]);
  }
  return s;
}

}  // namespace lie
