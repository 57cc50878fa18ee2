#pragma once
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "lie/errors.hpp"

namespace lie {

using Elt = std::uint32_t;

class Field;
using FieldPtr = std::shared_ptr<const Field>;

// GF(p^r). Elements are integers in [0, q): for r > 1 the base-p digits are
// the coefficients of a residue modulo the stored irreducible modulus.
class Field {
 public:
  static FieldPtr prime(std::uint32_t p);
  static FieldPtr extension(std::uint32_t p, unsigned r);
  // modulus: monic, low-to-high, length r+1
  static FieldPtr extension(std::uint32_t p, const std::vector<std::uint32_t>& modulus);

  std::uint32_t p() const { return p_; }
  unsigned r() const { return r_; }
  std::uint32_t q() const { return q_; }
  bool is_prime() const { return r_ == 1; }
  const std::vector<std::uint32_t>& modulus() const { return mod_; }
  Elt prim() const { return prim_; }
  std::string name() const;

  Elt zero() const { return 0; }
  Elt one() const { return 1; }

  Elt add(Elt a, Elt b) const {
    if (r_ == 1) {
      Elt s = a + b;
      return s >= p_ ? s - p_ : s;
    }
    return add_ext(a, b);
  }
  Elt sub(Elt a, Elt b) const {
    if (r_ == 1) return a >= b ? a - b : a + p_ - b;
    return add_ext(a, neg(b));
  }
  Elt neg(Elt a) const {
    if (r_ == 1) return a == 0 ? 0 : p_ - a;
    return neg_ext(a);
  }
  Elt mul(Elt a, Elt b) const {
    if (r_ == 1) return reduce(std::uint64_t(a) * b);
    if (a == 0 || b == 0) return 0;
    return exp_[log_[a] + log_[b]];
  }
  Elt inv(Elt a) const;
  Elt div(Elt a, Elt b) const { return mul(a, inv(b)); }
  Elt pow(Elt a, std::int64_t e) const;

  // Barrett reduction of x < p^2 (prime fields)
  Elt reduce(std::uint64_t x) const {
    std::uint64_t qh = static_cast<std::uint64_t>((static_cast<unsigned __int128>(x) * barrett_) >> 64);
    std::uint64_t rr = x - qh * p_;
    return static_cast<Elt>(rr >= p_ ? rr - p_ : rr);
  }
  Elt from_int(std::int64_t v) const;
  // prime-subfield embedding of a residue
  Elt from_prime(std::uint32_t v) const { return v % p_; }
  bool in_prime_subfield(Elt a) const { return a < p_; }

  // coefficients of an element as a polynomial in the generator of the modulus
  std::vector<std::uint32_t> coeffs(Elt a) const;
  Elt from_coeffs(const std::vector<std::uint32_t>& c) const;
  // class of X modulo the modulus; prime fields return prim()
  Elt gen() const { return r_ == 1 ? prim_ : p_; }

  bool has_log() const { return !log_.empty(); }
  // log base prim(); requires a != 0 and has_log()
  std::uint32_t log(Elt a) const { return log_[a]; }
  Elt exp(std::uint64_t k) const { return exp_[k % (q_ - 1)]; }

  // multiplicative order of a nonzero element
  std::uint64_t order(Elt a) const;

  std::string to_string(Elt a) const;

 private:
  Field() = default;
  void init_tables();
  void find_primitive();
  Elt add_ext(Elt a, Elt b) const;
  Elt neg_ext(Elt a) const;
  Elt mul_slow(Elt a, Elt b) const;

  std::uint32_t p_ = 0;
  unsigned r_ = 1;
  std::uint32_t q_ = 0;
  std::uint64_t barrett_ = 0;
  std::vector<std::uint32_t> mod_;
  Elt prim_ = 0;
  std::vector<std::uint32_t> log_;
  std::vector<Elt> exp_;      // length 2(q-1) for r > 1 so log sums index directly
  std::vector<std::uint16_t> digit_;  // r digits per element, r > 1
  std::vector<std::uint32_t> pw_;     // p^i
};

// prime factorization by trial division (small numbers only)
std::vector<std::pair<std::uint64_t, int>> factorize(std::uint64_t n);
bool is_prime_u64(std::uint64_t n);
std::uint64_t gcd_u64(std::uint64_t a, std::uint64_t b);
std::int64_t mod_inverse(std::int64_t a, std::int64_t m);  // throws if not invertible

}  // namespace lie
