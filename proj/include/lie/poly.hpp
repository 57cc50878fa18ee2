#pragma once
#include <string>
#include <utility>
#include <vector>

#include "lie/field.hpp"

namespace lie {

// Univariate polynomial, coefficients low-to-high, no trailing zeros.
class Poly {
 public:
  Poly() = default;
  explicit Poly(FieldPtr F) : F_(std::move(F)) {}
  Poly(FieldPtr F, std::vector<Elt> c) : F_(std::move(F)), c_(std::move(c)) { trim(); }
  static Poly constant(FieldPtr F, Elt a) { return Poly(F, {a}); }
  static Poly x(FieldPtr F) { return Poly(F, {0, 1}); }
  // monic X - a
  static Poly linear(FieldPtr F, Elt a) { return Poly(F, {F->neg(a), 1}); }
  // from signed integer coefficients (low-to-high)
  static Poly from_ints(FieldPtr F, const std::vector<long long>& c);

  const FieldPtr& field() const { return F_; }
  const std::vector<Elt>& coeffs() const { return c_; }
  int deg() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  Elt operator[](size_t i) const { return i < c_.size() ? c_[i] : 0; }
  Elt lead() const { return c_.empty() ? 0 : c_.back(); }
  Elt eval(Elt x) const;
  Poly monic() const;
  bool operator==(const Poly& o) const { return c_ == o.c_; }
  bool operator!=(const Poly& o) const { return c_ != o.c_; }
  std::string to_string(const char* var = "X") const;

  void trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
  }

 private:
  FieldPtr F_;
  std::vector<Elt> c_;
};

Poly operator+(const Poly& a, const Poly& b);
Poly operator-(const Poly& a, const Poly& b);
Poly operator*(const Poly& a, const Poly& b);
Poly scale(const Poly& a, Elt s);
std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b);
Poly operator%(const Poly& a, const Poly& b);
Poly operator/(const Poly& a, const Poly& b);
Poly gcd(Poly a, Poly b);  // monic
Poly powmod(Poly base, unsigned long long e, const Poly& m);
Poly derivative(const Poly& a);

// all distinct roots lying in the coefficient field
std::vector<Elt> roots_in_field(const Poly& f);
// monic irreducible factors with multiplicity
std::vector<std::pair<Poly, int>> factor(const Poly& f);
// minimal polynomial over GF(p) of an element of GF(p^r); coefficients in the prime subfield
Poly min_poly_over_prime(const FieldPtr& F, Elt x);
// Lagrange interpolation through distinct nodes
Poly interpolate(const FieldPtr& F, const std::vector<Elt>& xs, const std::vector<Elt>& ys);
// cyclotomic polynomial over the field
Poly cyclotomic(const FieldPtr& F, unsigned n);

// discrete logarithm by baby-step giant-step; throws NotInSubgroup
std::uint64_t discrete_log(const FieldPtr& F, Elt base, Elt target);

}  // namespace lie
