#pragma once
#include <array>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "lie/mat.hpp"

namespace lie {

// Symmetric trilinear form, one constant per sorted index triple.
class TriForm {
 public:
  using Key = std::array<int, 3>;
  TriForm() = default;
  TriForm(FieldPtr F, int dim) : F_(std::move(F)), dim_(dim) {}

  const FieldPtr& field() const { return F_; }
  int dim() const { return dim_; }
  Elt get(int i, int j, int k) const;
  void set(int i, int j, int k, Elt v);
  const std::map<Key, Elt>& constants() const { return c_; }
  size_t monomials() const { return c_.size(); }

  Elt operator()(const Vec& u, const Vec& v, const Vec& w) const;
  // c_i = f(e_i, u, v)
  Vec contract(const Vec& u, const Vec& v) const;
  TriForm scaled(Elt s) const;
  bool operator==(const TriForm& o) const { return dim_ == o.dim_ && c_ == o.c_; }

 private:
  FieldPtr F_;
  int dim_ = 0;
  std::map<Key, Elt> c_;
};

// Basis x_1..x_6, x'_1..x'_6, x_12, x_13, .., x_56 (0-based positions 0..26).
int dickson_x(int i);
int dickson_xp(int i);
int dickson_xx(int i, int j);  // i != j; sign of x_ij = -x_ji is separate
std::string dickson_label(int pos);
TriForm dickson_form(const FieldPtr& F);  // BadCharacteristic in characteristic 2, 3

// P(x, y) = f(x, y, y) / 2, T(x) = f(x, x, x) / 6
struct FormPT {
  const TriForm& f;
  Elt P(const Vec& x, const Vec& y) const;
  Elt T(const Vec& x) const;
};
FormPT derive_P_T(const TriForm& f);

// rows of U span the subspace; results are row bases
std::vector<Vec> theta(const std::vector<Vec>& U, const TriForm& f);
std::vector<Vec> delta(const std::vector<Vec>& U, const TriForm& f);

// group acting on row vectors
struct ModuleRep {
  FieldPtr F;
  int dim = 0;
  std::vector<Mat> gens;
  static ModuleRep from(std::vector<Mat> gens);
};
ModuleRep read_module(std::istream& is);
void write_module(std::ostream& os, const ModuleRep& m);

struct TriformSolve {
  std::vector<TriForm> forms;
  int candidates = 0;       // constants left after diagonal pruning
  int diagonal_used = 0;
  int rounds = 0;
  int held_out_words = 0;
  bool held_out_ok = false;
};
TriformSolve invariant_triforms(const ModuleRep& rep, std::uint64_t seed = 1, int held_out = 20);
bool form_invariant(const TriForm& f, const Mat& g);

// fixed space of the generators on the k-th symmetric power of the dual module
int sym_power_fixed_dim(const ModuleRep& rep, int k);
// number of monomials of degree k in n variables
size_t sym_power_dim(int n, int k);

// {X : gA X = X gB}
std::vector<Mat> hom_space(const ModuleRep& A, const ModuleRep& B);
// rows: coefficients of each A element over B; NotContained
Mat restrict_compare(const std::vector<Mat>& A, const std::vector<Mat>& B);

// action on Lambda^2 V / <omega> for a symplectic 8-dim module; FormNotPreserved
ModuleRep wedge2_mod_form(const ModuleRep& rep);
// the invariant alternating form, or an empty matrix
Mat invariant_alternating_form(const ModuleRep& rep);

// Sp_{2n}(q) on its natural module in the basis e_1..e_n, f_1..f_n:
// root elements of the simple roots and their negatives, then torus generators
ModuleRep symplectic_group(const FieldPtr& F, int n);

void write_triform(std::ostream& os, const TriForm& f);
TriForm read_triform(std::istream& is);

}  // namespace lie
