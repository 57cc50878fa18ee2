#pragma once
#include <cstdint>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "lie/chevalley.hpp"

namespace lie {

// Adjoint Chevalley group acting on rows of the Lie algebra.
class AdjointGroup {
 public:
  explicit AdjointGroup(std::shared_ptr<const LieAlgebra> L);

  const LieAlgebra& L() const { return *L_; }
  std::shared_ptr<const LieAlgebra> algebra() const { return L_; }
  const FieldPtr& field() const { return L_->field(); }
  int dim() const { return L_->dim(); }
  int rank() const { return L_->rank(); }

  Mat x(int root, Elt t) const;                 // exp(t ad e_r)
  Mat h(int i, Elt lambda) const;               // e_s -> lambda^<s, alpha_i^vee> e_s
  Mat h_root(int root, Elt lambda) const;       // h_r(lambda)
  Mat n(int root) const;                        // x_r(1) x_-r(-1) x_r(1)
  // diagonal element with the given values on the simple roots
  Mat torus(const Vec& simple_values) const;
  // values on simple roots of a diagonal element
  Vec torus_values(const Mat& t) const;
  Mat identity() const { return Mat::identity(field(), dim()); }

  // automorphism test on the generators e_{+-alpha_i}
  bool membership(const Mat& g) const;
  // one random-vector necessary condition, much cheaper than membership
  bool quick_filter(const Mat& g, std::mt19937_64& rng) const;
  // a*g for the generator a = e_{+-alpha_i}, needed by the test
  const std::vector<Vec>& generators() const { return gens_; }

  // root permutation of a monomial-on-roots element, -1 if g is not monomial on root lines
  std::optional<Perm> root_perm(const Mat& g) const;

 private:
  std::shared_ptr<const LieAlgebra> L_;
  std::vector<Vec> gens_;
};

struct GHN {
  std::vector<Mat> xplus, xminus, h, n;
};
GHN ghn(const AdjointGroup& G, Elt lambda);

struct GHNReport {
  bool h_commute = true;
  bool n_normalise = true;
  bool x_fix = true;
  bool members = true;
  bool ok() const { return h_commute && n_normalise && x_fix && members; }
};
GHNReport verify_ghn(const AdjointGroup& G, const GHN& g);

bool membership(const AdjointGroup& G, const Mat& g);

}  // namespace lie
