#pragma once
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "lie/adjgroup.hpp"
#include "lie/zmod.hpp"

namespace lie {

// Element of N(T) stored compactly: root line r goes to scal[r] * e_{perm[r]},
// the Cartan block is an explicit rank x rank matrix.
struct NElem {
  Perm perm;
  Vec scal;
  Mat cartan;
};
NElem nelem_identity(const AdjointGroup& G);
NElem nelem_of(const AdjointGroup& G, const Mat& g);  // NotNormalizing if g is not monomial on roots
NElem nelem_mul(const FieldPtr& F, const NElem& a, const NElem& b);
NElem nelem_pow(const FieldPtr& F, const NElem& a, std::uint64_t e);
bool nelem_is_identity(const NElem& a);
Mat nelem_mat(const AdjointGroup& G, const NElem& a);
std::uint64_t nelem_order(const FieldPtr& F, const NElem& a);

Perm perm_inverse(const Perm& p);
int perm_order(const Perm& p);

// Torus elements by exponent vectors b: the value on alpha_k is prim^b_k.
// conj_action(p) gives N with coords(s^-1 t s) = N coords(t) for s permuting roots by p.
IMat conj_action(const RootDatum& rd, const Perm& p);
std::vector<I64> torus_coords(const AdjointGroup& G, const Mat& t);
Mat torus_from_coords(const AdjointGroup& G, const std::vector<I64>& b);

struct TorusLayer {
  std::uint64_t prime = 0;
  int level = 1;
  std::vector<Mat> gens;  // h_i(mu), mu of order prime^level
};
// FieldTooSmall if prime^level does not divide |k|-1
TorusLayer torus_layer(const AdjointGroup& G, std::uint64_t prime, int level = 1);

// s-bar with h_i^s = prod_j h_j^{sbar_ij}, over GF(prime)
Mat action_on_torus_layer(const AdjointGroup& G, const Mat& s, const TorusLayer& layer);
// exponent vector z of a vector in the rational-form block with minimal polynomial target
Vec find_u_exponents(const Mat& sbar, const Poly& target);
Mat layer_element(const AdjointGroup& G, const TorusLayer& layer, const Vec& z);
Mat find_u(const AdjointGroup& G, const Mat& sbar, const TorusLayer& layer, const Poly& target);

struct LayerCount {
  std::uint64_t prime = 0;
  std::vector<std::uint64_t> counts;  // |C(s) meet T_{prime,j}| for j = 1, 2, ...
  std::uint64_t stable = 1;
};
struct TorusCentralizer {
  std::vector<LayerCount> layers;
  std::uint64_t order = 1;       // product of the stable counts
  std::int64_t det_check = 0;    // |det(N - 1)| over Z
};
TorusCentralizer centralizer_in_torus_layers(const WeylGroup& W, const Perm& w,
                                             const std::vector<std::uint64_t>& primes);

// random elements of <n_i> with given matrix order and Weyl image order
struct WeylLift {
  NElem elem;
  Mat mat;
  std::vector<int> word;
  std::uint64_t seed = 0;
  int tries = 0;
};
WeylLift random_weyl_lift(const AdjointGroup& G, int order, std::uint64_t seed,
                          const std::function<bool(const WeylLift&)>& accept = nullptr,
                          int max_tries = 200000);

// N_{N(T)}(B) for B = <A, s> with A a subgroup of T and s in N(T), <s> meeting T trivially.
struct NormalizerResult {
  Count order = 0;
  Count b_order = 0;
  std::uint64_t index = 0;
  // elements of N outside B generating N modulo B, each checked as a matrix
  std::vector<Mat> extra_gens;
  int weyl_candidates = 0;
};
NormalizerResult normalizer_in_torus_normalizer(const WeylGroup& W, const AdjointGroup& G,
                                                const std::vector<Mat>& a_gens, const Mat& s);

}  // namespace lie
