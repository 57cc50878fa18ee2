#pragma once
#include <cstdint>
#include <string>
#include <vector>

namespace lie {

struct PropertyResult {
  std::string name;
  long long trials = 0;
  long long failures = 0;
  std::string first_failure;
  bool ok() const { return trials > 0 && failures == 0; }
};

// random words in root elements pass, products and inverses pass, perturbations fail
PropertyResult prop_membership(std::uint64_t seed, int trials);
// kernel, left kernel and affine solutions satisfy their equations with the right dimensions
PropertyResult prop_solve_kernel(std::uint64_t seed, int trials);
// P A P^-1 is the block companion form and the blocks multiply to the characteristic polynomial
PropertyResult prop_rational_form(std::uint64_t seed, int trials);
// Theta of a span is a subspace and U <= V implies Theta(V) <= Theta(U)
PropertyResult prop_theta(std::uint64_t seed, int trials);

std::vector<PropertyResult> run_property_suites(std::uint64_t seed);

}  // namespace lie
