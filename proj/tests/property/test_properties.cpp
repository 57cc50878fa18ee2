#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"
#include "lie/properties.hpp"

using namespace lie;

namespace {

void report(const PropertyResult& r) {
  CAPTURE(r.name);
  CAPTURE(r.first_failure);
  CHECK(r.trials > 0);
  CHECK(r.failures == 0);
}

}  // namespace

TEST_CASE("membership soundness and closure") {
  for (std::uint64_t seed : {1, 2, 3}) report(prop_membership(seed, 4));
}

TEST_CASE("solve and kernel exactness") {
  for (std::uint64_t seed : {1, 2, 3}) report(prop_solve_kernel(seed, 60));
}

TEST_CASE("rational form conjugacy identity") {
  for (std::uint64_t seed : {1, 2, 3}) report(prop_rational_form(seed, 40));
}

TEST_CASE("Theta subspace and inclusion reversal") {
  for (std::uint64_t seed : {1, 2, 3}) report(prop_theta(seed, 40));
}
