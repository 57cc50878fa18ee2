#pragma once
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace lie {

using I64 = std::int64_t;
using I64Mat = std::vector<std::vector<I64>>;
using Count = unsigned __int128;

// Solutions of A x = c over Z/n, x in (Z/n)^cols. Elimination runs separately
// over each Z/p^e (a local ring: pivot on minimal valuation) and is glued by CRT.
struct Congruence {
  Count count = 0;                       // number of solutions
  std::optional<std::vector<I64>> particular;
  std::vector<std::vector<I64>> kernel_gens;  // generate the homogeneous solutions
};
Congruence solve_congruence(const I64Mat& a, const std::vector<I64>& c, I64 n);
Count count_kernel(const I64Mat& a, I64 n);

I64 mod(I64 a, I64 n);
std::string count_str(Count c);

}  // namespace lie
