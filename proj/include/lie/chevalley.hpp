#pragma once
#include <array>
#include <map>
#include <memory>
#include <vector>

#include "lie/mat.hpp"
#include "lie/rootdata.hpp"

namespace lie {

// Lie algebra over GF(q) in a Chevalley basis. Basis order: e_r for negative roots
// (most negative first), then h'_1..h'_l with [h'_i, e_s] = c_i(s) e_s, then e_r for
// positive roots ascending. Positions k and dim-1-k hold opposite roots.
class LieAlgebra {
 public:
  LieAlgebra(const RootDatum& rd, FieldPtr F);

  const RootDatum& rd() const { return rd_; }
  const FieldPtr& field() const { return F_; }
  int dim() const { return dim_; }
  int rank() const { return rd_.rank; }
  int npos() const { return rd_.npos; }

  int pos(int root) const { return root < rd_.npos ? rd_.npos + rd_.rank + root : 2 * rd_.npos - 1 - root; }
  int cartan_pos(int i) const { return rd_.npos + i; }
  // root index at a basis position, -1 on the Cartan block
  int root_at(int p) const {
    if (p < rd_.npos) return 2 * rd_.npos - 1 - p;
    if (p < rd_.npos + rd_.rank) return -1;
    return p - rd_.npos - rd_.rank;
  }
  int opposite(int p) const { return dim_ - 1 - p; }

  // integer structure constant N_{r,s}; 0 when r+s is not a root
  int N(int r, int s) const { return ntab_[size_t(r) * rd_.nroots() + s]; }
  // [b_i, b_j] as (position, integer coefficient) terms
  const std::vector<std::pair<int, int>>& bracket_basis(int i, int j) const { return br_[size_t(i) * dim_ + j]; }
  // coefficients of h_r = [e_r, e_-r] in the h' basis
  IVec coroot(int r) const;

  Vec basis(int i) const;
  Vec bracket(const Vec& x, const Vec& y) const;
  // x * ad(v) = [v, x]
  Mat ad(const Vec& v) const;
  const Mat& ad_basis(int i) const { return adb_[i]; }
  Mat killing_form() const;
  // x -> [x, y] for fixed y, as a matrix acting on rows: x * M = [x, y]
  Mat right_mult(const Vec& y) const;

  // inject a fault into the structure constants (for negative testing)
  void tamper(int r, int s, int value);

 private:
  void build_tables();
  RootDatum rd_;
  FieldPtr F_;
  int dim_;
  std::vector<int> ntab_;
  std::vector<std::vector<std::pair<int, int>>> br_;
  std::vector<Mat> adb_;
};

std::shared_ptr<const LieAlgebra> build_lie_algebra(const RootDatum& rd, FieldPtr F);

// structure constants over the integers by the extraspecial recursion
std::vector<int> structure_constants(const RootDatum& rd);
// chain length p for the pair: largest k with s - k r a root
int chain_p(const RootDatum& rd, int r, int s);

Mat ad(const LieAlgebra& L, const Vec& x);
std::vector<Vec> fixed_space(const Mat& g);
Mat chevalley_involution(const LieAlgebra& L);
Mat killing_form(const LieAlgebra& L);

// true if [x,y] g = [x g, y g] for all basis pairs (exhaustive)
bool preserves_bracket(const LieAlgebra& L, const Mat& g);

// Jacobi on basis triples; returns number of violations
long long jacobi_violations(const LieAlgebra& L, const std::vector<std::array<int, 3>>& triples);

// new Chevalley basis in the reference labelling: row k of matrix is the new vector
// playing the role of basis vector k
struct ChevBasisChange {
  Mat matrix;
  std::vector<int> target_order;  // new root line assigned to each reference root
};

// Chevalley basis made of eigenvectors of a semisimple s
ChevBasisChange adapted_chevalley_basis(const LieAlgebra& L, const Mat& s, std::uint64_t seed = 1);
// same, with the Cartan part spanning a given split toral subalgebra
ChevBasisChange adapted_chevalley_basis_for(const LieAlgebra& L, const std::vector<Vec>& H, std::uint64_t seed = 1);

}  // namespace lie
