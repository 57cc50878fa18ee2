#pragma once
#include <cstdint>
#include <map>
#include <memory>
#include <random>
#include <string>
#include <vector>

#include "lie/psl2.hpp"
#include "lie/torus.hpp"

namespace lie {

// e = P^-1 A P with A the Chevalley involution of the adapted basis
Mat build_inverting_involution(const LieAlgebra& L, const Mat& s, const ChevBasisChange& change);

// Linear span of C(s), stored in adapted coordinates: c_i = P^-1 basis[i] P.
struct CentralizerSpan {
  std::vector<Mat> basis;
  Mat P, Pinv;
  std::string source;
  int samples = 0;
  Mat element(int i) const { return Pinv * basis[i] * P; }
  Mat combine(const Vec& x) const;  // sum x_i c_i in reference coordinates
};

// sample_gens(rng) returns a random element of C(s) in adapted coordinates
CentralizerSpan centralizer_span(const Mat& P, const std::function<Mat(std::mt19937_64&)>& sample,
                                 std::uint64_t seed, const std::string& source, int stable_rounds = 8);
// torus of the adapted basis, plus the root A1 on the fixed roots when present
CentralizerSpan torus_centralizer_span(const AdjointGroup& G, const Mat& P, const std::vector<int>& fixed_roots,
                                       std::uint64_t seed);

// decomposition: module dimension j -> multiplicity, j = 0 meaning a trivial line
int span_dimension_bound(const std::map<int, int>& decomposition, int dim);
// restriction of the algebra to T (no fixed roots) or to T.A1 (fixed roots +-r)
std::map<int, int> module_decomposition(const RootDatum& rd, const std::vector<int>& fixed_roots);

// rows: (fixed vector, coordinate), columns: span elements
struct TuSystem {
  Mat matrix;
  int equations = 0, unknowns = 0;
};
TuSystem assemble_tu_system(const Mat& u, const Mat& e, const CentralizerSpan& span,
                            const std::vector<Vec>& fixed_vectors);
// re-check v (e u c e u - u^-1 c e) = 0 directly
bool tu_condition_holds(const Mat& u, const Mat& e, const Mat& c, const std::vector<Vec>& fixed_vectors);

// roots r whose line is fixed by the diagonal element ds
std::vector<int> fixed_roots_of(const LieAlgebra& L, const Mat& ds);
// fixed vectors used in the (tu)^3 system: the Cartan part of the adapted basis killed by the fixed roots
std::vector<Vec> adapted_fixed_vectors(const LieAlgebra& L, const Mat& P, const std::vector<int>& fixed_roots);

struct SolutionInfo {
  Mat t;
  bool member = false;
  PresentationReport relations;
  std::map<std::string, std::string> traces;
};

struct CaseReport {
  int q = 0;
  std::string type;
  std::string field;
  std::uint64_t seed = 0;
  std::map<std::string, long long> dims;
  std::map<std::string, bool> checks;
  std::map<std::string, std::string> info;
  std::vector<SolutionInfo> solutions;
  Mat u, s, e;
  double seconds = 0;
  bool ok() const;
  std::string json(bool with_matrices = false) const;
};

struct DriverOptions {
  std::uint64_t seed = 0;  // 0 = the shipped default for the case
  int threads = 1;
  bool verbose = false;
};

CaseReport solve_case_25(const DriverOptions& o = {});
CaseReport solve_case_27(const DriverOptions& o = {});
CaseReport solve_case_37(const DriverOptions& o = {});
CaseReport solve_case_29(const DriverOptions& o = {});
CaseReport solve_case(int q, const DriverOptions& o = {});  // UnsupportedQ

// g in <b> U <b> t <b>? B given by its elements' fingerprints
class BorelTable {
 public:
  // B = {u^a s^b}, U = <u, u^s, ...> abelian normal, listed explicitly
  BorelTable(const std::vector<Mat>& elements, std::uint64_t seed);
  bool contains(const Mat& g) const;
  // is g in B t B ?
  bool in_double_coset(const Mat& g, const Mat& t) const;
  size_t size() const { return elems_.size(); }
  const std::vector<Mat>& elements() const { return elems_; }

 private:
  std::vector<Mat> elems_, inv_;
  Vec probe_;
  std::map<Vec, std::vector<int>> table_;
};
// all elements of <gens> (small groups only)
std::vector<Mat> enumerate_group(const std::vector<Mat>& gens, size_t limit);

std::string trace_str(const FieldPtr& F, Elt x);

}  // namespace lie
