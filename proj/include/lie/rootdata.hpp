#pragma once
#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "lie/errors.hpp"

namespace lie {

using IVec = std::vector<int>;
using IMat = std::vector<IVec>;
using Perm = std::vector<int>;

// Roots stored as simple-root coefficient vectors. Indices 0..N-1 are the
// positive roots (height, then coefficients descending), N..2N-1 their negatives.
struct RootDatum {
  std::string type;
  int rank = 0;
  IMat cartan;          // cartan[i][j] = <alpha_j, alpha_i^vee>
  IVec simple_len;      // squared lengths of simple roots, short = 1
  std::vector<IVec> roots;
  std::vector<int> height;
  int npos = 0;
  std::map<IVec, int> index;

  int nroots() const { return 2 * npos; }
  int neg(int r) const { return r < npos ? r + npos : r - npos; }
  bool positive(int r) const { return r < npos; }
  int find(const IVec& v) const;                      // -1 if not a root
  int sum(int r, int s) const;                        // index of r+s or -1
  int simple(int i) const { return simple_idx[i]; }   // index of alpha_i
  int form2(const IVec& a, const IVec& b) const;      // twice the invariant form
  int len2(int r) const { return form2(roots[r], roots[r]) / 2; }  // squared length, short = 1
  int pairing(int r, int s) const;                    // <r, s^vee>
  int pairing_simple(int r, int i) const;             // <r, alpha_i^vee>
  int highest() const { return npos - 1; }
  // reflection in alpha_i applied to a root index
  int reflect(int i, int r) const { return refl[i][r]; }

  std::vector<int> simple_idx;
  std::vector<Perm> refl;
};

RootDatum roots_from_dynkin(const std::string& type);

// gamma -> (r, s) with r + s = gamma, r minimal in the stored order
std::map<int, std::pair<int, int>> extraspecial_pairs(const RootDatum& rd);

struct WeylClass {
  int order = 0;
  std::vector<int> cycle_type;  // sorted cycle lengths on roots
  int trace = 0;                // trace in the reflection representation
  std::uint64_t count = 0;      // elements with this fingerprint
  std::vector<int> word;        // representative, simple reflections applied left to right
  int fixed_dim = -1;
  bool operator<(const WeylClass& o) const;
};

class WeylGroup {
 public:
  explicit WeylGroup(const RootDatum& rd);
  const RootDatum& datum() const { return rd_; }
  const std::vector<Perm>& generators() const { return rd_.refl; }

  // visit every element once; perm maps root indices, word lists the simple reflections
  // applied in order (first entry acts first)
  void enumerate(const std::function<void(const Perm&, const std::vector<int>&)>& visit) const;
  std::uint64_t order() const;
  std::vector<WeylClass> fingerprints() const;

  Perm perm_of_word(const std::vector<int>& word) const;
  IMat reflection_matrix(const Perm& w) const;  // row j = coefficients of w(alpha_j)
  int fixed_space_dim(const Perm& w) const;
  static int perm_order(const Perm& w);
  static std::vector<int> cycle_type(const Perm& w);

 private:
  RootDatum rd_;
};

int reflection_rep_fixed_space(const WeylGroup& W, const std::vector<int>& word);

struct A2A2 {
  std::vector<int> first;   // -a0, a1, a1-a0
  std::vector<int> second;  // a3, a4, a3+a4
};
A2A2 subsystem_a2a2_f4(const RootDatum& rd);

// exact rank of an integer matrix
int int_rank(IMat m);

}  // namespace lie
