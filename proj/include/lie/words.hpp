#pragma once
#include <array>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "lie/adjgroup.hpp"

namespace lie {

// Roots of A_n are numbered 1..N by height then start, negatives -1..-N.
int gamma(int n, int i, int j);  // 1 <= i != j <= n+1
std::pair<int, int> gamma_pair(int n, int root);
int an_nroots(int n);

struct AnToken {
  enum Kind { X, H } kind = X;
  int root = 0;  // signed root for X, simple root 1..n for H
  Elt t = 0;
  bool operator==(const AnToken& o) const { return kind == o.kind && root == o.root && t == o.t; }
};

struct AnWord {
  int n = 0;
  FieldPtr F;
  std::vector<AnToken> tokens;
  std::string to_string() const;
};

// standard representation on F^{n+1}
Mat rho_x(const FieldPtr& F, int n, int root, Elt t);
Mat rho_h(const FieldPtr& F, int n, int simple, Elt t);
Mat rho(const AnWord& w);

// words for L, D and U of an LDU decomposition, in that order; throws NoLDU
AnWord word_from_matrix(const Mat& M);

// x-terms of A2 to F4 on the two orthogonal A2 subsystems
class A2A2Transplant {
 public:
  explicit A2A2Transplant(const AdjointGroup& G);
  Mat operator()(const AnWord& a, const AnWord& b) const;
  Mat image(int which, const AnWord& w) const;
  // F4 root and sign for A2 root r of subsystem `which`
  int root(int which, int r) const;
  int sign(int which, int r) const;
  int h_exponent() const { return hexp_; }

 private:
  const AdjointGroup& G_;
  std::array<std::array<int, 7>, 2> root_{}, sign_{};
  int hexp_ = 1;
};

Mat transplant_a2a2_to_f4(const AdjointGroup& G, const AnWord& a, const AnWord& b);

// Words in two generators a, b with inverses A, B.  Accepted syntax:
//   ab^2    (ab)^5    a^-1    [a,b]
struct GenWord {
  std::vector<std::pair<int, long long>> letters;  // (generator, exponent)
};
GenWord parse_gen_word(const std::string& text);
Mat eval_gen_word(const GenWord& w, const Mat& a, const Mat& b);

// the relators of the reference presentation of Alt6, validated on permutations
std::vector<std::string> alt6_relators();
bool alt6_relators_hold_on_permutations(const std::vector<std::string>& relators, int* group_order = nullptr);

struct RepData {
  Mat a1, a2, b1, b2;
  std::vector<std::string> relators;
  std::string central;  // a word evaluating to a nontrivial scalar
};
RepData read_rep_data(std::istream& is);
RepData read_rep_data_file(const std::string& path);
void write_rep_data(std::ostream& os, const RepData& d, const std::string& comment);
std::string default_rep_data_path();

struct Alt6Result {
  Mat g1, g2;
  std::map<std::string, bool> checks;
  std::map<std::string, std::string> traces;
  AnWord words[4];
  bool ok() const;
};
// throws BadRepData if the SL3 data fails its own relations
Alt6Result build_alt6_f4(const RepData& d);

}  // namespace lie
