#pragma once
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "lie/mat.hpp"

namespace lie {

// Words in the generators u, s, t.
//   u^3  s^-2        powers
//   u^{s^2}  (..)^t  conjugation a^b = b^-1 a b
//   [a, b]           commutator a^-1 b^-1 a b
//   A = B = C        equalities (checked pairwise)
struct WordNode {
  enum Kind { Gen, Seq, Pow, Conj, Comm } kind = Seq;
  int gen = 0;          // 0 = u, 1 = s, 2 = t
  long long exp = 1;    // Pow
  std::vector<WordNode> kids;
};

struct Relation {
  std::string name;
  std::string text;
  std::vector<WordNode> sides;  // one side means "= 1"
};

Relation parse_relation(const std::string& name, const std::string& text);

struct Presentation {
  int q = 0;
  int delta = 1;
  std::vector<Relation> relations;
};

// Evaluates words on a generator triple with cached generator powers.
class WordEvaluator {
 public:
  WordEvaluator(const Mat& u, const Mat& s, const Mat& t);
  Mat eval(const WordNode& w);
  Mat gen_power(int g, long long e);
  int dim() const { return n_; }

 private:
  Mat inv_of(const WordNode& w);
  FieldPtr F_;
  int n_;
  Mat g_[3];
  Mat ginv_[3];
  bool have_inv_[3] = {false, false, false};
  std::map<std::pair<int, long long>, Mat> cache_;
};

Presentation presentation(int q);
// relations mentioning only u and s
Presentation borel_relations(int q);

// [[a^{g(X)}]]_b = prod_i (a^{g_i})^{b^i}
Mat bracket_eval(const Mat& a, const Mat& b, const Poly& g);

struct RelationCheck {
  std::string name;
  std::string text;
  Mat value;  // lhs * rhs^-1 for an equality, the word itself otherwise
  bool pass = false;
};

struct PresentationReport {
  int q = 0;
  std::vector<RelationCheck> checks;
  bool u_nontrivial = false;
  bool ok() const;
};

// pass means identity; with modulo_scalars, pass means scalar
PresentationReport verify_relations(const Presentation& P, const Mat& u, const Mat& s, const Mat& t,
                                    bool modulo_scalars = false);
PresentationReport verify_presentation(int q, const Mat& u, const Mat& s, const Mat& t,
                                       bool modulo_scalars = false);

struct ReferenceImages {
  FieldPtr F;  // GF(q)
  Elt omega;
  Mat u, s, t;
};
// the 2x2 matrices [[1,1],[0,1]], diag(w^-1, w), [[0,1],[-1,0]] with the standard choice of w
ReferenceImages reference_images(int q);

// The general recipe for odd q > 9 given w with w^2k = w^2l + 1.
struct RecipeData {
  int k = 0, l = 0, delta = 1;
  Poly m;                         // minimal polynomial of w^(2 delta) over GF(p)
  Poly g_omega, g_omega_inv, g_omega_sq;
};
RecipeData recipe_data(const FieldPtr& F, Elt omega, int k, int l);
Presentation recipe_presentation(const FieldPtr& F, Elt omega, int k, int l);

}  // namespace lie
