#include <random>
#include <set>
#include <sstream>

#include "doctest.h"
#include "lie/errors.hpp"
#include "lie/rootdata.hpp"
#include "lie/words.hpp"

using namespace lie;

namespace {

// roots of A_n as 0/1 coefficient vectors, listed by height then by first simple root
std::vector<std::vector<int>> an_positive_roots(int n) {
  std::vector<std::vector<int>> out;
  for (int h = 1; h <= n; ++h)
    for (int s = 0; s + h <= n; ++s) {
      std::vector<int> v(n, 0);
      for (int k = s; k < s + h; ++k) v[k] = 1;
      out.push_back(v);
    }
  return out;
}

Mat random_sl(const FieldPtr& F, int n, std::mt19937_64& rng) {
  std::uniform_int_distribution<Elt> any(0, F->q() - 1);
  for (;;) {
    Mat m(F, n, n);
    for (auto& x : m.data()) x = any(rng);
    Elt d = det(m);
    if (!d) continue;
    Elt di = F->inv(d);
    for (int j = 0; j < n; ++j) m(0, j) = F->mul(m(0, j), di);
    return m;
  }
}

bool ldu_ok(const Mat& m) {
  try {
    ldu(m);
    return true;
  } catch (const NoLDU&) {
    return false;
  }
}

}  // namespace

TEST_CASE("gamma index map") {
  CHECK(gamma(3, 2, 1) == 1);
  CHECK(gamma(3, 1, 2) == -1);
  CHECK(gamma(3, 4, 1) == 6);
  CHECK_THROWS_AS(gamma(3, 2, 2), IndexOutOfRange);
  CHECK_THROWS_AS(gamma(3, 5, 1), IndexOutOfRange);
  CHECK_THROWS_AS(gamma(3, 0, 1), IndexOutOfRange);

  for (int n = 1; n <= 6; ++n) {
    auto pos = an_positive_roots(n);
    std::set<int> hit;
    for (int i = 1; i <= n + 1; ++i)
      for (int j = 1; j <= n + 1; ++j) {
        if (i == j) continue;
        int r = gamma(n, i, j);
        CHECK(hit.insert(r).second);
        // the sum of alpha_{min(i,j)} .. alpha_{max(i,j)-1}
        std::vector<int> v(n, 0);
        for (int k = 0; k < std::abs(i - j); ++k) v[std::min(i, j) - 1 + k] = 1;
        CHECK((r > 0) == (i > j));
        CHECK(pos.at(std::abs(r) - 1) == v);
        CHECK(gamma_pair(n, r) == std::pair{i, j});
      }
    CHECK(int(hit.size()) == n * (n + 1));
  }
}

TEST_CASE("standard representation") {
  auto F = Field::prime(19);
  int n = 3;
  for (int r = 1; r <= an_nroots(n); ++r) {
    Mat p = rho_x(F, n, r, 5), m = rho_x(F, n, -r, 5);
    bool lower = true, upper = true;
    for (int i = 0; i <= n; ++i)
      for (int j = 0; j <= n; ++j) {
        if (i < j && p(i, j)) lower = false;
        if (i > j && m(i, j)) upper = false;
      }
    CHECK(lower);
    CHECK(upper);
    CHECK(rho_x(F, n, r, 3) * rho_x(F, n, r, 4) == rho_x(F, n, r, 7));
  }
  // [x_r(1), x_s(1)] = x_{r+s}(+-1)
  for (int r = -6; r <= 6; ++r)
    for (int s = -6; s <= 6; ++s) {
      if (!r || !s) continue;
      auto [i, j] = gamma_pair(n, r);
      auto [k, l] = gamma_pair(n, s);
      if (j != k || i == l) continue;
      int sum = gamma(n, i, l);
      Mat a = rho_x(F, n, r, 1), b = rho_x(F, n, s, 1);
      Mat c = inverse(a) * inverse(b) * a * b;
      CAPTURE(r);
      CAPTURE(s);
      CHECK((c == rho_x(F, n, sum, 1) || c == rho_x(F, n, sum, F->neg(1))));
    }
  CHECK(rho_h(F, 2, 1, 3) == Mat::diag(F, {3, F->inv(3), 1}));
}

TEST_CASE("words from LDU decompositions") {
  auto F = Field::prime(19);
  CHECK(word_from_matrix(Mat::identity(F, 4)).tokens.empty());
  auto w = word_from_matrix(Mat::diag(F, {7, F->inv(7)}));
  REQUIRE(w.tokens.size() == 1);
  CHECK(w.tokens[0] == AnToken{AnToken::H, 1, 7});
  CHECK_THROWS_AS(word_from_matrix(Mat::from_ints(F, {{0, 1}, {-1, 0}})), NoLDU);

  std::mt19937_64 rng(5);
  for (int dim : {3, 4}) {
    int done = 0;
    while (done < 100) {
      Mat m = random_sl(F, dim, rng);
      if (!ldu_ok(m)) continue;
      ++done;
      auto word = word_from_matrix(m);
      CHECK(rho(word) == m);
      // positive x-terms, then h-terms, then negative x-terms
      int stage = 0;
      for (auto& tk : word.tokens) {
        int st = tk.kind == AnToken::H ? 1 : tk.root > 0 ? 0 : 2;
        CHECK(st >= stage);
        stage = st;
      }
    }
  }
}

TEST_CASE("two-generator words") {
  auto a = parse_gen_word("(ab^2)^2");
  CHECK(a.letters == std::vector<std::pair<int, long long>>{{0, 1}, {1, 2}, {0, 1}, {1, 2}});
  CHECK(parse_gen_word("a a A").letters == std::vector<std::pair<int, long long>>{{0, 1}});
  CHECK(parse_gen_word("(ab)^-1").letters == std::vector<std::pair<int, long long>>{{1, -1}, {0, -1}});
  CHECK_THROWS_AS(parse_gen_word("(ab"), ParseError);
  CHECK_THROWS_AS(parse_gen_word("c"), ParseError);
  auto F = Field::prime(19);
  Mat x = Mat::from_ints(F, {{1, 1}, {0, 1}}), y = Mat::from_ints(F, {{2, 0}, {3, 10}});
  CHECK(eval_gen_word(parse_gen_word("[a,b]"), x, y) == inverse(x) * inverse(y) * x * y);
  CHECK(eval_gen_word(parse_gen_word("B^2 a"), x, y) == inverse(y) * inverse(y) * x);

  int order = 0;
  CHECK(alt6_relators_hold_on_permutations(alt6_relators(), &order));
  CHECK(order == 360);
  // (ab)^5 replaced by (ab)^4 gives no Alt6 quotient
  CHECK_FALSE(alt6_relators_hold_on_permutations({"a^2", "b^4", "(ab)^4", "(ab^2)^5"}));
}

TEST_CASE("A2 x A2 words in F4") {
  auto F = Field::prime(19);
  AdjointGroup G(build_lie_algebra(roots_from_dynkin("F4"), F));
  A2A2Transplant T(G);
  AnWord empty{2, F, {}};
  CHECK(T(empty, empty).is_identity());
  CHECK(transplant_a2a2_to_f4(G, empty, empty).is_identity());
  for (int r : {1, -3})
    CHECK(G.membership(T(AnWord{2, F, {{AnToken::X, r, 4}}}, empty)));

  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 4; ++trial) {
    Mat m = random_sl(F, 3, rng), n = random_sl(F, 3, rng);
    if (!ldu_ok(m) || !ldu_ok(n) || !ldu_ok(m * n)) {
      --trial;
      continue;
    }
    auto wm = word_from_matrix(m), wn = word_from_matrix(n), wmn = word_from_matrix(m * n);
    for (int which : {0, 1})
      CHECK(T.image(which, wm) * T.image(which, wn) == T.image(which, wmn));
    Mat x = T(wm, empty), y = T(empty, wn);
    CHECK(x * y == y * x);
    CHECK(T(wm, wn) == x * y);
  }
}

TEST_CASE("Alt6 in F4(19) from the shipped representation data") {
  auto d = read_rep_data_file(default_rep_data_path());
  CHECK(d.a1.field()->q() == 19);
  auto res = build_alt6_f4(d);
  for (auto& [k, v] : res.checks) {
    CAPTURE(k);
    CHECK(v);
  }
  CHECK(res.checks.count("centre_maps_to_identity"));
  CHECK(res.ok());

  // with the second representation replaced by its dual the centre survives
  RepData dd = d;
  dd.b1 = inverse(d.b1).transpose();
  dd.b2 = inverse(d.b2).transpose();
  auto bad = build_alt6_f4(dd);
  CHECK_FALSE(bad.checks.at("centre_maps_to_identity"));
  CHECK_FALSE(bad.ok());

  RepData wrong = d;
  wrong.relators = {"a^2", "b^4", "(ab)^5", "(ab^2)^5", "(ab^3)^2"};
  CHECK_THROWS_AS(build_alt6_f4(wrong), BadRepData);

  std::ostringstream os;
  write_rep_data(os, d, "round trip");
  std::istringstream is(os.str());
  auto back = read_rep_data(is);
  CHECK(back.a1 == d.a1);
  CHECK(back.b2 == d.b2);
  CHECK(back.relators == d.relators);
  CHECK(back.central == d.central);
}
