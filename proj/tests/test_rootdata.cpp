#include <algorithm>
#include <set>

#include "doctest.h"
#include "lie/rootdata.hpp"

using namespace lie;

TEST_CASE("root counts and shapes") {
  for (int n = 1; n <= 7; ++n) {
    auto rd = roots_from_dynkin("A" + std::to_string(n));
    CHECK(rd.npos == n * (n + 1) / 2);
    // every positive root is a consecutive run of ones
    for (int r = 0; r < rd.npos; ++r) {
      auto& v = rd.roots[r];
      auto first = std::find(v.begin(), v.end(), 1) - v.begin();
      auto last = v.rend() - std::find(v.rbegin(), v.rend(), 1) - 1;
      for (int i = 0; i < n; ++i) CHECK(v[i] == ((i >= first && i <= last) ? 1 : 0));
    }
  }
  auto f4 = roots_from_dynkin("F4");
  CHECK(f4.npos == 24);
  CHECK(f4.roots[f4.highest()] == IVec{2, 3, 4, 2});
  CHECK(roots_from_dynkin("E6").npos == 36);
  CHECK(roots_from_dynkin("E7").npos == 63);
  CHECK(roots_from_dynkin("E8").npos == 120);
  CHECK_THROWS_AS(roots_from_dynkin("G7"), UnsupportedType);
  CHECK_THROWS_AS(roots_from_dynkin("F5"), UnsupportedType);
}

TEST_CASE("root system axioms") {
  for (auto t : {"A3", "F4", "E6", "E7"}) {
    auto rd = roots_from_dynkin(t);
    std::set<int> hi;
    for (int r = 0; r < rd.nroots(); ++r) {
      auto& v = rd.roots[r];
      bool nonneg = std::all_of(v.begin(), v.end(), [](int x) { return x >= 0; });
      bool nonpos = std::all_of(v.begin(), v.end(), [](int x) { return x <= 0; });
      CHECK((nonneg || nonpos));
      CHECK(rd.find(rd.roots[rd.neg(r)]) == rd.neg(r));
      for (int s = 0; s < rd.nroots(); ++s) {
        if (s == r || s == rd.neg(r)) continue;
        int prod = rd.pairing(r, s) * rd.pairing(s, r);
        CHECK((prod >= 0 && prod <= 3));
      }
      // reflections map roots to roots differing by a multiple of the root
      for (int s = 0; s < rd.nroots(); ++s) {
        IVec w = rd.roots[s];
        int k = rd.pairing(s, r);
        for (int i = 0; i < rd.rank; ++i) w[i] -= k * rd.roots[r][i];
        CHECK(rd.find(w) >= 0);
      }
    }
    // unique highest root: no simple root can be added
    int maximal = 0;
    for (int r = 0; r < rd.npos; ++r) {
      bool top = true;
      for (int i = 0; i < rd.rank; ++i)
        if (rd.sum(r, rd.simple(i)) >= 0) top = false;
      maximal += top;
    }
    CHECK(maximal == 1);
    for (auto& g : rd.refl) {
      for (int r = 0; r < rd.nroots(); ++r) CHECK(g[g[r]] == r);
    }
    for (int i = 0; i < rd.rank; ++i) CHECK(rd.cartan[i][i] == 2);
  }
}

TEST_CASE("extraspecial pairs") {
  auto a2 = roots_from_dynkin("A2");
  auto p2 = extraspecial_pairs(a2);
  CHECK(p2.size() == 1);
  CHECK(p2.at(a2.find({1, 1})) == std::make_pair(a2.simple(0), a2.simple(1)));
  auto a3 = roots_from_dynkin("A3");
  auto p3 = extraspecial_pairs(a3);
  CHECK(p3.at(a3.find({1, 1, 1})) == std::make_pair(a3.simple(0), a3.find({0, 1, 1})));
  auto f4 = roots_from_dynkin("F4");
  auto pf = extraspecial_pairs(f4);
  CHECK(pf.size() == 20);
  for (auto& [g, rs] : pf) {
    CHECK(f4.sum(rs.first, rs.second) == g);
    // brute force: no special pair with a smaller first entry
    for (int r = 0; r < rs.first; ++r) {
      int s = -1;
      IVec d(4);
      for (int i = 0; i < 4; ++i) d[i] = f4.roots[g][i] - f4.roots[r][i];
      s = f4.find(d);
      CHECK(!(s >= 0 && f4.positive(s)));
    }
  }
}

TEST_CASE("Weyl group orders") {
  auto a2 = roots_from_dynkin("A2");
  CHECK(WeylGroup(a2).order() == 6);
  // closure of the generating permutations as an independent count
  for (auto t : {"A3", "F4"}) {
    auto rd = roots_from_dynkin(t);
    WeylGroup W(rd);
    std::set<Perm> seen;
    Perm id(rd.nroots());
    for (int i = 0; i < rd.nroots(); ++i) id[i] = i;
    std::vector<Perm> stack{id};
    seen.insert(id);
    while (!stack.empty()) {
      Perm w = stack.back();
      stack.pop_back();
      for (auto& g : rd.refl) {
        Perm x(w.size());
        for (size_t r = 0; r < w.size(); ++r) x[r] = g[w[r]];
        if (seen.insert(x).second) stack.push_back(x);
      }
    }
    CHECK(W.order() == seen.size());
  }
  CHECK(WeylGroup(roots_from_dynkin("F4")).order() == 2ull * 6 * 8 * 12);
}

TEST_CASE("Weyl fingerprints and reflection fixed spaces") {
  auto f4 = roots_from_dynkin("F4");
  WeylGroup W(f4);
  CHECK(reflection_rep_fixed_space(W, {}) == 4);
  CHECK(reflection_rep_fixed_space(W, {0}) == 3);
  auto fp = W.fingerprints();
  std::uint64_t total = 0;
  int twelve = 0;
  for (auto& c : fp) {
    total += c.count;
    if (c.order == 12) {
      ++twelve;
      CHECK(c.fixed_dim == 0);
      CHECK(W.perm_order(W.perm_of_word(c.word)) == 12);
    }
  }
  CHECK(total == 1152);
  CHECK(twelve == 1);
  // braid relations
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j) {
      int m = f4.cartan[i][j] * f4.cartan[j][i];
      int expect = m == 0 ? 2 : m == 1 ? 3 : 4;
      CHECK(W.perm_order(W.perm_of_word({i, j})) == expect);
    }
}

TEST_CASE("A2A2 subsystem of F4") {
  auto f4 = roots_from_dynkin("F4");
  auto s = subsystem_a2a2_f4(f4);
  CHECK(f4.roots[s.first[0]] == IVec{-2, -3, -4, -2});
  CHECK(f4.roots[s.first[1]] == IVec{1, 0, 0, 0});
  CHECK(f4.roots[s.first[2]] == IVec{-1, -3, -4, -2});
  CHECK(f4.roots[s.second[2]] == IVec{0, 0, 1, 1});
  for (auto* sys : {&s.first, &s.second}) {
    std::set<int> closed;
    for (int r : *sys) closed.insert(r), closed.insert(f4.neg(r));
    for (int a : closed)
      for (int b : closed) {
        int c = f4.sum(a, b);
        if (c >= 0) CHECK(closed.count(c));
      }
  }
  // the two subsystems are orthogonal
  for (int a : s.first)
    for (int b : s.second) CHECK(f4.pairing(a, b) == 0);
  CHECK_THROWS_AS(subsystem_a2a2_f4(roots_from_dynkin("E6")), WrongType);
}

TEST_CASE("E7 Weyl classes of order 18 and 14") {
  WeylGroup W(roots_from_dynkin("E7"));
  auto fp = W.fingerprints();
  std::uint64_t total = 0;
  int o18 = 0, o14 = 0;
  for (auto& c : fp) {
    total += c.count;
    if (c.order == 18 || c.order == 14) {
      (c.order == 18 ? o18 : o14) += 1;
      CHECK(c.fixed_dim == 0);
    }
  }
  CHECK(total == 2ull * 6 * 8 * 10 * 12 * 14 * 18);
  CHECK(o18 == 1);
  CHECK(o14 == 1);
}
