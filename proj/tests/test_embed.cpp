#include <set>

#include "doctest.h"
#include "json.hpp"
#include "lie/embed.hpp"

using namespace lie;

namespace {

AdjointGroup group_of(const CaseReport& r) {
  return AdjointGroup(build_lie_algebra(roots_from_dynkin(r.type), r.u.field()));
}

}  // namespace

TEST_CASE("q = 25 in F4(61)") {
  auto r = solve_case(25);
  CHECK(r.ok());
  CHECK(r.type == "F4");
  CHECK(r.dims.at("equations") == 208);
  CHECK(r.dims.at("unknowns") == 49);
  CHECK(r.dims.at("nullspace") == 1);
  REQUIRE(r.solutions.size() == 1);

  // recheck the solution from scratch
  auto G = group_of(r);
  const Mat& t = r.solutions[0].t;
  CHECK(G.membership(r.u));
  CHECK(G.membership(r.s));
  CHECK(G.membership(t));
  CHECK((t * t).is_identity());
  CHECK(verify_presentation(25, r.u, r.s, t).ok());
  CHECK_FALSE(verify_presentation(25, r.u, r.s, r.u).ok());

  auto j = nlohmann::json::parse(r.json(true));
  CHECK(j["solutions"] == 1);
  CHECK(j["solution_details"][0]["t"].size() == 52);
}

TEST_CASE("q = 25 with another seed and more threads") {
  auto a = solve_case(25);
  DriverOptions o;
  o.seed = 7;
  o.threads = 2;
  auto b = solve_case(25, o);
  CHECK(b.ok());
  REQUIRE(b.solutions.size() == 1);
  CHECK(b.seed == 7);
  DriverOptions o1 = o;
  o1.threads = 1;
  auto c = solve_case(25, o1);
  REQUIRE(c.solutions.size() == 1);
  CHECK(c.solutions[0].t == b.solutions[0].t);
  CHECK(a.dims.at("torus_centralizer") == 1);
}

TEST_CASE("q = 27 in F4(547)") {
  auto r = solve_case(27);
  CHECK(r.ok());
  CHECK(r.dims.at("normaliser_order") == 151632);
  CHECK(r.dims.at("nullspace") == 3);
  REQUIRE(r.solutions.size() == 3);
  auto G = group_of(r);
  std::set<std::vector<Elt>> distinct;
  for (auto& s : r.solutions) {
    CHECK(G.membership(s.t));
    CHECK(verify_presentation(27, r.u, r.s, s.t).ok());
    distinct.insert(s.t.data());
  }
  CHECK(distinct.size() == 3);
}

TEST_CASE("unsupported q") {
  CHECK_THROWS_AS(solve_case(99), UnsupportedQ);
  CHECK_THROWS_AS(solve_case(31), UnsupportedQ);
}

TEST_CASE("span bound from a module decomposition") {
  auto rd = roots_from_dynkin("F4");
  auto deco = module_decomposition(rd, {});
  CHECK(deco == std::map<int, int>{{0, 4}, {1, 48}});

  // E7 restricted to A1 x D6 on a long root is (3,1) + (1,66) + (2,32)
  auto e7 = roots_from_dynkin("E7");
  int h = e7.highest();
  auto d7 = module_decomposition(e7, {h, e7.neg(h)});
  CHECK(d7 == std::map<int, int>{{0, 6}, {1, 60}, {2, 32}, {3, 1}});
  CHECK(span_dimension_bound(d7, 133) == 198);
  CHECK_THROWS_AS(span_dimension_bound({{0, 3}, {4, 2}}, 12), InconsistentDecomposition);
}

TEST_CASE("Borel table") {
  auto F = Field::prime(7);
  Mat u = Mat::from_ints(F, {{1, 1}, {0, 1}});
  Mat s = Mat::from_ints(F, {{3, 0}, {0, 5}});
  auto B = enumerate_group({u, s}, 1000);
  CHECK(B.size() == 42);
  BorelTable T(B, 3);
  CHECK(T.contains(u * s));
  Mat w = Mat::from_ints(F, {{0, 1}, {6, 0}});
  CHECK_FALSE(T.contains(w));
  CHECK(T.in_double_coset(u * w * s, w));
  CHECK_FALSE(T.in_double_coset(u, w));
}
