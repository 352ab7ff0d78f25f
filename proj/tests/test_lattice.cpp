#include <doctest.h>

#include <random>

#include "fkglab/lattice.hpp"

using namespace fkglab;

TEST_CASE("join and meet are componentwise") {
  CHECK(join({1, 5}, {3, 2}) == Point{3, 5});
  CHECK(meet({1, 5}, {3, 2}) == Point{1, 2});
  CHECK(join({0, 0}, {0, 0}) == Point{0, 0});
  CHECK(meet({0, 0}, {0, 0}) == Point{0, 0});
  CHECK(join({-1, 2, 0}, {1, -2, 0}) == Point{1, 2, 0});
  CHECK(meet({-1, 2, 0}, {1, -2, 0}) == Point{-1, -2, 0});
  CHECK_THROWS_AS(join({1}, {1, 2}), std::invalid_argument);
}

TEST_CASE("lattice identities on random points") {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int64_t> coord(-5, 5);
  for (int trial = 0; trial < 200; ++trial) {
    size_t d = 1 + rng() % 4;
    auto draw = [&]() {
      Point p(d);
      for (auto& c : p) c = coord(rng);
      return p;
    };
    Point u = draw(), v = draw(), w = draw();
    CHECK(join(u, v) == join(v, u));
    CHECK(meet(u, v) == meet(v, u));
    CHECK(join(u, join(v, w)) == join(join(u, v), w));
    CHECK(meet(u, meet(v, w)) == meet(meet(u, v), w));
    CHECK(join(u, u) == u);
    CHECK(meet(u, u) == u);
    CHECK(join(u, meet(u, v)) == u);  // absorption
    CHECK(meet(u, join(u, v)) == u);
    CHECK(leq(meet(u, v), u));
    CHECK(leq(u, join(u, v)));
  }
}

TEST_CASE("max/min stability with witnesses") {
  FinitePoset square({{0, 0}, {0, 1}, {1, 0}, {1, 1}});
  CHECK(is_maxmin_stable({{0, 0}, {1, 1}}, square).stable);
  auto verdict = is_maxmin_stable({{0, 1}, {1, 0}}, square);
  CHECK_FALSE(verdict.stable);
  REQUIRE(verdict.witness.has_value());
  CHECK(verdict.witness->first == Point{0, 1});
  CHECK(verdict.witness->second == Point{1, 0});

  // Bridge set for the 2-step walk: {(1,0),(-1,0)} is a chain, hence stable.
  FinitePoset walk({{1, 2}, {1, 0}, {-1, 0}, {-1, -2}});
  CHECK(is_maxmin_stable({{1, 0}, {-1, 0}}, walk).stable);

  CHECK_THROWS_AS(is_maxmin_stable({{5, 5}}, square), std::invalid_argument);
}

TEST_CASE("up-set counts: chain, antichain, grid") {
  // 1-element poset: 2 up-sets.
  CHECK(enumerate_upsets(FinitePoset(std::vector<Point>{{0}})).size() == 2);
  // 2-element antichain: 4 up-sets.
  CHECK(enumerate_upsets(FinitePoset({{0, 1}, {1, 0}})).size() == 4);
  // {0,1}^2: 6 monotone 0/1 functions of two booleans.
  CHECK(enumerate_upsets(FinitePoset({{0, 0}, {0, 1}, {1, 0}, {1, 1}})).size() == 6);
  // n-chain: n+1; n-antichain: 2^n.
  for (size_t n = 1; n <= 8; ++n) {
    std::vector<Point> chain, anti;
    for (size_t i = 0; i < n; ++i) {
      chain.push_back({static_cast<int64_t>(i)});
      anti.push_back({static_cast<int64_t>(i), -static_cast<int64_t>(i)});
    }
    CHECK(enumerate_upsets(FinitePoset(chain)).size() == n + 1);
    CHECK(enumerate_upsets(FinitePoset(anti)).size() == (size_t{1} << n));
  }
}

TEST_CASE("every enumerated up-set satisfies the membership invariant") {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int64_t> coord(0, 2);
  for (int trial = 0; trial < 30; ++trial) {
    std::vector<Point> pts;
    while (pts.size() < 6) {
      Point p{coord(rng), coord(rng)};
      if (std::find(pts.begin(), pts.end(), p) == pts.end()) pts.push_back(p);
    }
    FinitePoset poset(pts);
    size_t count = 0;
    for_each_upset(poset, [&](const UpSet& u) {
      CHECK(upset_invariant_holds(poset, u));
      ++count;
    });
    // distinctness: up-sets are exactly the antichain count; just require > 1
    CHECK(count > 1);
  }
}

TEST_CASE("enumeration cap") {
  std::vector<Point> big;
  for (int64_t i = 0; i < 21; ++i) big.push_back({i});
  CHECK_THROWS_AS(enumerate_upsets(FinitePoset(big)), cap_exceeded);
  CHECK(enumerate_upsets(FinitePoset(big), 25).size() == 22);
}
