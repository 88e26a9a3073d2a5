#include "blotto/best_response.hpp"
#include "blotto/errors.hpp"
#include "blotto/expectation.hpp"
#include "support.hpp"

#include <doctest.h>

#include <numeric>

using namespace blotto;
using testing_support::Gen;

TEST_CASE("lower bound on a nonzero optimum") {
  CHECK(opt_bounds(1) == 1);
  CHECK(opt_bounds(4) == Rational(1, 4));
  CHECK_THROWS_AS(opt_bounds(0), InvalidInput);
}

TEST_CASE("grid floor") {
  CHECK(grid_floor(10, 2, Rational(1, 2)) == Rational(1, 80));
  CHECK_THROWS_AS(grid_floor(0, 2, Rational(1, 2)), InvalidInput);
  CHECK_THROWS_AS(grid_floor(10, 2, Rational(1)), InvalidInput);
}

TEST_CASE("profile grid contents") {
  CHECK(profile_grid(10, 1, Rational(1, 2)) == std::set<Profile>{{Rational(1)}});
  auto grid = profile_grid(10, 2, Rational(1, 2));
  CHECK(grid.count(Profile{Rational(1, 2), Rational(1, 2)}) == 1);
  CHECK(grid.count(Profile{Rational(1)}) == 1);
  for (const auto& p : grid) {
    CHECK(p.size() <= 2);
    CHECK(std::accumulate(p.begin(), p.end(), Rational(0)) == 1);
    for (std::size_t i = 1; i < p.size(); ++i) CHECK(p[i - 1] >= p[i]);
    for (const auto& v : p) CHECK(sgn(v) > 0);
  }
}

TEST_CASE("profile grid entries are ratios of grid levels") {
  const Rational eps(1, 2);
  const Rational p0 = grid_floor(20, 3, eps);
  std::vector<Rational> levels;
  for (Rational p = p0; p < 1; p *= 1 + eps) levels.push_back(p);
  levels.push_back(1);
  for (const auto& prof : profile_grid(20, 3, eps)) {
    // Scaling back by the largest level used must land on grid values.
    bool found = false;
    for (const auto& top : levels) {
      bool all = true;
      Rational scale = top / prof[0];
      Rational total = 0;
      for (const auto& v : prof) {
        Rational lv = v * scale;
        total += lv;
        all = all && std::find(levels.begin(), levels.end(), lv) != levels.end();
      }
      if (all && total <= 1) found = true;
    }
    CHECK(found);
  }
}

TEST_CASE("profile grid grows slowly with the total weight") {
  std::size_t prev = 0;
  for (Weight w : {10, 100, 1000, 10000}) {
    std::size_t size = profile_grid(w, 2, Rational(1, 2)).size();
    CHECK(size >= prev);
    prev = size;
  }
  CHECK(prev < 2000);
  Caps caps;
  caps.max_work = 5;
  CHECK_THROWS_AS(profile_grid(100, 3, Rational(1, 2), caps), CapExceeded);
}

TEST_CASE("greedy with one support strategy is the classic knapsack greedy") {
  GameInstance g(6, 4, {6, 5, 2});
  MixedStrategy s{{{3, 2, 1}}, {Rational(1)}};
  BestResponse<Rational> r = greedy_weak_adversary_expected(g, s);
  // Ratios 2, 5/2, 2: battlefield 1 first, then 0 with the tie to the lower index.
  CHECK(r.y == Allocation{0, 2, 1});
  CHECK(r.value == 7);
}

TEST_CASE("zero-cost levels are taken first") {
  GameInstance g(4, 0, {1, 1, 1});
  MixedStrategy s{{{0, 2, 2}, {2, 0, 2}}, {Rational(1, 2), Rational(1, 2)}};
  BestResponse<Rational> r = greedy_weak_adversary_expected(g, s);
  CHECK(r.y == Allocation{0, 0, 0});
  CHECK(r.value == 1);
}

TEST_CASE("greedy stays within the heaviest battlefield of the best response") {
  Gen gen(81);
  for (int it = 0; it < 300; ++it) {
    GameInstance g = gen.instance(8, 8, 5, 9, 1);
    MixedStrategy s = gen.mixed(g, static_cast<int>(gen.uniform(1, 3)));
    BestResponse<Rational> greedy = greedy_weak_adversary_expected(g, s);
    Rational best = expected_best_response_dp(g, s).value;
    Troops spent = std::accumulate(greedy.y.begin(), greedy.y.end(), Troops{0});
    CHECK(spent <= g.m());
    CHECK(greedy.value == testing_support::expected_p2(g, s, greedy.y));
    CHECK(greedy.value <= best);
    CHECK(best - greedy.value <= g.max_weight());
  }
}
