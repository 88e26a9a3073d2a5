#include "blotto/best_response.hpp"
#include "blotto/errors.hpp"
#include "blotto/fractional.hpp"
#include "lp_oracle.hpp"
#include "support.hpp"

#include <doctest.h>

#include <set>

using namespace blotto;
using testing_support::Gen;
using testing_support::lp_maxmin;

namespace {

Rational dot(const std::vector<Rational>& h, const GameInstance& g) {
  Rational s = 0;
  for (int i = 0; i < g.k(); ++i) s += h[static_cast<std::size_t>(i)] * Rational(static_cast<long>(g.weight(i)));
  return s;
}

}  // namespace

TEST_CASE("cost vectors") {
  CostVectors cv = cost_vectors({1, 3}, {2, 1});
  CHECK(cv.c == std::vector<Troops>{1, 2});
  CHECK(cv.cprime == std::vector<Troops>{1, 1});
  CostVectors same = cost_vectors({2, 0}, {2, 0});
  CHECK(same.c == std::vector<Troops>{2, 0});
  CHECK(same.cprime == std::vector<Troops>{0, 0});
  CostVectors z = cost_vectors({0, 0}, {5, 0});
  CHECK(z.c == std::vector<Troops>{0, 0});
  CHECK(z.cprime == std::vector<Troops>{5, 0});
  CHECK_THROWS_AS(cost_vectors({1}, {1, 2}), InvalidInput);
}

TEST_CASE("responses from 0/1 vectors") {
  GameInstance g(1, 1, {1, 1});
  Allocation x{1, 0}, xp{0, 1};
  FractionalResponse r{{0, 1}, {1, 0}};
  CHECK(is_valid_response(x, xp, r, 1));
  Allocation y = strategy_from_h(x, xp, r, 1);
  CHECK(y == Allocation{0, 0});
  CHECK(payoffs(x, y, g).player2 == 1);
  CHECK(payoffs(xp, y, g).player2 == 1);
  FractionalResponse all{{1, 1}, {1, 1}};
  CHECK(strategy_from_h({2, 1}, {1, 3}, all, 9) == Allocation{2, 3});
  CHECK_THROWS_AS(strategy_from_h(x, xp, FractionalResponse{{Rational(1, 2), 1}, {1, 1}}, 1), InvalidInput);
  // Ordering: x_1 > x'_1 needs h_1 <= h'_1.
  CHECK_FALSE(is_valid_response(x, xp, FractionalResponse{{1, 0}, {0, 0}}, 1));
  CHECK_FALSE(is_valid_response({3, 3}, {3, 3}, FractionalResponse{{1, 1}, {0, 0}}, 5));
}

TEST_CASE("worked fractional example") {
  GameInstance g(1, 1, {1, 1});
  FractionalTrace t = fractional_trace({1, 0}, {0, 1}, rational_weights(g), 1);
  CHECK(t.response.h == std::vector<Rational>{Rational(1, 2), 1});
  CHECK(t.response.hprime == std::vector<Rational>{1, Rational(1, 2)});
  CHECK(t.value == Rational(3, 2));
  CHECK(lp_maxmin({1, 0}, {0, 1}, g) == Rational(3, 2));
  GreedyResponse gr = greedy_opponent_response({1, 0}, {0, 1}, g);
  CHECK(gr.y == Allocation{0, 0});
  CHECK(gr.value == 1);
}

TEST_CASE("worked signature") {
  GameInstance g(1, 1, {1, 1});
  Signature s = compute_signature({1, 0}, {0, 1}, g);
  CHECK(s.a == 0);
  CHECK(s.b == 1);
  // No jointly available pair remains at the last iteration.
  CHECK(s.cidx == kNoBattlefield);
  CHECK(s == compute_signature({1, 0}, {0, 1}, g));
}

TEST_CASE("budget covers everything") {
  GameInstance g(4, 9, {2, 3, 4});
  FractionalResponse r = best_fractional_response({1, 2, 0}, {0, 1, 3}, g);
  CHECK(r.h == std::vector<Rational>(3, Rational(1)));
  CHECK(r.hprime == std::vector<Rational>(3, Rational(1)));
}

TEST_CASE("no troops: only free wins") {
  GameInstance g(3, 0, {2, 3, 4});
  FractionalResponse r = best_fractional_response({1, 2, 0}, {0, 2, 0}, g);
  CHECK(dot(r.h, g) == 4);
  CHECK(dot(r.hprime, g) >= 4);
}

TEST_CASE("fractional response is optimal, balanced and nearly integral") {
  Gen gen(51);
  for (int it = 0; it < 150; ++it) {
    GameInstance g = gen.instance(6, 6, 4, 6);
    Allocation x = gen.allocation(g.n(), g.k()), xp = gen.allocation(g.n(), g.k());
    FractionalTrace t = fractional_trace(x, xp, rational_weights(g), g.m());
    CHECK(is_valid_response(x, xp, t.response, g.m()));
    Rational v1 = dot(t.response.h, g), v2 = dot(t.response.hprime, g);
    CHECK(std::min(v1, v2) == lp_maxmin(x, xp, g));
    CHECK(t.value == std::min(v1, v2));
    CHECK(v1 == v2);
    int fractional = 0;
    for (std::size_t i = 0; i < x.size(); ++i)
      if (t.response.h[i].get_den() != 1 || t.response.hprime[i].get_den() != 1) ++fractional;
    CHECK(fractional <= 2);
  }
}

TEST_CASE("greedy opponent loses at most twice the heaviest weight") {
  Gen gen(52);
  for (int it = 0; it < 150; ++it) {
    GameInstance g = gen.instance(6, 6, 4, 6);
    Allocation x = gen.allocation(g.n(), g.k()), xp = gen.allocation(g.n(), g.k());
    GreedyResponse gr = greedy_opponent_response(x, xp, g);
    Weight exact = g.total_weight() - testing_support::brute_two_guarantee(g, x, xp);
    CHECK(gr.value <= exact);
    CHECK(exact - gr.value <= 2 * g.max_weight());
    CHECK(gr.value == std::min(payoffs(x, gr.y, g).player2, payoffs(xp, gr.y, g).player2));
  }
}

// The threshold rule is exact except when battlefield i ties a threshold
// ratio whose element only became available late in the trace.
TEST_CASE("partial response reproduces the greedy opponent") {
  Gen gen(53);
  int disagree = 0;
  for (int it = 0; it < 1000; ++it) {
    GameInstance g = gen.instance(6, 6, 5, 6);
    Allocation x = gen.allocation(g.n(), g.k()), xp = gen.allocation(g.n(), g.k());
    FractionalResponse r = best_fractional_response(x, xp, g);
    Signature sig = compute_signature(x, xp, g);
    auto w = rational_weights(g);
    CostVectors cv = cost_vectors(x, xp);
    auto ratio = [&](int i) -> Rational { return Rational(static_cast<long>(cv.c[static_cast<std::size_t>(i)])) / w[static_cast<std::size_t>(i)]; };
    auto ratio_p = [&](int i) -> Rational { return Rational(static_cast<long>(cv.cprime[static_cast<std::size_t>(i)])) / w[static_cast<std::size_t>(i)]; };
    for (int i = 0; i < g.k(); ++i) {
      if (i == sig.a || i == sig.b || i == sig.cidx) continue;
      const auto iu = static_cast<std::size_t>(i);
      auto [h, hp] = partial_response(i, x[iu], xp[iu], w[iu], sig, w);
      if (h == (r.h[iu] == 1 ? 1 : 0) && hp == (r.hprime[iu] == 1 ? 1 : 0)) continue;
      ++disagree;
      bool tie = (sig.a != kNoBattlefield && ratio(i) == ratio(sig.a)) ||
                 (sig.b != kNoBattlefield && ratio_p(i) == ratio_p(sig.b)) ||
                 (sig.cidx != kNoBattlefield && ratio(i) + ratio_p(i) == ratio(sig.cidx) + ratio_p(sig.cidx));
      CHECK(tie);
    }
  }
  MESSAGE("tie disagreements: " << disagree);
  CHECK(disagree <= 10);
}

TEST_CASE("partial response rejects signature battlefields") {
  GameInstance g(1, 1, {1, 1});
  Signature s = compute_signature({1, 0}, {0, 1}, g);
  auto w = rational_weights(g);
  CHECK_THROWS_AS(partial_response(0, 1, 0, w[0], s, w), InvalidInput);
}

TEST_CASE("signature stream covers realized signatures") {
  Gen gen(54);
  for (int it = 0; it < 8; ++it) {
    GameInstance g = gen.instance(3, 3, 3, 4);
    std::set<Signature> stream;
    enumerate_signatures(g, [&](const Signature& s) {
      stream.insert(s);
      return true;
    });
    CHECK(stream.size() <= count_signatures(g));
    testing_support::each_allocation(g.n(), g.k(), [&](const Allocation& x) {
      testing_support::each_allocation(g.n(), g.k(), [&](const Allocation& xp) {
        CHECK(stream.count(compute_signature(x, xp, g)) == 1);
      });
    });
  }
}

TEST_CASE("single battlefield signatures") {
  GameInstance g(2, 2, {3});
  bool all_same = true;
  enumerate_signatures(g, [&](const Signature& s) {
    for (int v : {s.a, s.b, s.cidx})
      if (v != 0 && v != kNoBattlefield) all_same = false;
    return true;
  });
  CHECK(all_same);
}
