#include "blotto/errors.hpp"
#include "blotto/oracle.hpp"
#include "blotto/profiles.hpp"
#include "support.hpp"

#include <doctest.h>

using namespace blotto;
using testing_support::Gen;

namespace {

Profile prof(std::initializer_list<Rational> v) { return Profile(v); }

}  // namespace

TEST_CASE("make_profile sorts and drops zeros") {
  CHECK(make_profile({Rational(1, 4), 0, Rational(3, 4)}) == prof({Rational(3, 4), Rational(1, 4)}));
}

TEST_CASE("profile sets for small c") {
  CHECK(construct_Pc(1) == std::set<Profile>{prof({1})});
  CHECK(construct_Pc(2) == std::set<Profile>{prof({1}), prof({Rational(1, 2), Rational(1, 2)})});
  auto p3 = construct_Pc(3);
  CHECK(p3 == std::set<Profile>{prof({1}), prof({Rational(1, 2), Rational(1, 2)}),
                                prof({Rational(1, 3), Rational(1, 3), Rational(1, 3)})});
  auto p4 = construct_Pc(4);
  CHECK(p4.size() == 5);
  CHECK(p4.count(prof({Rational(2, 5), Rational(1, 5), Rational(1, 5), Rational(1, 5)})) == 1);
  for (const auto& p : p4) {
    Rational s = 0;
    for (const auto& v : p) s += v;
    CHECK(s == 1);
  }
  CHECK_THROWS_AS(construct_Pc(0), InvalidInput);
  Caps caps;
  caps.max_profile_c = 3;
  CHECK_THROWS_AS(construct_Pc(4, caps), CapExceeded);
}

TEST_CASE("profile LP on the table 1 family") {
  GameInstance g(4, 6, {5, 5, 5, 10});
  std::vector<Allocation> support{{0, 0, 0, 4}, {1, 1, 2, 0}, {1, 2, 1, 0}, {2, 1, 1, 0}};
  ProfileLpResult r = solve_profile_lp(winning_subsets(g, support, 10));
  CHECK(r.value == Rational(2, 5));
  CHECK(r.rho == std::vector<Rational>{Rational(2, 5), Rational(1, 5), Rational(1, 5), Rational(1, 5)});
}

TEST_CASE("empty family") {
  SubsetFamily f;
  f.c = 3;
  ProfileLpResult r = solve_profile_lp(f);
  CHECK(r.value == 1);
  CHECK(r.rho == std::vector<Rational>(3, Rational(1, 3)));
}

TEST_CASE("profile LP beats random distributions") {
  Gen gen(41);
  for (int it = 0; it < 100; ++it) {
    SubsetFamily f;
    f.c = static_cast<int>(gen.uniform(1, 4));
    int members = static_cast<int>(gen.uniform(1, 4));
    for (int j = 0; j < members; ++j) f.insert(static_cast<SubsetMask>(gen.uniform(1, (1 << f.c) - 1)));
    ProfileLpResult r = solve_profile_lp(f);
    Rational s = 0;
    for (const auto& v : r.rho) {
      CHECK(v >= 0);
      s += v;
    }
    CHECK(s == 1);
    Rational achieved = 1;
    for (SubsetMask w : f.members()) achieved = std::min(achieved, subset_mass(w, r.rho));
    CHECK(achieved == r.value);
    for (int t = 0; t < 20; ++t) {
      std::vector<std::int64_t> raw(static_cast<std::size_t>(f.c));
      std::int64_t tot = 0;
      for (auto& v : raw) tot += (v = gen.uniform(0, 5));
      if (tot == 0) continue;
      std::vector<Rational> rho;
      for (auto v : raw) rho.push_back(Rational(v) / tot);
      Rational other = 1;
      for (SubsetMask w : f.members()) other = std::min(other, subset_mass(w, rho));
      CHECK(other <= r.value);
    }
  }
}

TEST_CASE("free profile equals the best fixed profile") {
  Gen gen(42);
  for (int it = 0; it < 20; ++it) {
    GameInstance g = gen.instance(3, 3, 3, 4);
    int c = static_cast<int>(gen.uniform(1, 3));
    Weight u = gen.uniform(1, g.total_weight());
    Rational free = exact_maxmin_up(g, c, u).probability;
    Rational fixed = 0;
    for (const auto& p : construct_Pc(c))
      if (p.size() <= count_pure(g.n(), g.k())) fixed = std::max(fixed, exact_maxmin_up(g, c, u, p).probability);
    CHECK(free == fixed);
  }
}

TEST_CASE("two-strategy normalization") {
  GameInstance g(2, 2, {1, 1});
  // Guarantee 1/2 stays as it is.
  MixedStrategy half{{{2, 0}, {0, 2}}, {Rational(1, 2), Rational(1, 2)}};
  CHECK(normalize_two_strategy(half, 1, g).probs == half.probs);
  // Guarantee in (0, 1/2) is rebalanced.
  MixedStrategy skew{{{2, 0}, {0, 2}}, {Rational(2, 3), Rational(1, 3)}};
  MixedStrategy n = normalize_two_strategy(skew, 1, g);
  CHECK(n.probs == std::vector<Rational>{Rational(1, 2), Rational(1, 2)});
  CHECK(guaranteed_probability(n, 1, g) == Rational(1, 2));
  // Above 1/2 collapses to the pure strategy that always wins.
  GameInstance h(3, 1, {1, 1});
  MixedStrategy strong{{{2, 1}, {0, 0}}, {Rational(3, 4), Rational(1, 4)}};
  CHECK(guaranteed_probability(strong, 1, h) == Rational(3, 4));
  MixedStrategy p = normalize_two_strategy(strong, 1, h);
  REQUIRE(p.size() == 1);
  CHECK(p.support[0] == Allocation{2, 1});
  CHECK(guaranteed_probability(p, 1, h) == 1);
}
