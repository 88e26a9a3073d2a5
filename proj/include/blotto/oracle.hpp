#pragma once

#include "blotto/caps.hpp"
#include "blotto/game.hpp"
#include "blotto/profiles.hpp"

#include <functional>
#include <optional>
#include <vector>

namespace blotto {

// Number of allocations of at most `budget` troops over k battlefields,
// C(budget + k, k), saturating at UINT64_MAX.
std::uint64_t count_pure(Troops budget, int k);

// All allocations with sum <= budget in lexicographic order.
std::vector<Allocation> enumerate_pure(Troops budget, int k, std::uint64_t cap = UINT64_MAX);
void for_each_pure(Troops budget, int k, const std::function<void(const Allocation&)>& visit);

struct MaxminResult {
  Rational probability;
  MixedStrategy strategy;
  std::uint64_t supports_examined = 0;
};

// Largest p such that a maxmin(u,p) strategy with at most c support points
// exists, by exhaustive enumeration of supports. With a fixed profile every
// support of matching size is tried under every assignment of the profile.
MaxminResult exact_maxmin_up(const GameInstance& inst, int c, Weight u,
                             const std::optional<Profile>& profile = std::nullopt,
                             const Caps& caps = {});

struct PureMaximinResult {
  Weight value = 0;
  Allocation strategy;
  std::vector<Allocation> optima;
};

PureMaximinResult exact_pure_maximin(const GameInstance& inst, const Caps& caps = {});

struct ExpectedMaximinResult {
  Rational value;
  MixedStrategy strategy;
};

// Maximin expected payoff of player 1 over all mixed strategies.
ExpectedMaximinResult exact_expected_maximin(const GameInstance& inst, const Caps& caps = {});

// Same, restricted to supports of at most c pure strategies.
ExpectedMaximinResult exact_expected_maximin_restricted(const GameInstance& inst, int c,
                                                        const Caps& caps = {});

}  // namespace blotto
