#pragma once

#include "blotto/game.hpp"

#include <optional>
#include <vector>

namespace blotto {

template <class V>
struct BestResponse {
  V value{};  // player 2's payoff
  Allocation y;
};

// Knapsack over battlefields: winning battlefield i costs x_i troops.
BestResponse<Weight> pure_best_response_dp(const GameInstance& inst, const Allocation& x);
// Same with arbitrary rational battlefield values.
BestResponse<Rational> pure_best_response_dp(const std::vector<Rational>& weights, Troops m,
                                             const Allocation& x);

template <class Alloc>
struct PreventResult {
  bool possible = false;
  std::optional<Alloc> y;
};

// Whether player 2 can hold x to at most `cap` and x' to at most `cap_prime`.
PreventResult<Allocation> two_strategy_prevent_dp(const Allocation& x, const Allocation& xp,
                                                  const GameInstance& inst, Weight cap,
                                                  Weight cap_prime);
PreventResult<RationalAllocation> two_strategy_prevent_dp(const RationalAllocation& x,
                                                          const RationalAllocation& xp,
                                                          const GameInstance& inst, Weight cap,
                                                          Weight cap_prime);

template <class Alloc>
struct TwoStrategyGuarantee {
  Weight value = 0;  // min over y of max(u1(x,y), u1(x',y))
  Alloc y;
};

// Payoff that player 1 secures by playing x or x' (whichever does better).
TwoStrategyGuarantee<Allocation> two_strategy_guarantee(const Allocation& x, const Allocation& xp,
                                                        const GameInstance& inst);
TwoStrategyGuarantee<RationalAllocation> two_strategy_guarantee(const RationalAllocation& x,
                                                                const RationalAllocation& xp,
                                                                const GameInstance& inst);

// Player 2's best expected payoff against s; y_i ranges over {0, x^1_i, ..., x^c_i}.
BestResponse<Rational> expected_best_response_dp(const GameInstance& inst, const MixedStrategy& s);

// Expected player 2 payoff of y against s.
Rational expected_player2_payoff(const GameInstance& inst, const MixedStrategy& s,
                                 const Allocation& y);

}  // namespace blotto
