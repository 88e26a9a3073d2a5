#pragma once

#include "blotto/caps.hpp"
#include "blotto/rational.hpp"

#include <cstdint>
#include <functional>
#include <vector>

namespace blotto {

using Troops = std::int64_t;
using Weight = std::int64_t;
using Allocation = std::vector<Troops>;
using RationalAllocation = std::vector<Rational>;

// Player 1 has n troops, player 2 has m, battlefield i is worth weights[i].
// Player 1 wins a battlefield only with strictly more troops.
class GameInstance {
 public:
  GameInstance(Troops n, Troops m, std::vector<Weight> weights);

  Troops n() const { return n_; }
  Troops m() const { return m_; }
  int k() const { return static_cast<int>(weights_.size()); }
  const std::vector<Weight>& weights() const { return weights_; }
  Weight weight(int i) const { return weights_[static_cast<std::size_t>(i)]; }
  Weight total_weight() const { return total_; }
  Weight max_weight() const;

 private:
  Troops n_;
  Troops m_;
  std::vector<Weight> weights_;
  Weight total_ = 0;
};

struct Payoffs {
  Weight player1 = 0;
  Weight player2 = 0;
  bool operator==(const Payoffs&) const = default;
};

// Throws InvalidInput unless x has k non-negative entries summing to at most budget.
void validate_allocation(const Allocation& x, Troops budget, int k);
void validate_allocation(const RationalAllocation& x, const Rational& budget, int k);

Payoffs payoffs(const Allocation& x, const Allocation& y, const GameInstance& inst);
Payoffs payoffs(const RationalAllocation& x, const RationalAllocation& y,
                const GameInstance& inst);

// Unchecked player 1 payoff.
Weight player1_payoff(const Allocation& x, const Allocation& y,
                      const std::vector<Weight>& weights);
Rational player1_payoff(const Allocation& x, const Allocation& y,
                        const std::vector<Rational>& weights);

struct MixedStrategy {
  std::vector<Allocation> support;
  std::vector<Rational> probs;

  std::size_t size() const { return support.size(); }
  // Distinct budget-feasible allocations, probabilities in (0,1] summing to 1.
  void validate(const GameInstance& inst) const;
};

// A continuous mixed strategy; allocations are non-negative rationals.
struct ContinuousMixedStrategy {
  std::vector<RationalAllocation> support;
  std::vector<Rational> probs;
  void validate(const GameInstance& inst) const;
};

// Subsets of support indices are bitmasks over at most 6 strategies; a family
// of such subsets is a 64-bit mask indexed by subset.
using SubsetMask = std::uint32_t;
inline constexpr int kMaxFamilySupport = 6;

struct SubsetFamily {
  int c = 0;
  std::uint64_t bits = 0;

  bool contains(SubsetMask s) const { return (bits >> s) & 1u; }
  void insert(SubsetMask s) { bits |= std::uint64_t{1} << s; }
  std::vector<SubsetMask> members() const;
  bool operator==(const SubsetFamily&) const = default;
};

// Calls visit for every response y with y_i in {0} U {x^j_i} and sum(y) <= budget.
// Any other response has the same outcome as one of these on every support
// strategy. Throws CapExceeded when more than max_responses would be produced.
void for_each_dominated_response(const std::vector<Allocation>& support, Troops budget,
                                 std::uint64_t max_responses,
                                 const std::function<void(const Allocation&)>& visit);

// Sets of support indices that reach payoff >= u against some response.
SubsetFamily winning_subsets(const GameInstance& inst, const std::vector<Allocation>& support,
                             Weight u, const Caps& caps = {});

// Largest p such that s is a maxmin(u,p) strategy.
Rational guaranteed_probability(const MixedStrategy& s, Weight u, const GameInstance& inst,
                                const Caps& caps = {});

// Probability mass of the subset (bitmask over support indices).
Rational subset_mass(SubsetMask subset, const std::vector<Rational>& probs);

}  // namespace blotto
