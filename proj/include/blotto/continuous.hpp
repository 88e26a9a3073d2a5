#pragma once

#include "blotto/caps.hpp"
#include "blotto/game.hpp"

#include <optional>
#include <vector>

namespace blotto {

// Player 2 beats x on l1 and l12, x' on l2 and l12.
struct CriticalTuple {
  std::vector<int> l1;
  std::vector<int> l2;
  std::vector<int> l12;
  bool operator==(const CriticalTuple&) const = default;
};

// Inclusion-minimal sets S with weight outside S below u.
std::vector<SubsetMask> minimal_losing_sets(const std::vector<Rational>& weights, const Rational& u,
                                            const Caps& caps = {});

// Critical tuples from which no battlefield can be downgraded (l12 to l1 or
// l2, l1 or l2 to none) without breaking criticality.
std::vector<CriticalTuple> critical_tuples(const std::vector<Rational>& weights, const Rational& u,
                                           const Caps& caps = {});

bool is_critical(const CriticalTuple& t, const std::vector<Rational>& weights, const Rational& u);

struct PureFeasibility {
  bool ok = false;
  std::optional<RationalAllocation> x;
  Rational margin;  // slack of the tightest strict row
};

// Continuous pure strategy guaranteeing at least u against every response.
PureFeasibility pure_feasible(const GameInstance& inst, const Rational& u, const Caps& caps = {});

struct TupleCheck {
  bool ok = false;
  std::optional<CriticalTuple> violating;
};

// Whether (x, x') played (1/2, 1/2) wins at least u with probability 1/2.
TupleCheck verify_2strategy(const std::vector<Rational>& weights, Troops m,
                            const RationalAllocation& x, const RationalAllocation& xp,
                            const Rational& u, const Caps& caps = {});
TupleCheck verify_2strategy(const GameInstance& inst, const RationalAllocation& x,
                            const RationalAllocation& xp, const Rational& u,
                            const Caps& caps = {});

// Beating response built from a violating tuple.
RationalAllocation response_from_tuple(const CriticalTuple& t, const RationalAllocation& x,
                                       const RationalAllocation& xp);

struct PairSolution {
  bool ok = false;
  RationalAllocation x;
  RationalAllocation xp;
  Rational margin;
  Weight certified = 0;          // min over y of the better payoff, original weights
  std::uint64_t programs = 0;    // LPs solved
  int alpha = -1;                // uniform sweep: battlefields with x >= x'
  bool used_fallback = false;
  bool precondition_met = true;
};

// Pair program for one comparison vector: ge[i] means x_i >= x'_i.
PairSolution solve_guess_lp(const std::vector<Rational>& weights, Troops n, Troops m,
                            const Rational& u, const std::vector<bool>& ge,
                            const Caps& caps = {});

// Uniform weights: sweeps alpha, the number of leading battlefields with x >= x'.
PairSolution solve_uniform_c2(const GameInstance& inst, const Rational& u, const Caps& caps = {});

struct BucketPlan {
  Rational delta;
  std::vector<Rational> rounded;            // capped then rounded weights
  std::vector<std::vector<int>> buckets;    // equal rounded weight, ascending index
  std::vector<int> dropped;                 // weight below delta u / k
};

BucketPlan make_buckets(const GameInstance& inst, Weight u, const Rational& epsilon);

// Two strategies on the buckets given: odd buckets lose one battlefield, the
// rest is halved, each chosen battlefield gets 2 w_i n / alpha' troops.
ContinuousMixedStrategy fallback_strategy(const GameInstance& inst,
                                          const std::vector<Rational>& weights,
                                          const std::vector<std::vector<int>>& buckets);

// Targets (1 - epsilon) u.
PairSolution solve_general_c2(const GameInstance& inst, Weight u, const Rational& epsilon,
                              const Caps& caps = {});

}  // namespace blotto
