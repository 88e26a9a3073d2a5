#pragma once

#include "blotto/caps.hpp"
#include "blotto/fractional.hpp"
#include "blotto/game.hpp"

#include <functional>
#include <optional>
#include <vector>

namespace blotto {

struct RoundedInstance {
  GameInstance base;
  Rational delta;
  std::optional<Weight> cap;
  std::vector<Rational> weights;  // largest power of (1 + delta) not above the capped weight
};

// Largest j with base^j <= w.
unsigned long delta_exponent(const Rational& base, Weight w);

RoundedInstance delta_uniform(const GameInstance& inst, const Rational& delta,
                              std::optional<Weight> cap = std::nullopt);

struct HeavyLightSplit {
  Rational tau;
  std::vector<int> heavy;
  std::vector<int> light;
};

HeavyLightSplit split_heavy_light(const std::vector<Rational>& weights, const Rational& tau);

struct WeakResponse {
  Allocation y;
  Rational value;  // player 2's payoff
};

// Player 2 tries every response on the heavy side (matching x or leaving a
// battlefield) and then buys light battlefields in decreasing w_i/x_i order,
// stopping at the first one it cannot afford.
WeakResponse weak_adversary_pure(const std::vector<Rational>& weights, Troops m,
                                 const Allocation& x, const HeavyLightSplit& split);
WeakResponse weak_adversary_pure(const GameInstance& inst, const Allocation& x,
                                 const HeavyLightSplit& split);

// Rounded instance, split and weight classes for the pure scheme.
struct PtasSetup {
  Troops n = 0;
  Troops m = 0;
  Weight u = 0;
  Rational epsilon;
  std::vector<Rational> weights;              // rounded
  HeavyLightSplit split;
  std::vector<std::vector<int>> classes;      // heavy battlefields per distinct rounded weight
};

PtasSetup make_ptas_setup(const GameInstance& inst, Weight u, const Rational& epsilon);

// One heavy response: how many battlefields of each class player 2 concedes.
struct HeavyResponse {
  std::vector<Troops> conceded;
  Troops remaining = 0;  // m_i
  Rational heavy_payoff; // g_1(i), player 1's heavy payoff
};

inline constexpr int kSentinel = -1;

struct Triplet {
  std::vector<Troops> xh;       // troops per class
  std::vector<int> b;           // per response: light battlefield or kSentinel
  std::vector<Troops> pinned;   // per response: troops on b_i (ratio w_{b_i}/pinned)
  std::vector<Rational> r;      // per response: w_{b_i}/pinned, or 0 for the sentinel
};

// Balanced heavy allocation for a per-class troop vector.
Allocation expand_heavy(const PtasSetup& setup, const std::vector<Troops>& xh);

// Pareto-minimal heavy responses against a heavy allocation.
std::vector<HeavyResponse> heavy_responses(const PtasSetup& setup, const Allocation& heavy_x);

// Streams triplets. Returning false stops the stream.
void enumerate_triplets(const PtasSetup& setup, const std::function<bool(const Triplet&)>& visit,
                        const Caps& caps = {});

struct TripletSolution {
  bool ok = false;
  Allocation x;    // full allocation, heavy part from the triplet
  Rational value;  // player 1's payoff against the weak adversary
};

TripletSolution satisfy_triplet_dp(const PtasSetup& setup, const Triplet& t, const Caps& caps = {});

struct PtasResult {
  Allocation x;
  Weight certified = 0;       // verified on the original instance
  Rational weak_value;        // best value against the weak adversary (rounded weights)
  bool precondition_met = true;
  bool target_met = false;    // certified >= (1 - epsilon) u
};

PtasResult pure_ptas(const GameInstance& inst, Weight u, const Rational& epsilon,
                     const Caps& caps = {});

struct TwoStrategyResult {
  MixedStrategy strategy;     // played (1/2, 1/2), or pure when both coincide
  Weight certified = 0;       // min over responses of the better support payoff
  Rational objective;       // internal objective of the chosen candidate
  bool target_met = false;    // certified >= target (u/3 or (1 - epsilon) u)
  std::uint64_t candidates = 0;
};

TwoStrategyResult third_approx_2strategy(const GameInstance& inst, Weight u, const Caps& caps = {});

TwoStrategyResult eps_approx_2strategy(const GameInstance& inst, Weight u, const Rational& epsilon,
                                       const Caps& caps = {});

// min over y of max(u1(x,y), u1(x',y)) with rational weights.
Rational two_strategy_guarantee_weighted(const Allocation& x, const Allocation& xp,
                                         const std::vector<Rational>& weights, Troops m);

}  // namespace blotto
