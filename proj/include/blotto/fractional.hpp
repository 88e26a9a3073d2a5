#pragma once

#include "blotto/game.hpp"

#include <array>
#include <compare>
#include <functional>
#include <optional>
#include <vector>

namespace blotto {

// Player 2's response to the pair (x, x') as two 0/1 vectors: h_i = 1 beats x
// on battlefield i, h'_i = 1 beats x'. Costs are split so that the cheaper of
// the two is paid once and the difference is paid on top.
struct CostVectors {
  std::vector<Troops> c;
  std::vector<Troops> cprime;
};

CostVectors cost_vectors(const Allocation& x, const Allocation& xp);

struct FractionalResponse {
  std::vector<Rational> h;
  std::vector<Rational> hprime;
};

// Valid when 0 <= h,h' <= 1, the cheaper side is at least the dearer one, and
// the cost fits in m.
bool is_valid_response(const Allocation& x, const Allocation& xp, const FractionalResponse& r,
                       Troops m);

// y_i = h_i c_i + h'_i c'_i for a 0/1 response.
Allocation strategy_from_h(const Allocation& x, const Allocation& xp, const FractionalResponse& r,
                           Troops m);

inline constexpr int kNoBattlefield = -1;

struct Signature {
  int a = kNoBattlefield;
  int b = kNoBattlefield;
  int cidx = kNoBattlefield;
  Troops mu = 0;
  std::array<Troops, 3> x_abc{};
  std::array<Troops, 3> xprime_abc{};
  Rational udot1;
  Rational udot2;

  // Distinct battlefields among a, b, cidx in increasing order.
  std::vector<int> battlefields() const;
  bool operator==(const Signature&) const = default;
  std::strong_ordering operator<=>(const Signature& o) const;
};

struct FractionalTrace {
  FractionalResponse response;
  Rational value;
  Signature signature;
  int iterations = 0;
};

// Greedy fractional best response against the pair. `offset` is an initial
// lead of player 2's utility against x over x' (used by the imbalanced start
// in the approximation scheme); the greedy first moves the lagging side.
FractionalTrace fractional_trace(const Allocation& x, const Allocation& xp,
                                 const std::vector<Rational>& weights, Troops m,
                                 const Rational& offset = 0);

FractionalResponse best_fractional_response(const Allocation& x, const Allocation& xp,
                                            const GameInstance& inst);

struct GreedyResponse {
  Allocation y;
  Weight value = 0;
};

// Floors the fractional response and plays it.
GreedyResponse greedy_opponent_response(const Allocation& x, const Allocation& xp,
                                        const GameInstance& inst);

Signature compute_signature(const Allocation& x, const Allocation& xp, const GameInstance& inst);

std::vector<Rational> rational_weights(const GameInstance& inst);

// The floored response on battlefield i implied by the signature thresholds.
// Throws when i is one of the signature battlefields.
std::pair<int, int> partial_response(int i, Troops xi, Troops xpi, const Rational& wi,
                                     const Signature& sig, const std::vector<Rational>& weights);

// Signature head: everything but mu and the two utilities.
struct SignatureHead {
  int a = kNoBattlefield;
  int b = kNoBattlefield;
  int cidx = kNoBattlefield;
  std::vector<int> cells;           // distinct battlefields of a, b, cidx
  std::vector<Troops> x_cells;      // x on cells
  std::vector<Troops> xprime_cells; // x' on cells
};

Signature make_signature(const SignatureHead& head, Troops mu, Rational udot1, Rational udot2);

// Candidate (udot1, udot2) pairs: floored responses on the head's cells that
// respect the ordering condition.
std::vector<std::pair<Rational, Rational>> candidate_utilities(
    const SignatureHead& head, const std::vector<Rational>& weights);

// Streams every head: (a, b, cidx) in ([k] U {none})^3 and x, x' on the
// distinct cells with per-strategy sums at most n.
void for_each_signature_head(int k, Troops n, const std::function<void(const SignatureHead&)>& visit);

// Streams a superset of the realizable signatures. Returning false from visit stops.
void enumerate_signatures(const GameInstance& inst, const std::function<bool(const Signature&)>& visit);

std::uint64_t count_signatures(const GameInstance& inst);

}  // namespace blotto
