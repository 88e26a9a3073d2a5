#pragma once

#include "blotto/best_response.hpp"
#include "blotto/caps.hpp"
#include "blotto/game.hpp"
#include "blotto/profiles.hpp"

#include <set>

namespace blotto {

// A nonzero expected maximin over c-strategies exceeds this.
Rational opt_bounds(int c);

// Smallest probability kept in the grid: epsilon / (c^2 w_total).
Rational grid_floor(Weight w_total, int c, const Rational& epsilon);

// Profiles built from up to c values of {p0, (1+eps) p0, ...} and 1 whose sum
// is at most 1, each renormalized.
std::set<Profile> profile_grid(Weight w_total, int c, const Rational& epsilon,
                               const Caps& caps = {});

// Player 2 repeatedly raises one battlefield to the next level of some support
// strategy, taking the best expected gain per troop that still fits.
BestResponse<Rational> greedy_weak_adversary_expected(const GameInstance& inst,
                                                      const MixedStrategy& s);

}  // namespace blotto
