#pragma once

#include "blotto/caps.hpp"
#include "blotto/game.hpp"

#include <set>
#include <vector>

namespace blotto {

// Multiset of support probabilities, stored non-increasing, all positive.
using Profile = std::vector<Rational>;

Profile make_profile(std::vector<Rational> probs);

struct ProfileLpResult {
  std::vector<Rational> rho;
  Rational value;
};

// Distribution over c support strategies maximizing the smallest mass of a
// family member. An empty family yields value 1 and the uniform distribution.
ProfileLpResult solve_profile_lp(const SubsetFamily& family);

// Profiles obtained from the probability LP over every family of subsets of
// {1..c}. Families are reduced to their inclusion-minimal members first,
// since only those constrain the LP.
std::set<Profile> construct_Pc(int c, const Caps& caps = {});

// A two-strategy with guarantee above 1/2 collapses to the pure strategy that
// always wins; one with guarantee in (0,1/2) is rebalanced to (1/2,1/2).
MixedStrategy normalize_two_strategy(const MixedStrategy& s, Weight u, const GameInstance& inst,
                                     const Caps& caps = {});

}  // namespace blotto
