#include "blotto/game.hpp"

#include "blotto/errors.hpp"

#include <algorithm>
#include <set>
#include <string>

namespace blotto {

namespace {

constexpr Weight kWeightLimit = Weight{1} << 62;

}  // namespace

GameInstance::GameInstance(Troops n, Troops m, std::vector<Weight> weights)
    : n_(n), m_(m), weights_(std::move(weights)) {
  if (n_ < 0 || m_ < 0) throw InvalidInput("troop budgets must be non-negative");
  if (weights_.empty()) throw InvalidInput("instance needs at least one battlefield");
  for (Weight w : weights_) {
    if (w <= 0) throw InvalidInput("battlefield weights must be positive");
    if (w >= kWeightLimit - total_) throw InvalidInput("total weight too large");
    total_ += w;
  }
}

Weight GameInstance::max_weight() const {
  return *std::max_element(weights_.begin(), weights_.end());
}

void validate_allocation(const Allocation& x, Troops budget, int k) {
  if (static_cast<int>(x.size()) != k)
    throw InvalidInput("allocation has " + std::to_string(x.size()) + " entries, expected " +
                       std::to_string(k));
  Troops sum = 0;
  for (Troops t : x) {
    if (t < 0) throw InvalidInput("negative troop count");
    sum += t;
    if (sum > budget) throw InvalidInput("allocation exceeds troop budget");
  }
}

void validate_allocation(const RationalAllocation& x, const Rational& budget, int k) {
  if (static_cast<int>(x.size()) != k)
    throw InvalidInput("allocation has " + std::to_string(x.size()) + " entries, expected " +
                       std::to_string(k));
  Rational sum = 0;
  for (const Rational& t : x) {
    if (sgn(t) < 0) throw InvalidInput("negative troop count");
    sum += t;
  }
  if (sum > budget) throw InvalidInput("allocation exceeds troop budget");
}

Payoffs payoffs(const Allocation& x, const Allocation& y, const GameInstance& inst) {
  validate_allocation(x, inst.n(), inst.k());
  validate_allocation(y, inst.m(), inst.k());
  Weight p1 = player1_payoff(x, y, inst.weights());
  return {p1, inst.total_weight() - p1};
}

Payoffs payoffs(const RationalAllocation& x, const RationalAllocation& y,
                const GameInstance& inst) {
  validate_allocation(x, Rational(static_cast<long>(inst.n())), inst.k());
  validate_allocation(y, Rational(static_cast<long>(inst.m())), inst.k());
  Weight p1 = 0;
  for (int i = 0; i < inst.k(); ++i)
    if (x[i] > y[i]) p1 += inst.weight(i);
  return {p1, inst.total_weight() - p1};
}

Weight player1_payoff(const Allocation& x, const Allocation& y,
                      const std::vector<Weight>& weights) {
  Weight p1 = 0;
  for (std::size_t i = 0; i < weights.size(); ++i)
    if (x[i] > y[i]) p1 += weights[i];
  return p1;
}

Rational player1_payoff(const Allocation& x, const Allocation& y,
                        const std::vector<Rational>& weights) {
  Rational p1 = 0;
  for (std::size_t i = 0; i < weights.size(); ++i)
    if (x[i] > y[i]) p1 += weights[i];
  return p1;
}

void MixedStrategy::validate(const GameInstance& inst) const {
  if (support.empty()) throw InvalidInput("empty support");
  if (support.size() != probs.size()) throw InvalidInput("support and probabilities differ in size");
  std::set<Allocation> seen;
  Rational sum = 0;
  for (std::size_t j = 0; j < support.size(); ++j) {
    validate_allocation(support[j], inst.n(), inst.k());
    if (!seen.insert(support[j]).second) throw InvalidInput("repeated support allocation");
    if (sgn(probs[j]) <= 0 || probs[j] > 1) throw InvalidInput("probability outside (0,1]");
    sum += probs[j];
  }
  if (sum != 1) throw InvalidInput("probabilities do not sum to 1");
}

void ContinuousMixedStrategy::validate(const GameInstance& inst) const {
  if (support.empty()) throw InvalidInput("empty support");
  if (support.size() != probs.size()) throw InvalidInput("support and probabilities differ in size");
  Rational sum = 0;
  Rational budget(static_cast<long>(inst.n()));
  for (std::size_t j = 0; j < support.size(); ++j) {
    validate_allocation(support[j], budget, inst.k());
    if (sgn(probs[j]) <= 0 || probs[j] > 1) throw InvalidInput("probability outside (0,1]");
    sum += probs[j];
  }
  if (sum != 1) throw InvalidInput("probabilities do not sum to 1");
}

std::vector<SubsetMask> SubsetFamily::members() const {
  std::vector<SubsetMask> out;
  for (SubsetMask s = 0; s < (SubsetMask{1} << c); ++s)
    if (contains(s)) out.push_back(s);
  return out;
}

void for_each_dominated_response(const std::vector<Allocation>& support, Troops budget,
                                 std::uint64_t max_responses,
                                 const std::function<void(const Allocation&)>& visit) {
  const std::size_t k = support.front().size();
  std::vector<std::vector<Troops>> levels(k);
  for (std::size_t i = 0; i < k; ++i) {
    levels[i].push_back(0);
    for (const auto& x : support) levels[i].push_back(x[i]);
    std::sort(levels[i].begin(), levels[i].end());
    levels[i].erase(std::unique(levels[i].begin(), levels[i].end()), levels[i].end());
  }
  Allocation y(k, 0);
  std::uint64_t produced = 0;
  std::function<void(std::size_t, Troops)> rec = [&](std::size_t i, Troops left) {
    if (i == k) {
      if (++produced > max_responses)
        throw CapExceeded("response enumeration exceeds cap of " + std::to_string(max_responses));
      visit(y);
      return;
    }
    for (Troops v : levels[i]) {
      if (v > left) break;
      y[i] = v;
      rec(i + 1, left - v);
    }
    y[i] = 0;
  };
  rec(0, budget);
}

SubsetFamily winning_subsets(const GameInstance& inst, const std::vector<Allocation>& support,
                             Weight u, const Caps& caps) {
  if (support.empty()) throw InvalidInput("empty support");
  if (static_cast<int>(support.size()) > kMaxFamilySupport)
    throw CapExceeded("support larger than " + std::to_string(kMaxFamilySupport));
  for (const auto& x : support) validate_allocation(x, inst.n(), inst.k());
  SubsetFamily family;
  family.c = static_cast<int>(support.size());
  for_each_dominated_response(support, inst.m(), caps.max_responses, [&](const Allocation& y) {
    SubsetMask mask = 0;
    for (std::size_t j = 0; j < support.size(); ++j)
      if (player1_payoff(support[j], y, inst.weights()) >= u) mask |= SubsetMask{1} << j;
    family.insert(mask);
  });
  return family;
}

Rational subset_mass(SubsetMask subset, const std::vector<Rational>& probs) {
  Rational mass = 0;
  for (std::size_t j = 0; j < probs.size(); ++j)
    if ((subset >> j) & 1u) mass += probs[j];
  return mass;
}

Rational guaranteed_probability(const MixedStrategy& s, Weight u, const GameInstance& inst,
                                const Caps& caps) {
  s.validate(inst);
  SubsetFamily family = winning_subsets(inst, s.support, u, caps);
  Rational best = 1;
  for (SubsetMask w : family.members()) best = std::min(best, subset_mass(w, s.probs));
  return best;
}

}  // namespace blotto
