#pragma once

// Random generators and brute-force references shared by the test binaries.
// The references enumerate responses directly and never call the library's
// dynamic programs.

#include "blotto/game.hpp"

#include <algorithm>
#include <cstdint>
#include <functional>
#include <random>
#include <set>
#include <vector>

namespace testing_support {

using blotto::Allocation;
using blotto::GameInstance;
using blotto::MixedStrategy;
using blotto::Rational;
using blotto::RationalAllocation;
using blotto::Troops;
using blotto::Weight;

class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  std::int64_t uniform(std::int64_t lo, std::int64_t hi) {
    return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng_);
  }
  bool coin() { return uniform(0, 1) == 1; }

  GameInstance instance(Troops max_n, Troops max_m, int max_k, Weight max_w, Troops min_n = 0,
                        Troops min_m = 0) {
    Troops n = uniform(min_n, max_n);
    Troops m = uniform(min_m, max_m);
    int k = static_cast<int>(uniform(1, max_k));
    std::vector<Weight> w;
    for (int i = 0; i < k; ++i) w.push_back(uniform(1, max_w));
    return GameInstance(n, m, w);
  }

  // Sum anywhere in [0, budget], usually the full budget.
  Allocation allocation(Troops budget, int k) {
    Troops total = uniform(0, 3) == 0 ? uniform(0, budget) : budget;
    Allocation x(static_cast<std::size_t>(k), 0);
    for (Troops t = 0; t < total; ++t) ++x[static_cast<std::size_t>(uniform(0, k - 1))];
    return x;
  }

  // Distinct support of size at most c (fewer when the space is small).
  MixedStrategy mixed(const GameInstance& inst, int c) {
    std::set<Allocation> seen;
    MixedStrategy s;
    for (int tries = 0; static_cast<int>(s.support.size()) < c && tries < 50; ++tries) {
      Allocation x = allocation(inst.n(), inst.k());
      if (seen.insert(x).second) s.support.push_back(x);
    }
    std::vector<std::int64_t> raw;
    std::int64_t total = 0;
    for (std::size_t j = 0; j < s.support.size(); ++j) {
      raw.push_back(uniform(1, 6));
      total += raw.back();
    }
    for (auto r : raw) s.probs.push_back(Rational(r) / total);
    return s;
  }

 private:
  std::mt19937_64 rng_;
};

// Every y with sum <= budget.
inline void each_allocation(Troops budget, int k, const std::function<void(const Allocation&)>& f) {
  Allocation y(static_cast<std::size_t>(k), 0);
  std::function<void(int, Troops)> rec = [&](int i, Troops left) {
    if (i == k) {
      f(y);
      return;
    }
    for (Troops v = 0; v <= left; ++v) {
      y[static_cast<std::size_t>(i)] = v;
      rec(i + 1, left - v);
    }
    y[static_cast<std::size_t>(i)] = 0;
  };
  rec(0, budget);
}

// Player 1's payoff; ties go to player 2.
inline Weight p1(const Allocation& x, const Allocation& y, const GameInstance& inst) {
  Weight s = 0;
  for (int i = 0; i < inst.k(); ++i)
    if (x[static_cast<std::size_t>(i)] > y[static_cast<std::size_t>(i)]) s += inst.weight(i);
  return s;
}

inline Weight brute_best_response(const GameInstance& inst, const Allocation& x) {
  Weight best = 0;
  each_allocation(inst.m(), inst.k(), [&](const Allocation& y) {
    best = std::max(best, inst.total_weight() - p1(x, y, inst));
  });
  return best;
}

inline Weight brute_pure_maximin(const GameInstance& inst) {
  Weight best = 0;
  each_allocation(inst.n(), inst.k(), [&](const Allocation& x) {
    best = std::max(best, inst.total_weight() - brute_best_response(inst, x));
  });
  return best;
}

inline Weight brute_two_guarantee(const GameInstance& inst, const Allocation& x, const Allocation& xp) {
  Weight best = inst.total_weight();
  each_allocation(inst.m(), inst.k(), [&](const Allocation& y) {
    best = std::min(best, std::max(p1(x, y, inst), p1(xp, y, inst)));
  });
  return best;
}

inline bool brute_prevent(const GameInstance& inst, const Allocation& x, const Allocation& xp,
                          Weight cap, Weight cap_prime) {
  bool found = false;
  each_allocation(inst.m(), inst.k(), [&](const Allocation& y) {
    if (p1(x, y, inst) <= cap && p1(xp, y, inst) <= cap_prime) found = true;
  });
  return found;
}

inline Rational expected_p2(const GameInstance& inst, const MixedStrategy& s, const Allocation& y) {
  Rational v = 0;
  for (std::size_t j = 0; j < s.support.size(); ++j)
    v += s.probs[j] * Rational(static_cast<long>(inst.total_weight() - p1(s.support[j], y, inst)));
  return v;
}

inline Rational brute_expected_response(const GameInstance& inst, const MixedStrategy& s) {
  Rational best = -1;
  each_allocation(inst.m(), inst.k(), [&](const Allocation& y) {
    best = std::max(best, expected_p2(inst, s, y));
  });
  return best;
}

inline Rational brute_probability(const GameInstance& inst, const MixedStrategy& s, Weight u) {
  Rational worst = 1;
  each_allocation(inst.m(), inst.k(), [&](const Allocation& y) {
    Rational p = 0;
    for (std::size_t j = 0; j < s.support.size(); ++j)
      if (p1(s.support[j], y, inst) >= u) p += s.probs[j];
    worst = std::min(worst, p);
  });
  return worst;
}

// Continuous pair: player 2 only needs y_i in {0, x_i, x'_i}.
inline Weight brute_two_guarantee(const GameInstance& inst, const RationalAllocation& x,
                                  const RationalAllocation& xp) {
  const int k = inst.k();
  Weight best = inst.total_weight();
  std::vector<int> pick(static_cast<std::size_t>(k), 0);
  std::function<void(int, Rational)> rec = [&](int i, Rational spent) {
    if (spent > Rational(static_cast<long>(inst.m()))) return;
    if (i == k) {
      Weight a = 0, b = 0;
      for (int t = 0; t < k; ++t) {
        const auto tu = static_cast<std::size_t>(t);
        Rational y = pick[tu] == 0 ? Rational(0) : pick[tu] == 1 ? x[tu] : xp[tu];
        if (x[tu] > y) a += inst.weight(t);
        if (xp[tu] > y) b += inst.weight(t);
      }
      best = std::min(best, std::max(a, b));
      return;
    }
    const auto iu = static_cast<std::size_t>(i);
    for (int o = 0; o < 3; ++o) {
      pick[iu] = o;
      rec(i + 1, spent + (o == 0 ? Rational(0) : o == 1 ? x[iu] : xp[iu]));
    }
  };
  rec(0, Rational(0));
  return best;
}

}  // namespace testing_support
