#include "blotto/expectation.hpp"

#include "blotto/errors.hpp"

#include <functional>

namespace blotto {

Rational opt_bounds(int c) {
  if (c < 1) throw InvalidInput("c must be at least 1");
  return Rational(1, c);
}

Rational grid_floor(Weight w_total, int c, const Rational& epsilon) {
  if (w_total < 1) throw InvalidInput("total weight must be positive");
  if (c < 1) throw InvalidInput("c must be at least 1");
  if (sgn(epsilon) <= 0 || epsilon >= 1) throw InvalidInput("epsilon must lie in (0,1)");
  return epsilon / (Rational(static_cast<long>(c) * c) * Rational(static_cast<long>(w_total)));
}

std::set<Profile> profile_grid(Weight w_total, int c, const Rational& epsilon, const Caps& caps) {
  const Rational p0 = grid_floor(w_total, c, epsilon);
  std::vector<Rational> levels;
  for (Rational p = p0; p < 1; p *= 1 + epsilon) levels.push_back(p);
  levels.push_back(Rational(1));
  std::set<Profile> out;
  std::vector<Rational> pick;
  std::uint64_t work = 0;
  // Levels ascend and indices never increase along a pick, so each multiset
  // is visited once.
  std::function<void(std::size_t, const Rational&)> rec = [&](std::size_t top, const Rational& sum) {
    if (!pick.empty()) {
      if (++work > caps.max_work) throw CapExceeded("profile grid exceeds work cap");
      Profile p;
      for (const auto& v : pick) p.push_back(v / sum);
      out.insert(make_profile(std::move(p)));
    }
    if (static_cast<int>(pick.size()) == c) return;
    for (std::size_t i = 0; i < top; ++i) {
      Rational next = sum + levels[i];
      if (next > 1) break;
      pick.push_back(levels[i]);
      rec(i + 1, next);
      pick.pop_back();
    }
  };
  rec(levels.size(), Rational(0));
  return out;
}

BestResponse<Rational> greedy_weak_adversary_expected(const GameInstance& inst,
                                                      const MixedStrategy& s) {
  s.validate(inst);
  const int k = inst.k();
  const std::size_t c = s.size();
  Allocation y(static_cast<std::size_t>(k), 0);
  // beaten[j][i]: y_i >= x^j_i already.
  std::vector<std::vector<bool>> beaten(c, std::vector<bool>(static_cast<std::size_t>(k), false));
  Troops left = inst.m();
  for (;;) {
    bool found = false;
    int bi = 0;
    std::size_t bj = 0;
    Rational best_gain, best_cost;
    for (int i = 0; i < k; ++i) {
      const auto iu = static_cast<std::size_t>(i);
      for (std::size_t j = 0; j < c; ++j) {
        if (beaten[j][iu]) continue;
        const Troops level = s.support[j][iu];
        const Troops cost = level - y[iu];
        if (cost > left) continue;
        Rational gain = 0;
        for (std::size_t q = 0; q < c; ++q)
          if (!beaten[q][iu] && s.support[q][iu] <= level) gain += s.probs[q];
        gain *= Rational(static_cast<long>(inst.weight(i)));
        if (sgn(gain) == 0) continue;
        bool better;
        if (!found) {
          better = true;
        } else if (cost == 0 || best_cost == 0) {
          better = cost == 0 && best_cost != 0;
        } else {
          // gain / cost > best_gain / best_cost
          better = gain * best_cost > best_gain * Rational(static_cast<long>(cost));
        }
        if (better) {
          found = true;
          bi = i;
          bj = j;
          best_gain = gain;
          best_cost = Rational(static_cast<long>(cost));
        }
      }
    }
    if (!found) break;
    const auto iu = static_cast<std::size_t>(bi);
    const Troops level = s.support[bj][iu];
    left -= level - y[iu];
    y[iu] = level;
    for (std::size_t q = 0; q < c; ++q)
      if (s.support[q][iu] <= level) beaten[q][iu] = true;
  }
  return {expected_player2_payoff(inst, s, y), y};
}

}  // namespace blotto
