#include "blotto/best_response.hpp"

#include "blotto/errors.hpp"

#include <algorithm>
#include <map>

namespace blotto {

namespace {

template <class V>
BestResponse<V> knapsack(const std::vector<V>& values, Troops m, const Allocation& x) {
  const std::size_t k = values.size();
  Troops total = 0;
  for (Troops t : x) total += t;
  const Troops cap = std::min(m, total);
  std::vector<V> best(static_cast<std::size_t>(cap) + 1, V(0));
  std::vector<std::vector<char>> take(k, std::vector<char>(static_cast<std::size_t>(cap) + 1, 0));
  for (std::size_t i = 0; i < k; ++i) {
    if (x[i] > cap) continue;
    for (Troops c = cap; c >= x[i]; --c) {
      V cand = best[static_cast<std::size_t>(c - x[i])] + values[i];
      if (cand > best[static_cast<std::size_t>(c)]) {
        best[static_cast<std::size_t>(c)] = cand;
        take[i][static_cast<std::size_t>(c)] = 1;
      }
    }
  }
  BestResponse<V> out;
  out.value = best[static_cast<std::size_t>(cap)];
  out.y.assign(k, 0);
  Troops c = cap;
  for (std::size_t i = k; i-- > 0;) {
    if (take[i][static_cast<std::size_t>(c)]) {
      out.y[i] = x[i];
      c -= x[i];
    }
  }
  return out;
}

template <class T>
T troop_value(Troops t) {
  return T(static_cast<long>(t));
}
template <>
Troops troop_value<Troops>(Troops t) {
  return t;
}

// Layered DP over battlefields. State (a, b) = weight x and x' have won so far;
// value = fewest troops player 2 spent reaching it.
template <class T>
struct PairDp {
  using State = std::pair<Weight, Weight>;
  struct Entry {
    T troops;
    State prev;
    T choice;
  };
  std::vector<std::map<State, Entry>> layers;

  PairDp(const std::vector<T>& x, const std::vector<T>& xp, const GameInstance& inst,
         Weight cap_a, Weight cap_b) {
    const std::size_t k = x.size();
    layers.resize(k + 1);
    layers[0].emplace(State{0, 0}, Entry{T(0), State{0, 0}, T(0)});
    const T budget = troop_value<T>(inst.m());
    for (std::size_t j = 0; j < k; ++j) {
      std::vector<T> options{T(0), std::min(x[j], xp[j]), std::max(x[j], xp[j])};
      std::sort(options.begin(), options.end());
      options.erase(std::unique(options.begin(), options.end()), options.end());
      const Weight w = inst.weight(static_cast<int>(j));
      for (const auto& [state, entry] : layers[j]) {
        for (const T& y : options) {
          T spent = entry.troops + y;
          if (spent > budget) continue;
          State next{state.first + (x[j] > y ? w : 0), state.second + (xp[j] > y ? w : 0)};
          if (next.first > cap_a || next.second > cap_b) continue;
          auto it = layers[j + 1].find(next);
          if (it == layers[j + 1].end())
            layers[j + 1].emplace(next, Entry{spent, state, y});
          else if (spent < it->second.troops)
            it->second = Entry{spent, state, y};
        }
      }
    }
  }

  std::vector<T> witness(State end) const {
    std::vector<T> y(layers.size() - 1, T(0));
    for (std::size_t j = layers.size() - 1; j > 0; --j) {
      const Entry& e = layers[j].at(end);
      y[j - 1] = e.choice;
      end = e.prev;
    }
    return y;
  }
};

template <class T>
PreventResult<std::vector<T>> prevent(const std::vector<T>& x, const std::vector<T>& xp,
                                      const GameInstance& inst, Weight cap, Weight cap_prime) {
  if (cap < 0 || cap_prime < 0) return {};
  if (static_cast<int>(x.size()) != inst.k() || static_cast<int>(xp.size()) != inst.k())
    throw InvalidInput("allocation size does not match the instance");
  cap = std::min(cap, inst.total_weight());
  cap_prime = std::min(cap_prime, inst.total_weight());
  PairDp<T> dp(x, xp, inst, cap, cap_prime);
  const auto& last = dp.layers.back();
  if (last.empty()) return {};
  return {true, dp.witness(last.begin()->first)};
}

template <class T>
TwoStrategyGuarantee<std::vector<T>> guarantee(const std::vector<T>& x, const std::vector<T>& xp,
                                               const GameInstance& inst) {
  if (static_cast<int>(x.size()) != inst.k() || static_cast<int>(xp.size()) != inst.k())
    throw InvalidInput("allocation size does not match the instance");
  const Weight total = inst.total_weight();
  PairDp<T> dp(x, xp, inst, total, total);
  TwoStrategyGuarantee<std::vector<T>> out;
  out.value = total + 1;
  std::pair<Weight, Weight> arg{0, 0};
  for (const auto& [state, entry] : dp.layers.back()) {
    Weight v = std::max(state.first, state.second);
    if (v < out.value) {
      out.value = v;
      arg = state;
    }
  }
  out.y = dp.witness(arg);
  return out;
}

}  // namespace

BestResponse<Weight> pure_best_response_dp(const GameInstance& inst, const Allocation& x) {
  validate_allocation(x, inst.n(), inst.k());
  return knapsack<Weight>(inst.weights(), inst.m(), x);
}

BestResponse<Rational> pure_best_response_dp(const std::vector<Rational>& weights, Troops m,
                                             const Allocation& x) {
  if (x.size() != weights.size()) throw InvalidInput("allocation size does not match weights");
  return knapsack<Rational>(weights, m, x);
}

PreventResult<Allocation> two_strategy_prevent_dp(const Allocation& x, const Allocation& xp,
                                                  const GameInstance& inst, Weight cap,
                                                  Weight cap_prime) {
  return prevent<Troops>(x, xp, inst, cap, cap_prime);
}

PreventResult<RationalAllocation> two_strategy_prevent_dp(const RationalAllocation& x,
                                                          const RationalAllocation& xp,
                                                          const GameInstance& inst, Weight cap,
                                                          Weight cap_prime) {
  return prevent<Rational>(x, xp, inst, cap, cap_prime);
}

TwoStrategyGuarantee<Allocation> two_strategy_guarantee(const Allocation& x, const Allocation& xp,
                                                        const GameInstance& inst) {
  return guarantee<Troops>(x, xp, inst);
}

TwoStrategyGuarantee<RationalAllocation> two_strategy_guarantee(const RationalAllocation& x,
                                                                const RationalAllocation& xp,
                                                                const GameInstance& inst) {
  return guarantee<Rational>(x, xp, inst);
}

namespace {

void check_expected_input(const GameInstance& inst, const MixedStrategy& s) {
  if (s.support.empty() || s.support.size() != s.probs.size())
    throw InvalidInput("malformed mixed strategy");
  Rational sum = 0;
  for (std::size_t j = 0; j < s.size(); ++j) {
    validate_allocation(s.support[j], inst.n(), inst.k());
    if (sgn(s.probs[j]) < 0) throw InvalidInput("negative probability");
    sum += s.probs[j];
  }
  if (sum != 1) throw InvalidInput("probabilities do not sum to 1");
}

}  // namespace

BestResponse<Rational> expected_best_response_dp(const GameInstance& inst, const MixedStrategy& s) {
  check_expected_input(inst, s);
  const std::size_t k = static_cast<std::size_t>(inst.k());
  std::vector<std::vector<std::pair<Troops, Rational>>> levels(k);
  Troops reach = 0;
  for (std::size_t i = 0; i < k; ++i) {
    std::vector<Troops> ls{0};
    for (const auto& x : s.support) ls.push_back(x[i]);
    std::sort(ls.begin(), ls.end());
    ls.erase(std::unique(ls.begin(), ls.end()), ls.end());
    for (Troops l : ls) {
      Rational mass = 0;
      for (std::size_t j = 0; j < s.size(); ++j)
        if (s.support[j][i] <= l) mass += s.probs[j];
      levels[i].push_back({l, mass * Rational(static_cast<long>(inst.weight(static_cast<int>(i))))});
    }
    reach += ls.back();
  }
  const Troops cap = std::min(inst.m(), reach);
  const std::size_t width = static_cast<std::size_t>(cap) + 1;
  std::vector<Rational> best(width, Rational(0));
  std::vector<std::vector<std::uint32_t>> pick(k, std::vector<std::uint32_t>(width, 0));
  for (std::size_t i = 0; i < k; ++i) {
    std::vector<Rational> next(width);
    for (std::size_t c = 0; c < width; ++c) {
      bool set = false;
      for (std::uint32_t o = 0; o < levels[i].size(); ++o) {
        Troops l = levels[i][o].first;
        if (l > static_cast<Troops>(c)) break;
        Rational cand = best[c - static_cast<std::size_t>(l)] + levels[i][o].second;
        if (!set || cand > next[c]) {
          next[c] = cand;
          pick[i][c] = o;
          set = true;
        }
      }
    }
    best.swap(next);
  }
  BestResponse<Rational> out;
  out.value = best[static_cast<std::size_t>(cap)];
  out.y.assign(k, 0);
  std::size_t c = static_cast<std::size_t>(cap);
  for (std::size_t i = k; i-- > 0;) {
    Troops l = levels[i][pick[i][c]].first;
    out.y[i] = l;
    c -= static_cast<std::size_t>(l);
  }
  return out;
}

Rational expected_player2_payoff(const GameInstance& inst, const MixedStrategy& s,
                                 const Allocation& y) {
  Rational v = 0;
  for (std::size_t j = 0; j < s.size(); ++j)
    v += s.probs[j] *
         Rational(static_cast<long>(inst.total_weight() - player1_payoff(s.support[j], y, inst.weights())));
  return v;
}

}  // namespace blotto
