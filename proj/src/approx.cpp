#include "blotto/approx.hpp"

#include "blotto/best_response.hpp"
#include "blotto/errors.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <set>
#include <string>

namespace blotto {

unsigned long delta_exponent(const Rational& base, Weight w) {
  if (base <= 1) throw InvalidInput("rounding base must exceed 1");
  if (w < 1) throw InvalidInput("weights must be positive");
  const Integer num = base.get_num(), den = base.get_den();
  const Integer target(std::to_string(w));
  // (num/den)^j <= w  iff  num^j <= w den^j.
  auto fits = [&](unsigned long j) {
    Integer a, b;
    mpz_pow_ui(a.get_mpz_t(), num.get_mpz_t(), j);
    mpz_pow_ui(b.get_mpz_t(), den.get_mpz_t(), j);
    return a <= target * b;
  };
  double estimate = std::log(static_cast<double>(w)) / std::log(base.get_d());
  unsigned long j = estimate > 1 ? static_cast<unsigned long>(estimate) : 0;
  while (j > 0 && !fits(j)) --j;
  while (fits(j + 1)) ++j;
  return j;
}

RoundedInstance delta_uniform(const GameInstance& inst, const Rational& delta,
                              std::optional<Weight> cap) {
  if (sgn(delta) <= 0) throw InvalidInput("delta must be positive");
  if (cap && *cap < 1) throw InvalidInput("weight cap must be at least 1");
  RoundedInstance out{inst, delta, cap, {}};
  const Rational base = 1 + delta;
  const Integer num = base.get_num(), den = base.get_den();
  std::map<Weight, Rational> memo;
  for (Weight w : inst.weights()) {
    Weight target = cap ? std::min(w, *cap) : w;
    auto it = memo.find(target);
    if (it == memo.end()) {
      unsigned long j = delta_exponent(base, target);
      Integer a, b;
      mpz_pow_ui(a.get_mpz_t(), num.get_mpz_t(), j);
      mpz_pow_ui(b.get_mpz_t(), den.get_mpz_t(), j);
      Rational p(a, b);
      p.canonicalize();
      it = memo.emplace(target, p).first;
    }
    out.weights.push_back(it->second);
  }
  return out;
}

HeavyLightSplit split_heavy_light(const std::vector<Rational>& weights, const Rational& tau) {
  HeavyLightSplit s{tau, {}, {}};
  for (int i = 0; i < static_cast<int>(weights.size()); ++i)
    (weights[static_cast<std::size_t>(i)] >= tau ? s.heavy : s.light).push_back(i);
  return s;
}

namespace {

// Light battlefields sorted by w_i/x_i descending (x_i = 0 first), ties to the lower index.
std::vector<int> light_order(const std::vector<Rational>& weights, const Allocation& x,
                             const std::vector<int>& light) {
  std::vector<int> order = light;
  std::stable_sort(order.begin(), order.end(), [&](int i, int j) {
    if (x[i] == 0 || x[j] == 0) return x[i] == 0 && x[j] != 0;
    // w_i/x_i > w_j/x_j
    return weights[i] * Rational(static_cast<long>(x[j])) >
           weights[j] * Rational(static_cast<long>(x[i]));
  });
  return order;
}

}  // namespace

WeakResponse weak_adversary_pure(const std::vector<Rational>& weights, Troops m,
                                 const Allocation& x, const HeavyLightSplit& split) {
  if (x.size() != weights.size()) throw InvalidInput("allocation size does not match weights");
  const std::size_t kh = split.heavy.size();
  if (kh >= 40) throw CapExceeded("too many heavy battlefields for response enumeration");
  const std::vector<int> order = light_order(weights, x, split.light);
  WeakResponse best;
  bool found = false;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << kh); ++mask) {
    Allocation y(x.size(), 0);
    Troops left = m;
    Rational value = 0;
    bool affordable = true;
    for (std::size_t t = 0; t < kh; ++t) {
      int i = split.heavy[t];
      if ((mask >> t) & 1u) {
        if (x[i] == 0) {
          affordable = false;  // same as the response without this bit
          break;
        }
        y[i] = x[i];
        left -= x[i];
      }
      if (y[i] >= x[i]) value += weights[i];
    }
    if (!affordable || left < 0) continue;
    for (int i : order) {
      if (x[i] > left) break;
      y[i] = x[i];
      left -= x[i];
      value += weights[i];
    }
    if (!found || value > best.value) {
      best = {y, value};
      found = true;
    }
  }
  return best;
}

WeakResponse weak_adversary_pure(const GameInstance& inst, const Allocation& x,
                                 const HeavyLightSplit& split) {
  validate_allocation(x, inst.n(), inst.k());
  return weak_adversary_pure(rational_weights(inst), inst.m(), x, split);
}

PtasSetup make_ptas_setup(const GameInstance& inst, Weight u, const Rational& epsilon) {
  if (sgn(epsilon) <= 0 || epsilon >= 1) throw InvalidInput("epsilon must lie in (0,1)");
  if (u < 1) throw InvalidInput("u must be positive");
  PtasSetup s;
  s.n = inst.n();
  s.m = inst.m();
  s.u = u;
  s.epsilon = epsilon;
  s.weights = delta_uniform(inst, epsilon / 2, u).weights;
  s.split = split_heavy_light(s.weights, epsilon * u / 2);
  std::map<Rational, std::vector<int>, std::greater<>> by_weight;
  for (int i : s.split.heavy) by_weight[s.weights[static_cast<std::size_t>(i)]].push_back(i);
  for (auto& [w, members] : by_weight) s.classes.push_back(members);
  return s;
}

Allocation expand_heavy(const PtasSetup& setup, const std::vector<Troops>& xh) {
  Allocation x(setup.weights.size(), 0);
  for (std::size_t c = 0; c < setup.classes.size(); ++c) {
    const auto& members = setup.classes[c];
    const Troops size = static_cast<Troops>(members.size());
    for (std::size_t j = 0; j < members.size(); ++j)
      x[members[j]] = xh[c] / size + (static_cast<Troops>(j) < xh[c] % size ? 1 : 0);
  }
  return x;
}

std::vector<HeavyResponse> heavy_responses(const PtasSetup& setup, const Allocation& heavy_x) {
  const Troops max_conceded = to_int64(floor(Rational(2) / setup.epsilon));
  const std::size_t nc = setup.classes.size();
  // Per class, sorted troop counts: conceding l battlefields means winning the
  // cheapest size - l of them.
  std::vector<std::vector<Troops>> prefix(nc);
  for (std::size_t c = 0; c < nc; ++c) {
    std::vector<Troops> xs;
    for (int i : setup.classes[c]) xs.push_back(heavy_x[i]);
    std::sort(xs.begin(), xs.end());
    prefix[c].assign(xs.size() + 1, 0);
    for (std::size_t j = 0; j < xs.size(); ++j) prefix[c][j + 1] = prefix[c][j] + xs[j];
  }
  std::vector<HeavyResponse> all;
  HeavyResponse cur;
  cur.conceded.assign(nc, 0);
  std::function<void(std::size_t, Troops, Troops, Rational)> rec =
      [&](std::size_t c, Troops conceded, Troops cost, Rational g1) {
        if (cost > setup.m) return;
        if (c == nc) {
          cur.remaining = setup.m - cost;
          cur.heavy_payoff = g1;
          all.push_back(cur);
          return;
        }
        const Troops size = static_cast<Troops>(setup.classes[c].size());
        const Rational& w = setup.weights[static_cast<std::size_t>(setup.classes[c][0])];
        for (Troops l = 0; l <= size && conceded + l <= max_conceded; ++l) {
          cur.conceded[c] = l;
          rec(c + 1, conceded + l, cost + prefix[c][static_cast<std::size_t>(size - l)],
              g1 + w * Rational(static_cast<long>(l)));
        }
        cur.conceded[c] = 0;
      };
  rec(0, 0, 0, Rational(0));
  // Keep responses not dominated in (more troops left, less conceded weight).
  std::stable_sort(all.begin(), all.end(), [](const HeavyResponse& a, const HeavyResponse& b) {
    if (a.heavy_payoff != b.heavy_payoff) return a.heavy_payoff < b.heavy_payoff;
    return a.remaining > b.remaining;
  });
  std::vector<HeavyResponse> front;
  for (const auto& r : all)
    if (front.empty() || r.remaining > front.back().remaining) front.push_back(r);
  return front;
}

void enumerate_triplets(const PtasSetup& setup, const std::function<bool(const Triplet&)>& visit,
                        const Caps& caps) {
  const std::size_t nc = setup.classes.size();
  std::uint64_t produced = 0;
  struct Stop {};
  std::vector<Troops> xh(nc, 0);
  std::function<void(std::size_t, Troops)> per_class = [&](std::size_t c, Troops left) {
    if (c < nc) {
      for (Troops t = 0; t <= left; ++t) {
        xh[c] = t;
        per_class(c + 1, left - t);
      }
      xh[c] = 0;
      return;
    }
    const Troops light_troops = left;
    const auto responses = heavy_responses(setup, expand_heavy(setup, xh));
    const std::size_t nr = responses.size();
    Triplet t;
    t.xh = xh;
    t.b.assign(nr, kSentinel);
    t.pinned.assign(nr, 0);
    t.r.assign(nr, Rational(0));
    std::map<int, Troops> pins;  // battlefield -> (troops, uses)
    std::map<int, int> uses;
    std::function<void(std::size_t, Troops)> per_response = [&](std::size_t i, Troops pinned_sum) {
      if (i == nr) {
        if (++produced > caps.max_work) throw CapExceeded("triplet enumeration exceeds work cap");
        if (!visit(t)) throw Stop{};
        return;
      }
      t.b[i] = kSentinel;
      t.pinned[i] = 0;
      t.r[i] = 0;
      per_response(i + 1, pinned_sum);
      for (int j : setup.split.light) {
        auto it = pins.find(j);
        for (Troops p = 1; p <= light_troops; ++p) {
          bool fresh = it == pins.end();
          if (!fresh && it->second != p) continue;
          if (fresh && pinned_sum + p > light_troops) break;
          t.b[i] = j;
          t.pinned[i] = p;
          t.r[i] = setup.weights[static_cast<std::size_t>(j)] / Rational(static_cast<long>(p));
          if (fresh) pins[j] = p;
          ++uses[j];
          per_response(i + 1, pinned_sum + (fresh ? p : 0));
          if (--uses[j] == 0) {
            uses.erase(j);
            pins.erase(j);
          }
          it = pins.find(j);
        }
      }
      t.b[i] = kSentinel;
      t.pinned[i] = 0;
      t.r[i] = 0;
    };
    per_response(0, 0);
  };
  try {
    per_class(0, setup.n);
  } catch (Stop&) {
  }
}

TripletSolution satisfy_triplet_dp(const PtasSetup& setup, const Triplet& t, const Caps& caps) {
  TripletSolution out;
  Allocation heavy_x = expand_heavy(setup, t.xh);
  Troops heavy_sum = std::accumulate(t.xh.begin(), t.xh.end(), Troops{0});
  if (heavy_sum > setup.n) return out;
  const Troops light_troops = setup.n - heavy_sum;
  const auto responses = heavy_responses(setup, heavy_x);
  const std::size_t nr = responses.size();
  if (t.b.size() != nr || t.pinned.size() != nr) return out;

  std::map<int, Troops> pins;
  Troops pinned_sum = 0;
  for (std::size_t i = 0; i < nr; ++i) {
    if (t.b[i] == kSentinel) continue;
    auto [it, fresh] = pins.emplace(t.b[i], t.pinned[i]);
    if (!fresh && it->second != t.pinned[i]) return out;  // conflicting pins
    if (fresh) pinned_sum += t.pinned[i];
    if (t.pinned[i] < 1) return out;
  }
  if (pinned_sum > light_troops) return out;

  // Key: troops used so far and, per response, troops player 2 spends before
  // reaching b_i. Value: Pareto set of per-response weight after b_i.
  struct Entry {
    std::vector<Rational> after;
    Allocation light;
  };
  using Key = std::vector<Troops>;
  std::map<Key, std::vector<Entry>> layer;
  layer[Key(nr + 1, 0)].push_back({std::vector<Rational>(nr, Rational(0)), Allocation(setup.weights.size(), 0)});

  auto dominated = [](const std::vector<Rational>& a, const std::vector<Rational>& b) {
    for (std::size_t i = 0; i < a.size(); ++i)
      if (a[i] > b[i]) return false;
    return true;  // a <= b everywhere
  };

  std::uint64_t work = 0;
  for (int j : setup.split.light) {
    const Rational& wj = setup.weights[static_cast<std::size_t>(j)];
    std::map<Key, std::vector<Entry>> next;
    for (const auto& [key, entries] : layer) {
      Troops used = key[0];
      auto pin = pins.find(j);
      // Troops still reserved for pins not yet placed.
      Troops reserved = 0;
      for (const auto& [bj, p] : pins)
        if (bj > j) reserved += p;
      Troops lo = 0, hi = light_troops - used - reserved;
      if (pin != pins.end()) lo = hi = pin->second;
      if (hi < lo) continue;
      for (Troops xi = lo; xi <= hi; ++xi) {
        Key nk = key;
        nk[0] = used + xi;
        std::vector<bool> to_after(nr, false);
        bool ok = true;
        for (std::size_t i = 0; i < nr && ok; ++i) {
          int b = t.b[i];
          if (b == j) continue;
          bool before = true;
          if (b != kSentinel && xi > 0) {
            // w_j / xi > w_b / pinned, ties broken toward the smaller index.
            Rational lhs = wj * Rational(static_cast<long>(t.pinned[i]));
            Rational rhs = setup.weights[static_cast<std::size_t>(b)] * Rational(static_cast<long>(xi));
            before = lhs > rhs || (lhs == rhs && j < b);
          }
          if (before) {
            nk[i + 1] += xi;
            if (nk[i + 1] > responses[i].remaining) ok = false;
          } else {
            to_after[i] = true;
          }
        }
        if (!ok) continue;
        auto& bucket = next[nk];
        for (const auto& e : entries) {
          if (++work > caps.max_work) throw CapExceeded("triplet DP exceeds work cap");
          Entry ne{e.after, e.light};
          for (std::size_t i = 0; i < nr; ++i)
            if (to_after[i]) ne.after[i] += wj;
          ne.light[j] = xi;
          bool skip = false;
          for (const auto& other : bucket)
            if (dominated(ne.after, other.after)) {
              skip = true;
              break;
            }
          if (skip) continue;
          std::erase_if(bucket, [&](const Entry& other) { return dominated(other.after, ne.after); });
          bucket.push_back(std::move(ne));
        }
      }
    }
    layer.swap(next);
  }

  Rational total_weight = 0;
  for (const auto& w : setup.weights) total_weight += w;
  for (const auto& [key, entries] : layer) {
    bool ok = true;
    for (std::size_t i = 0; i < nr && ok; ++i) {
      Troops before = key[i + 1];
      if (before > responses[i].remaining) ok = false;
      if (t.b[i] != kSentinel && before + t.pinned[i] <= responses[i].remaining) ok = false;
    }
    if (!ok) continue;
    for (const auto& e : entries) {
      Rational value = total_weight;
      for (std::size_t i = 0; i < nr; ++i) {
        Rational vi = responses[i].heavy_payoff;
        if (t.b[i] != kSentinel) vi += e.after[i] + setup.weights[static_cast<std::size_t>(t.b[i])];
        value = std::min(value, vi);
      }
      if (!out.ok || value > out.value) {
        out.ok = true;
        out.value = value;
        out.x = e.light;
      }
    }
  }
  if (out.ok)
    for (int i : setup.split.heavy) out.x[i] = heavy_x[i];
  return out;
}

namespace {

Weight pure_guarantee(const GameInstance& inst, const Allocation& x) {
  return inst.total_weight() - pure_best_response_dp(inst, x).value;
}

Allocation all_on(const GameInstance& inst, int i) {
  Allocation x(static_cast<std::size_t>(inst.k()), 0);
  x[static_cast<std::size_t>(i)] = inst.n();
  return x;
}

int heaviest(const GameInstance& inst) {
  const auto& w = inst.weights();
  return static_cast<int>(std::max_element(w.begin(), w.end()) - w.begin());
}

}  // namespace

PtasResult pure_ptas(const GameInstance& inst, Weight u, const Rational& epsilon,
                     const Caps& caps) {
  if (sgn(epsilon) <= 0 || epsilon >= 1) throw InvalidInput("epsilon must lie in (0,1)");
  PtasResult out;
  out.precondition_met = u < 1 || inst.n() > inst.m();
  const Rational target = (1 - epsilon) * Rational(static_cast<long>(u));
  auto finish = [&](Allocation x) {
    out.x = std::move(x);
    out.certified = pure_guarantee(inst, out.x);
    out.target_met = Rational(static_cast<long>(out.certified)) >= target;
    return out;
  };
  if (u < 1) return finish(Allocation(static_cast<std::size_t>(inst.k()), 0));
  if (inst.max_weight() >= u) {
    out.weak_value = Rational(static_cast<long>(u));
    return finish(all_on(inst, heaviest(inst)));
  }

  PtasSetup setup = make_ptas_setup(inst, u, epsilon);
  bool found = false;
  Allocation best_x(static_cast<std::size_t>(inst.k()), 0);
  Weight best_cert = -1;
  std::set<Allocation> seen;
  enumerate_triplets(
      setup,
      [&](const Triplet& t) {
        TripletSolution sol = satisfy_triplet_dp(setup, t, caps);
        if (!sol.ok) return true;
        if (!found || sol.value > out.weak_value) out.weak_value = sol.value;
        found = true;
        if (!seen.insert(sol.x).second) return true;
        Weight cert = pure_guarantee(inst, sol.x);
        if (cert > best_cert) {
          best_cert = cert;
          best_x = sol.x;
        }
        return true;
      },
      caps);
  return finish(best_x);
}

Rational two_strategy_guarantee_weighted(const Allocation& x, const Allocation& xp,
                                         const std::vector<Rational>& weights, Troops m) {
  // Fewest troops player 2 needs to hold x to a and x' to b.
  std::map<std::pair<Rational, Rational>, Troops> layer{{{Rational(0), Rational(0)}, 0}};
  for (std::size_t j = 0; j < weights.size(); ++j) {
    std::map<std::pair<Rational, Rational>, Troops> next;
    Troops lo = std::min(x[j], xp[j]), hi = std::max(x[j], xp[j]);
    for (const auto& [state, spent] : layer) {
      for (Troops y : {Troops{0}, lo, hi}) {
        Troops s = spent + y;
        if (s > m) continue;
        std::pair<Rational, Rational> ns{state.first + (x[j] > y ? weights[j] : Rational(0)),
                                         state.second + (xp[j] > y ? weights[j] : Rational(0))};
        auto it = next.find(ns);
        if (it == next.end() || s < it->second) next[ns] = s;
      }
    }
    layer.swap(next);
  }
  Rational best = -1;
  for (const auto& [state, spent] : layer) {
    Rational v = std::max(state.first, state.second);
    if (best < 0 || v < best) best = v;
  }
  return best;
}

namespace {

// Opponent model for the signature DP: a budget and player 2's payoffs
// against x and x' accumulated outside the DP battlefields.
struct SigResponse {
  Troops budget = 0;
  Rational base1;
  Rational base2;
};

struct SigEngine {
  const std::vector<Rational>& weights;
  const std::vector<int>& region;  // battlefields handled by the DP, sorted
  Troops nx, nxp;                  // troops available on the region
  const std::vector<SigResponse>& responses;
  Rational total;                  // player 1's total weight, heavy included
  const Caps& caps;
  std::uint64_t work = 0;

  // emit(x, x') on the region with the candidate's internal objective.
  void run(const std::function<void(const Allocation&, const Allocation&, const Rational&)>& emit) {
    const std::size_t nr = responses.size();
    std::vector<SignatureHead> heads(nr);
    std::vector<int> choices{kNoBattlefield};
    for (int j : region) choices.push_back(j);
    // Index triple per response.
    std::vector<std::array<int, 3>> abc(nr);
    std::function<void(std::size_t)> pick = [&](std::size_t i) {
      if (i == nr) {
        with_cells(abc, emit);
        return;
      }
      for (int a : choices)
        for (int b : choices)
          for (int c : choices) {
            abc[i] = {a, b, c};
            pick(i + 1);
          }
    };
    pick(0);
  }

  void with_cells(const std::vector<std::array<int, 3>>& abc,
                  const std::function<void(const Allocation&, const Allocation&, const Rational&)>& emit) {
    std::vector<int> cells;
    for (const auto& t : abc)
      for (int v : t)
        if (v != kNoBattlefield) cells.push_back(v);
    std::sort(cells.begin(), cells.end());
    cells.erase(std::unique(cells.begin(), cells.end()), cells.end());
    std::vector<Troops> xc(cells.size(), 0), xpc(cells.size(), 0);
    std::function<void(std::size_t, Troops, Troops)> fill = [&](std::size_t j, Troops lx, Troops lxp) {
      if (j == cells.size()) {
        solve_head(abc, cells, xc, xpc, lx, lxp, emit);
        return;
      }
      for (Troops a = 0; a <= lx; ++a)
        for (Troops b = 0; b <= lxp; ++b) {
          xc[j] = a;
          xpc[j] = b;
          fill(j + 1, lx - a, lxp - b);
        }
      xc[j] = 0;
      xpc[j] = 0;
    };
    fill(0, nx, nxp);
  }

  void solve_head(const std::vector<std::array<int, 3>>& abc, const std::vector<int>& cells,
                  const std::vector<Troops>& xc, const std::vector<Troops>& xpc, Troops lx,
                  Troops lxp,
                  const std::function<void(const Allocation&, const Allocation&, const Rational&)>& emit) {
    const std::size_t nr = responses.size();
    std::vector<SignatureHead> heads(nr);
    std::vector<Signature> sigs(nr);
    for (std::size_t i = 0; i < nr; ++i) {
      SignatureHead& h = heads[i];
      h.a = abc[i][0];
      h.b = abc[i][1];
      h.cidx = abc[i][2];
      for (int v : {h.a, h.b, h.cidx})
        if (v != kNoBattlefield) h.cells.push_back(v);
      std::sort(h.cells.begin(), h.cells.end());
      h.cells.erase(std::unique(h.cells.begin(), h.cells.end()), h.cells.end());
      for (int v : h.cells) {
        auto pos = std::lower_bound(cells.begin(), cells.end(), v) - cells.begin();
        h.x_cells.push_back(xc[static_cast<std::size_t>(pos)]);
        h.xprime_cells.push_back(xpc[static_cast<std::size_t>(pos)]);
      }
      sigs[i] = make_signature(h, 0, 0, 0);
    }
    std::vector<int> rest;
    for (int j : region)
      if (!std::binary_search(cells.begin(), cells.end(), j)) rest.push_back(j);

    // State: n1, n2, then per response (omega, u1, u2).
    struct Key {
      Troops n1, n2;
      std::vector<Troops> omega;
      std::vector<Rational> u1, u2;
      bool operator<(const Key& o) const {
        if (n1 != o.n1) return n1 < o.n1;
        if (n2 != o.n2) return n2 < o.n2;
        if (omega != o.omega) return omega < o.omega;
        if (u1 != o.u1) return u1 < o.u1;
        return u2 < o.u2;
      }
    };
    struct Witness {
      Allocation x, xp;
    };
    std::map<Key, Witness> layer;
    Allocation zero(weights.size(), 0);
    layer.emplace(Key{0, 0, std::vector<Troops>(nr, 0), std::vector<Rational>(nr, Rational(0)),
                      std::vector<Rational>(nr, Rational(0))},
                  Witness{zero, zero});
    for (int j : rest) {
      std::map<Key, Witness> next;
      const Rational& w = weights[static_cast<std::size_t>(j)];
      for (const auto& [key, wit] : layer) {
        for (Troops a = 0; a + key.n1 <= lx; ++a)
          for (Troops b = 0; b + key.n2 <= lxp; ++b) {
            if (++work > caps.max_work) throw CapExceeded("signature DP exceeds work cap");
            Key nk = key;
            nk.n1 += a;
            nk.n2 += b;
            CostVectors cv = cost_vectors({a}, {b});
            bool ok = true;
            for (std::size_t i = 0; i < nr && ok; ++i) {
              auto [h, hp] = partial_response(j, a, b, w, sigs[i], weights);
              nk.omega[i] += h * cv.c[0] + hp * cv.cprime[0];
              if (nk.omega[i] > responses[i].budget) ok = false;
              if (h) nk.u1[i] += w;
              if (hp) nk.u2[i] += w;
            }
            if (!ok) continue;
            if (next.count(nk)) continue;
            Witness nw = wit;
            nw.x[static_cast<std::size_t>(j)] = a;
            nw.xp[static_cast<std::size_t>(j)] = b;
            next.emplace(std::move(nk), std::move(nw));
          }
      }
      layer.swap(next);
    }

    std::vector<std::vector<std::pair<Rational, Rational>>> utils(nr);
    for (std::size_t i = 0; i < nr; ++i) utils[i] = candidate_utilities(heads[i], weights);
    for (const auto& [key, wit] : layer) {
      Rational objective = total;
      bool ok = true;
      for (std::size_t i = 0; i < nr && ok; ++i) {
        // Balanced terminal utilities; among the candidates for this head keep
        // the one least favourable to player 2.
        bool any = false;
        Rational best;
        for (const auto& [d1, d2] : utils[i]) {
          Rational v1 = responses[i].base1 + key.u1[i] + d1;
          Rational v2 = responses[i].base2 + key.u2[i] + d2;
          if (v1 != v2) continue;
          if (!any || v1 < best) best = v1;
          any = true;
        }
        if (!any) ok = false;
        else objective = std::min(objective, Rational(total - best));
      }
      if (!ok) continue;
      Allocation x = wit.x, xp = wit.xp;
      for (std::size_t c = 0; c < cells.size(); ++c) {
        x[static_cast<std::size_t>(cells[c])] = xc[c];
        xp[static_cast<std::size_t>(cells[c])] = xpc[c];
      }
      emit(x, xp, objective);
    }
  }
};

struct CandidatePool {
  const GameInstance& inst;
  const Caps& caps;
  std::map<std::pair<Allocation, Allocation>, Rational> objective;

  void add(Allocation x, Allocation xp, const Rational& obj) {
    if (xp < x) std::swap(x, xp);
    auto key = std::make_pair(std::move(x), std::move(xp));
    auto it = objective.find(key);
    if (it == objective.end()) {
      if (objective.size() >= caps.max_work) throw CapExceeded("candidate pool exceeds work cap");
      objective.emplace(std::move(key), obj);
    } else if (obj > it->second) {
      it->second = obj;
    }
  }

  // Verified best; ties go to the larger internal objective, then to the
  // smaller pair.
  void finish(TwoStrategyResult& out, const Rational& target) {
    bool found = false;
    Rational best_obj;
    std::pair<Allocation, Allocation> best;
    for (const auto& [pair, obj] : objective) {
      Weight cert = two_strategy_guarantee(pair.first, pair.second, inst).value;
      if (!found || cert > out.certified || (cert == out.certified && obj > best_obj)) {
        found = true;
        out.certified = cert;
        best_obj = obj;
        best = pair;
      }
    }
    out.candidates = objective.size();
    if (!found) {
      Allocation zero(static_cast<std::size_t>(inst.k()), 0);
      best = {zero, zero};
      out.certified = two_strategy_guarantee(zero, zero, inst).value;
    }
    out.objective = best_obj;
    if (best.first == best.second) out.strategy = MixedStrategy{{best.first}, {Rational(1)}};
    else out.strategy = MixedStrategy{{best.first, best.second}, {Rational(1, 2), Rational(1, 2)}};
    out.target_met = Rational(static_cast<long>(out.certified)) >= target;
  }
};

}  // namespace

TwoStrategyResult third_approx_2strategy(const GameInstance& inst, Weight u, const Caps& caps) {
  TwoStrategyResult out;
  CandidatePool pool{inst, caps, {}};
  const std::vector<Rational> weights = rational_weights(inst);
  const Rational total(static_cast<long>(inst.total_weight()));
  const Rational target = Rational(static_cast<long>(u)) / 3;

  if (3 * inst.max_weight() > u) {
    int i = heaviest(inst);
    pool.add(all_on(inst, i), all_on(inst, i), Rational(static_cast<long>(inst.max_weight())));
    if (inst.n() > inst.m()) {
      pool.finish(out, target);
      return out;
    }
  }

  std::vector<int> region(static_cast<std::size_t>(inst.k()));
  std::iota(region.begin(), region.end(), 0);
  std::vector<SigResponse> responses{{inst.m(), Rational(0), Rational(0)}};
  SigEngine engine{weights, region, inst.n(), inst.n(), responses, total, caps};
  engine.run([&](const Allocation& x, const Allocation& xp, const Rational& obj) {
    pool.add(x, xp, obj);
  });
  pool.finish(out, target);
  return out;
}

namespace {

// Balanced heavy two-strategies for a class: the first t members have
// x <= x', totals per group spread so members differ by at most one troop.
void for_each_heavy_pair(const std::vector<std::vector<int>>& classes, Troops n, std::size_t k,
                         const std::function<void(const Allocation&, const Allocation&)>& visit) {
  Allocation x(k, 0), xp(k, 0);
  auto spread = [](Allocation& v, const std::vector<int>& members, std::size_t from, std::size_t to,
                   Troops total) {
    const Troops size = static_cast<Troops>(to - from);
    for (std::size_t j = from; j < to; ++j)
      v[static_cast<std::size_t>(members[j])] =
          total / size + (static_cast<Troops>(j - from) < total % size ? 1 : 0);
  };
  std::function<void(std::size_t, Troops, Troops)> rec = [&](std::size_t c, Troops lx, Troops lxp) {
    if (c == classes.size()) {
      visit(x, xp);
      return;
    }
    const auto& members = classes[c];
    const std::size_t size = members.size();
    for (std::size_t t = 0; t <= size; ++t) {
      // Group 1: members [0, t) with x <= x'. Group 2: [t, size) with x > x'.
      for (Troops a1 = 0; a1 <= (t ? lx : 0); ++a1)
        for (Troops b1 = 0; b1 <= (t ? lxp : 0); ++b1) {
          if (t) {
            spread(x, members, 0, t, a1);
            spread(xp, members, 0, t, b1);
            bool ok = true;
            for (std::size_t j = 0; j < t; ++j)
              if (x[members[j]] > xp[members[j]]) ok = false;
            if (!ok) continue;
          }
          for (Troops a2 = 0; a2 <= (t < size ? lx - a1 : 0); ++a2)
            for (Troops b2 = 0; b2 <= (t < size ? lxp - b1 : 0); ++b2) {
              if (t < size) {
                spread(x, members, t, size, a2);
                spread(xp, members, t, size, b2);
                bool ok = true;
                for (std::size_t j = t; j < size; ++j)
                  if (x[members[j]] <= xp[members[j]]) ok = false;
                if (!ok) continue;
              }
              rec(c + 1, lx - a1 - a2, lxp - b1 - b2);
            }
        }
    }
    for (int i : members) x[i] = xp[i] = 0;
  };
  rec(0, n, n);
}

}  // namespace

TwoStrategyResult eps_approx_2strategy(const GameInstance& inst, Weight u, const Rational& epsilon,
                                       const Caps& caps) {
  if (sgn(epsilon) <= 0 || epsilon >= 1) throw InvalidInput("epsilon must lie in (0,1)");
  TwoStrategyResult out;
  CandidatePool pool{inst, caps, {}};
  const Rational target = (1 - epsilon) * Rational(static_cast<long>(u));
  if (u < 1) {
    pool.finish(out, target);
    return out;
  }
  if (inst.max_weight() >= u) {
    int i = heaviest(inst);
    pool.add(all_on(inst, i), all_on(inst, i), Rational(static_cast<long>(u)));
    if (inst.n() > inst.m()) {
      pool.finish(out, target);
      return out;
    }
  }

  const std::vector<Rational> weights = delta_uniform(inst, epsilon, u).weights;
  const HeavyLightSplit split = split_heavy_light(weights, epsilon * u / 4);
  std::map<Rational, std::vector<int>, std::greater<>> by_weight;
  for (int i : split.heavy) by_weight[weights[static_cast<std::size_t>(i)]].push_back(i);
  std::vector<std::vector<int>> classes;
  for (auto& [w, members] : by_weight) classes.push_back(members);
  Rational total = 0;
  for (const auto& w : weights) total += w;
  const std::size_t k = weights.size();
  std::uint64_t work = 0;

  for_each_heavy_pair(classes, inst.n(), k, [&](const Allocation& xh, const Allocation& xph) {
    if (++work > caps.max_work) throw CapExceeded("heavy enumeration exceeds work cap");
    if (split.light.empty()) {
      pool.add(xh, xph, two_strategy_guarantee_weighted(xh, xph, weights, inst.m()));
      return;
    }
    // Heavy responses: per heavy battlefield player 2 plays 0, min or max.
    struct Resp {
      Troops left;
      Rational p1, p2;  // player 2's heavy payoff against x and x'
    };
    std::vector<Resp> all;
    std::function<void(std::size_t, Troops, Rational, Rational)> rec =
        [&](std::size_t t, Troops spent, Rational p1, Rational p2) {
          if (spent > inst.m()) return;
          if (t == split.heavy.size()) {
            all.push_back({inst.m() - spent, p1, p2});
            return;
          }
          int i = split.heavy[t];
          Troops lo = std::min(xh[i], xph[i]), hi = std::max(xh[i], xph[i]);
          std::vector<Troops> opts{0, lo, hi};
          std::sort(opts.begin(), opts.end());
          opts.erase(std::unique(opts.begin(), opts.end()), opts.end());
          for (Troops y : opts)
            rec(t + 1, spent + y, p1 + (y >= xh[i] ? weights[i] : Rational(0)),
                p2 + (y >= xph[i] ? weights[i] : Rational(0)));
        };
    rec(0, 0, Rational(0), Rational(0));
    std::vector<Resp> front;
    for (const auto& r : all) {
      bool dom = false;
      for (const auto& o : all)
        if (&o != &r && o.left >= r.left && o.p1 >= r.p1 && o.p2 >= r.p2 &&
            (o.left > r.left || o.p1 > r.p1 || o.p2 > r.p2 || &o < &r)) {
          dom = true;
          break;
        }
      if (!dom) front.push_back(r);
    }
    if (static_cast<int>(front.size()) > caps.max_heavy_responses)
      throw CapExceeded("heavy response count " + std::to_string(front.size()) +
                        " exceeds cap " + std::to_string(caps.max_heavy_responses));
    std::vector<SigResponse> responses;
    for (const auto& r : front) responses.push_back({r.left, r.p1, r.p2});
    Troops used_x = 0, used_xp = 0;
    for (int i : split.heavy) {
      used_x += xh[i];
      used_xp += xph[i];
    }
    SigEngine engine{weights, split.light, inst.n() - used_x, inst.n() - used_xp, responses, total, caps};
    engine.run([&](const Allocation& xl, const Allocation& xpl, const Rational& obj) {
      Allocation x = xl, xp = xpl;
      for (int i : split.heavy) {
        x[i] = xh[i];
        xp[i] = xph[i];
      }
      pool.add(x, xp, obj);
    });
  });
  pool.finish(out, target);
  return out;
}

}  // namespace blotto
