#include "blotto/continuous.hpp"

#include "blotto/approx.hpp"
#include "blotto/best_response.hpp"
#include "blotto/errors.hpp"
#include "blotto/lp.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <string>

namespace blotto {

namespace {

void check_k(std::size_t k, const Caps& caps) {
  if (static_cast<int>(k) > caps.max_critical_k)
    throw CapExceeded("k = " + std::to_string(k) + " exceeds the critical-set cap " +
                      std::to_string(caps.max_critical_k));
}

std::vector<int> bits_of(SubsetMask mask) {
  std::vector<int> out;
  for (int i = 0; mask >> i; ++i)
    if ((mask >> i) & 1u) out.push_back(i);
  return out;
}

Rational weight_outside(const std::vector<Rational>& weights, SubsetMask mask) {
  Rational s = 0;
  for (std::size_t i = 0; i < weights.size(); ++i)
    if (!((mask >> i) & 1u)) s += weights[i];
  return s;
}

// Pairs (A, B) of minimal losing sets; A is beaten on x, B on x'.
std::vector<std::pair<SubsetMask, SubsetMask>> minimal_pairs(const std::vector<Rational>& weights,
                                                             const Rational& u, const Caps& caps) {
  auto sets = minimal_losing_sets(weights, u, caps);
  if (sets.size() * sets.size() > caps.max_work)
    throw CapExceeded("critical tuple count exceeds work cap");
  std::vector<std::pair<SubsetMask, SubsetMask>> out;
  for (SubsetMask a : sets)
    for (SubsetMask b : sets) out.emplace_back(a, b);
  return out;
}

CriticalTuple tuple_of(SubsetMask a, SubsetMask b) {
  return {bits_of(a & ~b), bits_of(b & ~a), bits_of(a & b)};
}

}  // namespace

std::vector<SubsetMask> minimal_losing_sets(const std::vector<Rational>& weights, const Rational& u,
                                            const Caps& caps) {
  const std::size_t k = weights.size();
  check_k(k, caps);
  const SubsetMask full = k == 0 ? 0 : static_cast<SubsetMask>((std::uint64_t{1} << k) - 1);
  std::vector<Rational> outside(static_cast<std::size_t>(full) + 1);
  for (SubsetMask s = 0;; ++s) {
    outside[s] = weight_outside(weights, s);
    if (s == full) break;
  }
  std::vector<SubsetMask> out;
  for (SubsetMask s = 0;; ++s) {
    if (outside[s] < u) {
      bool minimal = true;
      for (std::size_t i = 0; i < k && minimal; ++i)
        if (((s >> i) & 1u) && outside[s & ~(SubsetMask{1} << i)] < u) minimal = false;
      if (minimal) out.push_back(s);
    }
    if (s == full) break;
  }
  return out;
}

std::vector<CriticalTuple> critical_tuples(const std::vector<Rational>& weights, const Rational& u,
                                           const Caps& caps) {
  std::vector<CriticalTuple> out;
  for (auto [a, b] : minimal_pairs(weights, u, caps)) out.push_back(tuple_of(a, b));
  return out;
}

bool is_critical(const CriticalTuple& t, const std::vector<Rational>& weights, const Rational& u) {
  SubsetMask l1 = 0, l2 = 0, l12 = 0;
  for (int i : t.l1) l1 |= SubsetMask{1} << i;
  for (int i : t.l2) l2 |= SubsetMask{1} << i;
  for (int i : t.l12) l12 |= SubsetMask{1} << i;
  if ((l1 & l2) || (l1 & l12) || (l2 & l12)) return false;
  return weight_outside(weights, l1 | l12) < u && weight_outside(weights, l2 | l12) < u;
}

PureFeasibility pure_feasible(const GameInstance& inst, const Rational& u, const Caps& caps) {
  const auto weights = [&] {
    std::vector<Rational> w;
    for (Weight v : inst.weights()) w.emplace_back(static_cast<long>(v));
    return w;
  }();
  const auto sets = minimal_losing_sets(weights, u, caps);
  PureFeasibility out;
  if (std::find(sets.begin(), sets.end(), SubsetMask{0}) != sets.end()) return out;
  lp::LinearProgram program;
  const int k = inst.k();
  for (int i = 0; i < k; ++i) program.add_variable();
  std::vector<std::pair<int, Rational>> budget;
  for (int i = 0; i < k; ++i) budget.emplace_back(i, Rational(1));
  program.add_constraint(budget, lp::Relation::LessEqual, Rational(static_cast<long>(inst.n())));
  for (SubsetMask s : sets) {
    std::vector<std::pair<int, Rational>> terms;
    for (int i : bits_of(s)) terms.emplace_back(i, Rational(1));
    program.add_constraint(terms, lp::Relation::Greater, Rational(static_cast<long>(inst.m())));
  }
  lp::Result r = lp::solve(program);
  out.margin = r.margin.value_or(Rational(0));
  if (r.status != lp::Status::Optimal) return out;
  out.ok = true;
  out.x = r.values;
  return out;
}

TupleCheck verify_2strategy(const std::vector<Rational>& weights, Troops m,
                            const RationalAllocation& x, const RationalAllocation& xp,
                            const Rational& u, const Caps& caps) {
  if (x.size() != weights.size() || xp.size() != weights.size())
    throw InvalidInput("allocation size does not match weights");
  const Rational budget(static_cast<long>(m));
  for (auto [a, b] : minimal_pairs(weights, u, caps)) {
    Rational cost = 0;
    for (std::size_t i = 0; i < weights.size(); ++i) {
      bool in_a = (a >> i) & 1u, in_b = (b >> i) & 1u;
      if (in_a && in_b) cost += std::max(x[i], xp[i]);
      else if (in_a) cost += x[i];
      else if (in_b) cost += xp[i];
    }
    if (cost <= budget) return {false, tuple_of(a, b)};
  }
  return {true, std::nullopt};
}

TupleCheck verify_2strategy(const GameInstance& inst, const RationalAllocation& x,
                            const RationalAllocation& xp, const Rational& u, const Caps& caps) {
  std::vector<Rational> w;
  for (Weight v : inst.weights()) w.emplace_back(static_cast<long>(v));
  return verify_2strategy(w, inst.m(), x, xp, u, caps);
}

RationalAllocation response_from_tuple(const CriticalTuple& t, const RationalAllocation& x,
                                       const RationalAllocation& xp) {
  RationalAllocation y(x.size(), Rational(0));
  for (int i : t.l1) y[static_cast<std::size_t>(i)] = x[static_cast<std::size_t>(i)];
  for (int i : t.l2) y[static_cast<std::size_t>(i)] = xp[static_cast<std::size_t>(i)];
  for (int i : t.l12)
    y[static_cast<std::size_t>(i)] =
        std::max(x[static_cast<std::size_t>(i)], xp[static_cast<std::size_t>(i)]);
  return y;
}

PairSolution solve_guess_lp(const std::vector<Rational>& weights, Troops n, Troops m,
                            const Rational& u, const std::vector<bool>& ge, const Caps& caps) {
  const int k = static_cast<int>(weights.size());
  if (static_cast<int>(ge.size()) != k) throw InvalidInput("guess length does not match weights");
  PairSolution out;
  out.programs = 1;
  const auto pairs = minimal_pairs(weights, u, caps);
  for (auto [a, b] : pairs)
    if (a == 0 && b == 0) return out;  // total weight below u
  lp::LinearProgram program;
  for (int i = 0; i < 2 * k; ++i) program.add_variable();
  std::vector<std::pair<int, Rational>> bx, bxp;
  for (int i = 0; i < k; ++i) {
    bx.emplace_back(i, Rational(1));
    bxp.emplace_back(k + i, Rational(1));
    program.add_constraint({{i, Rational(1)}, {k + i, Rational(-1)}},
                           ge[static_cast<std::size_t>(i)] ? lp::Relation::GreaterEqual
                                                           : lp::Relation::LessEqual,
                           Rational(0));
  }
  program.add_constraint(bx, lp::Relation::LessEqual, Rational(static_cast<long>(n)));
  program.add_constraint(bxp, lp::Relation::LessEqual, Rational(static_cast<long>(n)));
  for (auto [a, b] : pairs) {
    std::vector<std::pair<int, Rational>> terms;
    for (int i = 0; i < k; ++i) {
      bool in_a = (a >> i) & 1u, in_b = (b >> i) & 1u;
      if (in_a && in_b) terms.emplace_back(ge[static_cast<std::size_t>(i)] ? i : k + i, Rational(1));
      else if (in_a) terms.emplace_back(i, Rational(1));
      else if (in_b) terms.emplace_back(k + i, Rational(1));
    }
    program.add_constraint(terms, lp::Relation::Greater, Rational(static_cast<long>(m)));
  }
  lp::Result r = lp::solve(program);
  out.margin = r.margin.value_or(Rational(0));
  if (r.status != lp::Status::Optimal) return out;
  out.ok = true;
  out.x.assign(r.values.begin(), r.values.begin() + k);
  out.xp.assign(r.values.begin() + k, r.values.end());
  return out;
}

namespace {

std::vector<Rational> int_weights(const GameInstance& inst) {
  std::vector<Rational> w;
  for (Weight v : inst.weights()) w.emplace_back(static_cast<long>(v));
  return w;
}

Weight certify(const GameInstance& inst, const RationalAllocation& x, const RationalAllocation& xp) {
  return two_strategy_guarantee(x, xp, inst).value;
}

}  // namespace

PairSolution solve_uniform_c2(const GameInstance& inst, const Rational& u, const Caps& caps) {
  const auto& w = inst.weights();
  if (std::adjacent_find(w.begin(), w.end(), std::not_equal_to<>()) != w.end())
    throw InvalidInput("solve_uniform_c2 needs equal weights");
  const std::vector<Rational> weights = int_weights(inst);
  const int k = inst.k();
  PairSolution out;
  for (int alpha = 0; alpha <= k; ++alpha) {
    std::vector<bool> ge(static_cast<std::size_t>(k), false);
    for (int i = 0; i < alpha; ++i) ge[static_cast<std::size_t>(i)] = true;
    PairSolution r = solve_guess_lp(weights, inst.n(), inst.m(), u, ge, caps);
    out.programs += 1;
    out.margin = r.margin;
    if (!r.ok) continue;
    r.programs = out.programs;
    r.alpha = alpha;
    r.certified = certify(inst, r.x, r.xp);
    return r;
  }
  out.x.assign(static_cast<std::size_t>(k), Rational(0));
  out.xp = out.x;
  out.certified = certify(inst, out.x, out.xp);
  return out;
}

BucketPlan make_buckets(const GameInstance& inst, Weight u, const Rational& epsilon) {
  if (sgn(epsilon) <= 0 || epsilon >= 1) throw InvalidInput("epsilon must lie in (0,1)");
  if (u < 1) throw InvalidInput("u must be positive");
  BucketPlan plan;
  plan.delta = epsilon * epsilon * epsilon / 10;
  plan.rounded = delta_uniform(inst, plan.delta, u).weights;
  const Rational floor_weight = plan.delta * Rational(static_cast<long>(u)) / inst.k();
  const Rational base = 1 + plan.delta;
  std::map<unsigned long, std::vector<int>, std::greater<>> by_exponent;
  for (int i = 0; i < inst.k(); ++i) {
    Weight capped = std::min(inst.weight(i), u);
    if (Rational(static_cast<long>(capped)) < floor_weight) {
      plan.dropped.push_back(i);
      continue;
    }
    by_exponent[delta_exponent(base, capped)].push_back(i);
  }
  for (auto& [e, members] : by_exponent) plan.buckets.push_back(members);
  return plan;
}

ContinuousMixedStrategy fallback_strategy(const GameInstance& inst,
                                          const std::vector<Rational>& weights,
                                          const std::vector<std::vector<int>>& buckets) {
  const std::size_t k = static_cast<std::size_t>(inst.k());
  if (weights.size() != k) throw InvalidInput("weights size does not match instance");
  std::vector<int> first, second;
  Rational alpha_prime = 0;
  for (const auto& bucket : buckets) {
    std::size_t even = bucket.size() - bucket.size() % 2;
    for (std::size_t j = 0; j < even; ++j) {
      (j < even / 2 ? first : second).push_back(bucket[j]);
      alpha_prime += weights[static_cast<std::size_t>(bucket[j])];
    }
  }
  RationalAllocation x(k, Rational(0)), xp(k, Rational(0));
  if (sgn(alpha_prime) > 0) {
    const Rational scale = 2 * Rational(static_cast<long>(inst.n())) / alpha_prime;
    for (int i : first) x[static_cast<std::size_t>(i)] = weights[static_cast<std::size_t>(i)] * scale;
    for (int i : second) xp[static_cast<std::size_t>(i)] = weights[static_cast<std::size_t>(i)] * scale;
  }
  if (x == xp) return {{x}, {Rational(1)}};
  return {{x, xp}, {Rational(1, 2), Rational(1, 2)}};
}

PairSolution solve_general_c2(const GameInstance& inst, Weight u, const Rational& epsilon,
                              const Caps& caps) {
  if (sgn(epsilon) <= 0 || epsilon >= 1) throw InvalidInput("epsilon must lie in (0,1)");
  const std::size_t k = static_cast<std::size_t>(inst.k());
  check_k(k, caps);
  const Rational target = (1 - epsilon) * Rational(static_cast<long>(u));
  PairSolution best;
  best.precondition_met = 2 * Rational(static_cast<long>(inst.n())) >=
                          (1 + epsilon) * Rational(static_cast<long>(inst.m()));
  best.x.assign(k, Rational(0));
  best.xp = best.x;
  if (u < 1) {
    best.ok = true;
    best.certified = certify(inst, best.x, best.xp);
    return best;
  }
  best.certified = certify(inst, best.x, best.xp);

  const BucketPlan plan = make_buckets(inst, u, epsilon);
  std::vector<Rational> lp_weights(k);
  for (std::size_t i = 0; i < k; ++i)
    lp_weights[i] = Rational(static_cast<long>(std::min(inst.weight(static_cast<int>(i)), u)));
  for (int i : plan.dropped) lp_weights[static_cast<std::size_t>(i)] = 0;

  // Per bucket, the comparison patterns tried.
  const Rational inv_delta = 1 / plan.delta;
  std::vector<std::vector<std::vector<bool>>> options;
  std::uint64_t total = 1;
  std::vector<std::vector<int>> big;
  for (const auto& bucket : plan.buckets) {
    const std::size_t size = bucket.size();
    std::vector<std::vector<bool>> opts;
    if (Rational(static_cast<long>(size)) >= inv_delta) big.push_back(bucket);
    if (Rational(static_cast<long>(size)) <= inv_delta) {
      if (size >= 32) throw CapExceeded("bucket too large for full guess enumeration");
      for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << size); ++mask) {
        std::vector<bool> g(size);
        for (std::size_t j = 0; j < size; ++j) g[j] = (mask >> j) & 1u;
        opts.push_back(g);
      }
    } else {
      std::set<std::size_t> splits;
      for (long t = 0;; ++t) {
        Integer d = floor(plan.delta * Rational(t) * Rational(static_cast<long>(size)));
        std::size_t dv = static_cast<std::size_t>(to_int64(d));
        if (dv >= size) break;
        splits.insert(dv);
      }
      splits.insert(size);
      for (std::size_t d : splits) {
        std::vector<bool> g(size, false);
        for (std::size_t j = 0; j < d; ++j) g[j] = true;
        opts.push_back(g);
      }
    }
    total *= opts.size();
    if (total > caps.max_work) throw CapExceeded("guess count exceeds work cap");
    options.push_back(std::move(opts));
  }

  std::vector<std::size_t> pick(options.size(), 0);
  std::vector<bool> ge(k, true);
  for (std::uint64_t g = 0; g < total; ++g) {
    for (std::size_t b = 0; b < options.size(); ++b)
      for (std::size_t j = 0; j < plan.buckets[b].size(); ++j)
        ge[static_cast<std::size_t>(plan.buckets[b][j])] = options[b][pick[b]][j];
    PairSolution r = solve_guess_lp(lp_weights, inst.n(), inst.m(), target, ge, caps);
    ++best.programs;
    if (r.ok) {
      Weight cert = certify(inst, r.x, r.xp);
      if (!best.ok || cert > best.certified) {
        r.programs = best.programs;
        r.certified = cert;
        r.precondition_met = best.precondition_met;
        best = std::move(r);
        best.ok = Rational(static_cast<long>(best.certified)) >= target;
      }
      break;
    }
    for (std::size_t b = 0; b < options.size(); ++b) {
      if (++pick[b] < options[b].size()) break;
      pick[b] = 0;
    }
  }

  if (!big.empty()) {
    ContinuousMixedStrategy fb = fallback_strategy(inst, plan.rounded, big);
    const RationalAllocation& fx = fb.support[0];
    const RationalAllocation& fxp = fb.support.size() > 1 ? fb.support[1] : fb.support[0];
    Weight cert = certify(inst, fx, fxp);
    if (cert > best.certified) {
      best.x = fx;
      best.xp = fxp;
      best.certified = cert;
      best.used_fallback = true;
      best.ok = Rational(static_cast<long>(cert)) >= target;
    }
  }
  return best;
}

}  // namespace blotto
