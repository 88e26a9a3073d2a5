#include "blotto/oracle.hpp"

#include "blotto/errors.hpp"
#include "blotto/lp.hpp"

#include <algorithm>
#include <map>
#include <string>
#include <thread>

namespace blotto {

namespace {

std::uint64_t binomial(std::uint64_t n, std::uint64_t r) {
  if (r > n) return 0;
  r = std::min(r, n - r);
  unsigned __int128 acc = 1;
  for (std::uint64_t i = 1; i <= r; ++i) {
    acc = acc * (n - r + i) / i;
    if (acc > UINT64_MAX) return UINT64_MAX;
  }
  return static_cast<std::uint64_t>(acc);
}

std::uint64_t saturating_add(std::uint64_t a, std::uint64_t b) {
  return a > UINT64_MAX - b ? UINT64_MAX : a + b;
}

bool next_combination(std::vector<std::size_t>& idx, std::size_t n) {
  const std::size_t s = idx.size();
  std::size_t i = s;
  while (i > 0 && idx[i - 1] == n - s + (i - 1)) --i;
  if (i == 0) return false;
  ++idx[i - 1];
  for (std::size_t j = i; j < s; ++j) idx[j] = idx[j - 1] + 1;
  return true;
}

Profile checked_profile(const Profile& profile, int c) {
  Rational sum = 0;
  for (const auto& p : profile) {
    if (sgn(p) <= 0 || p > 1) throw InvalidInput("profile entries must lie in (0,1]");
    sum += p;
  }
  if (sum != 1) throw InvalidInput("profile must sum to 1");
  if (profile.empty() || static_cast<int>(profile.size()) > c)
    throw InvalidInput("profile size must be between 1 and c");
  return make_profile(profile);
}

struct Candidate {
  bool found = false;
  Rational p;
  std::vector<std::size_t> support;
  std::vector<Rational> rho;

  // Higher p wins; among equal p the lexicographically smaller support.
  void offer(const Rational& q, const std::vector<std::size_t>& idx,
             const std::vector<Rational>& weights) {
    if (found && (q < p || (q == p && !(idx < support)))) return;
    found = true;
    p = q;
    support = idx;
    rho = weights;
  }
};

}  // namespace

std::uint64_t count_pure(Troops budget, int k) {
  return binomial(static_cast<std::uint64_t>(budget) + static_cast<std::uint64_t>(k),
                  static_cast<std::uint64_t>(k));
}

void for_each_pure(Troops budget, int k, const std::function<void(const Allocation&)>& visit) {
  if (k < 1) throw InvalidInput("k must be positive");
  if (budget < 0) throw InvalidInput("budget must be non-negative");
  Allocation x(static_cast<std::size_t>(k), 0);
  std::function<void(int, Troops)> rec = [&](int i, Troops left) {
    if (i == k) {
      visit(x);
      return;
    }
    for (Troops v = 0; v <= left; ++v) {
      x[static_cast<std::size_t>(i)] = v;
      rec(i + 1, left - v);
    }
    x[static_cast<std::size_t>(i)] = 0;
  };
  rec(0, budget);
}

std::vector<Allocation> enumerate_pure(Troops budget, int k, std::uint64_t cap) {
  std::uint64_t count = count_pure(budget, k);
  if (count > cap)
    throw CapExceeded("pure strategy count " + std::to_string(count) + " exceeds cap " +
                      std::to_string(cap));
  std::vector<Allocation> out;
  out.reserve(count);
  for_each_pure(budget, k, [&](const Allocation& x) { out.push_back(x); });
  return out;
}

MaxminResult exact_maxmin_up(const GameInstance& inst, int c, Weight u,
                             const std::optional<Profile>& profile, const Caps& caps) {
  if (c < 1) throw InvalidInput("c must be positive");
  if (c > kMaxFamilySupport) throw CapExceeded("support size above " + std::to_string(kMaxFamilySupport));
  std::optional<Profile> fixed;
  if (profile) fixed = checked_profile(*profile, c);

  const std::vector<Allocation> pure = enumerate_pure(inst.n(), inst.k(), caps.max_supports);
  const std::vector<Allocation> responses = enumerate_pure(inst.m(), inst.k(), caps.max_responses);
  const std::size_t nx = pure.size();
  const std::size_t ny = responses.size();
  const std::size_t words = (ny + 63) / 64;
  std::vector<std::uint64_t> wins(nx * words, 0);
  for (std::size_t a = 0; a < nx; ++a)
    for (std::size_t r = 0; r < ny; ++r)
      if (player1_payoff(pure[a], responses[r], inst.weights()) >= u)
        wins[a * words + r / 64] |= std::uint64_t{1} << (r % 64);

  std::vector<std::size_t> sizes;
  if (fixed) sizes.push_back(fixed->size());
  else
    for (int s = 1; s <= c; ++s) sizes.push_back(static_cast<std::size_t>(s));
  std::uint64_t total = 0;
  for (std::size_t s : sizes) total = saturating_add(total, binomial(nx, s));
  if (total > caps.max_supports)
    throw CapExceeded("support count " + std::to_string(total) + " exceeds cap " +
                      std::to_string(caps.max_supports));

  const unsigned jobs = std::max(1u, caps.jobs);
  std::vector<Candidate> best(jobs);
  std::vector<std::uint64_t> examined(jobs, 0);

  auto worker = [&](unsigned tid) {
    std::map<std::uint64_t, std::pair<Rational, std::vector<Rational>>> memo;
    Candidate& mine = best[tid];
    for (std::size_t s : sizes) {
      if (s > nx) continue;
      std::vector<std::size_t> idx(s);
      for (std::size_t j = 0; j < s; ++j) idx[j] = j;
      do {
        if (idx[0] % jobs != tid) continue;
        ++examined[tid];
        std::uint64_t fam = 0;
        for (std::size_t r = 0; r < ny; ++r) {
          SubsetMask mask = 0;
          const std::size_t w = r / 64;
          const std::uint64_t bit = std::uint64_t{1} << (r % 64);
          for (std::size_t j = 0; j < s; ++j)
            if (wins[idx[j] * words + w] & bit) mask |= SubsetMask{1} << j;
          fam |= std::uint64_t{1} << mask;
        }
        auto it = memo.find(fam);
        if (it == memo.end()) {
          SubsetFamily family{static_cast<int>(s), fam};
          std::pair<Rational, std::vector<Rational>> val;
          if (fixed) {
            // Try every distinct assignment of the profile to the support.
            std::vector<Rational> perm(fixed->rbegin(), fixed->rend());
            bool first = true;
            do {
              Rational p = 1;
              for (SubsetMask m : family.members()) p = std::min(p, subset_mass(m, perm));
              if (first || p > val.first) {
                val = {p, perm};
                first = false;
              }
            } while (std::next_permutation(perm.begin(), perm.end()));
          } else {
            ProfileLpResult lp = solve_profile_lp(family);
            val = {lp.value, lp.rho};
          }
          it = memo.emplace(fam, std::move(val)).first;
        }
        mine.offer(it->second.first, idx, it->second.second);
      } while (next_combination(idx, nx));
    }
  };

  if (jobs == 1) {
    worker(0);
  } else {
    std::vector<std::thread> threads;
    for (unsigned t = 0; t < jobs; ++t) threads.emplace_back(worker, t);
    for (auto& th : threads) th.join();
  }

  Candidate overall;
  std::uint64_t total_examined = 0;
  for (unsigned t = 0; t < jobs; ++t) {
    total_examined += examined[t];
    if (best[t].found) overall.offer(best[t].p, best[t].support, best[t].rho);
  }
  MaxminResult out;
  out.supports_examined = total_examined;
  if (!overall.found) throw InvalidInput("profile has more entries than there are pure strategies");
  out.probability = overall.p;
  for (std::size_t j = 0; j < overall.support.size(); ++j) {
    if (sgn(overall.rho[j]) == 0) continue;
    out.strategy.support.push_back(pure[overall.support[j]]);
    out.strategy.probs.push_back(overall.rho[j]);
  }
  return out;
}

PureMaximinResult exact_pure_maximin(const GameInstance& inst, const Caps& caps) {
  if (inst.k() >= 63 || (std::uint64_t{1} << inst.k()) > caps.max_responses)
    throw CapExceeded("response enumeration over 2^k exceeds cap");
  PureMaximinResult out;
  bool first = true;
  const std::size_t k = static_cast<std::size_t>(inst.k());
  std::uint64_t seen = 0;
  for_each_pure(inst.n(), inst.k(), [&](const Allocation& x) {
    if (++seen > caps.max_supports) throw CapExceeded("pure strategy count exceeds cap");
    // Player 2 either matches x on a battlefield or leaves it.
    Weight worst = inst.total_weight();
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << k); ++mask) {
      Troops cost = 0;
      Weight kept = 0;
      for (std::size_t i = 0; i < k; ++i) {
        if ((mask >> i) & 1u) cost += x[i];
        else kept += inst.weight(static_cast<int>(i)) * (x[i] > 0 ? 1 : 0);
      }
      if (cost <= inst.m()) worst = std::min(worst, kept);
    }
    if (first || worst > out.value) {
      out.value = worst;
      out.strategy = x;
      out.optima.clear();
      first = false;
    }
    if (worst == out.value) out.optima.push_back(x);
  });
  return out;
}

namespace {

ExpectedMaximinResult solve_expected_lp(const GameInstance& inst,
                                        const std::vector<Allocation>& support,
                                        const std::vector<Allocation>& responses) {
  lp::LinearProgram program;
  std::vector<int> q;
  for (std::size_t j = 0; j < support.size(); ++j) q.push_back(program.add_variable());
  int v = program.add_variable(1);
  std::vector<std::pair<int, Rational>> total;
  for (int var : q) total.push_back({var, 1});
  program.add_constraint(total, lp::Relation::Equal, 1);
  for (const auto& y : responses) {
    std::vector<std::pair<int, Rational>> row{{v, -1}};
    for (std::size_t j = 0; j < support.size(); ++j) {
      Weight p = player1_payoff(support[j], y, inst.weights());
      if (p != 0) row.push_back({q[j], Rational(static_cast<long>(p))});
    }
    program.add_constraint(std::move(row), lp::Relation::GreaterEqual, 0);
  }
  lp::Result res = lp::solve(program);
  if (res.status != lp::Status::Optimal) throw BlottoError("expected maximin LP failed");
  ExpectedMaximinResult out;
  out.value = res.values[static_cast<std::size_t>(v)];
  for (std::size_t j = 0; j < support.size(); ++j) {
    const Rational& p = res.values[static_cast<std::size_t>(q[j])];
    if (sgn(p) == 0) continue;
    out.strategy.support.push_back(support[j]);
    out.strategy.probs.push_back(p);
  }
  return out;
}

}  // namespace

ExpectedMaximinResult exact_expected_maximin(const GameInstance& inst, const Caps& caps) {
  auto pure = enumerate_pure(inst.n(), inst.k(), caps.max_supports);
  auto responses = enumerate_pure(inst.m(), inst.k(), caps.max_responses);
  return solve_expected_lp(inst, pure, responses);
}

ExpectedMaximinResult exact_expected_maximin_restricted(const GameInstance& inst, int c,
                                                        const Caps& caps) {
  if (c < 1) throw InvalidInput("c must be positive");
  auto pure = enumerate_pure(inst.n(), inst.k(), caps.max_supports);
  const std::size_t nx = pure.size();
  std::uint64_t total = 0;
  for (int s = 1; s <= c; ++s) total = saturating_add(total, binomial(nx, static_cast<std::uint64_t>(s)));
  if (total > caps.max_supports) throw CapExceeded("support count exceeds cap");

  ExpectedMaximinResult best;
  bool found = false;
  for (int s = 1; s <= c && static_cast<std::size_t>(s) <= nx; ++s) {
    std::vector<std::size_t> idx(static_cast<std::size_t>(s));
    for (std::size_t j = 0; j < idx.size(); ++j) idx[j] = j;
    do {
      std::vector<Allocation> support;
      for (std::size_t j : idx) support.push_back(pure[j]);
      std::vector<Allocation> responses;
      for_each_dominated_response(support, inst.m(), caps.max_responses,
                                  [&](const Allocation& y) { responses.push_back(y); });
      ExpectedMaximinResult r = solve_expected_lp(inst, support, responses);
      if (!found || r.value > best.value) {
        best = std::move(r);
        found = true;
      }
    } while (next_combination(idx, nx));
  }
  return best;
}

}  // namespace blotto
