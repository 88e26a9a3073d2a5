#include "blotto/profiles.hpp"

#include "blotto/errors.hpp"
#include "blotto/lp.hpp"

#include <algorithm>
#include <functional>
#include <string>

namespace blotto {

Profile make_profile(std::vector<Rational> probs) {
  std::erase_if(probs, [](const Rational& p) { return sgn(p) == 0; });
  std::sort(probs.begin(), probs.end(), std::greater<>());
  return probs;
}

ProfileLpResult solve_profile_lp(const SubsetFamily& family) {
  const int c = family.c;
  if (c < 1 || c > kMaxFamilySupport) throw InvalidInput("profile LP needs 1 <= c <= 6");
  if (family.bits == 0) return {std::vector<Rational>(static_cast<std::size_t>(c), Rational(1, c)), 1};

  lp::LinearProgram program;
  std::vector<int> rho;
  for (int i = 0; i < c; ++i) rho.push_back(program.add_variable());
  int value = program.add_variable(1);
  std::vector<std::pair<int, Rational>> total;
  for (int v : rho) total.push_back({v, 1});
  program.add_constraint(total, lp::Relation::Equal, 1);
  for (SubsetMask w : family.members()) {
    std::vector<std::pair<int, Rational>> row{{value, 1}};
    for (int i = 0; i < c; ++i)
      if ((w >> i) & 1u) row.push_back({rho[static_cast<std::size_t>(i)], -1});
    program.add_constraint(std::move(row), lp::Relation::LessEqual, 0);
  }
  lp::Result res = lp::solve(program);
  if (res.status != lp::Status::Optimal) throw BlottoError("profile LP did not reach an optimum");
  ProfileLpResult out;
  for (int v : rho) out.rho.push_back(res.values[static_cast<std::size_t>(v)]);
  out.value = res.values[static_cast<std::size_t>(value)];
  return out;
}

std::set<Profile> construct_Pc(int c, const Caps& caps) {
  if (c < 1) throw InvalidInput("c must be positive");
  if (c > caps.max_profile_c || c > kMaxFamilySupport)
    throw CapExceeded("construct_Pc: c=" + std::to_string(c) + " exceeds the configured maximum");
  const SubsetMask subsets = SubsetMask{1} << c;
  std::set<Profile> out;
  SubsetFamily family;
  family.c = c;
  // Enumerate antichains: each subset is either skipped or added when it is
  // incomparable with everything chosen so far.
  std::vector<SubsetMask> chosen;
  std::function<void(SubsetMask)> rec = [&](SubsetMask s) {
    if (s == subsets) {
      out.insert(make_profile(solve_profile_lp(family).rho));
      return;
    }
    rec(s + 1);
    for (SubsetMask t : chosen)
      if ((t & s) == t || (t & s) == s) return;
    chosen.push_back(s);
    family.insert(s);
    rec(s + 1);
    family.bits &= ~(std::uint64_t{1} << s);
    chosen.pop_back();
  };
  rec(0);
  return out;
}

MixedStrategy normalize_two_strategy(const MixedStrategy& s, Weight u, const GameInstance& inst,
                                     const Caps& caps) {
  if (s.size() > 2) throw InvalidInput("normalize_two_strategy takes at most two strategies");
  Rational p = guaranteed_probability(s, u, inst, caps);
  if (s.size() == 1) return s;
  if (p > Rational(1, 2)) {
    std::size_t keep = s.probs[1] > s.probs[0] ? 1 : 0;
    return MixedStrategy{{s.support[keep]}, {Rational(1)}};
  }
  if (sgn(p) > 0 && p < Rational(1, 2))
    return MixedStrategy{s.support, {Rational(1, 2), Rational(1, 2)}};
  return s;
}

}  // namespace blotto
