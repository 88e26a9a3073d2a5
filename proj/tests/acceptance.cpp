// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include "blotto/approx.hpp"
#include "blotto/best_response.hpp"
#include "blotto/continuous.hpp"
#include "blotto/expectation.hpp"
#include "blotto/fractional.hpp"
#include "blotto/game.hpp"
#include "blotto/oracle.hpp"
#include "blotto/profiles.hpp"
#include "lp_oracle.hpp"
#include "support.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

using namespace blotto;
using testing_support::Gen;
using testing_support::p1;

namespace {

int failures = 0;

void report(int id, bool pass, const std::string& detail) {
  std::printf("criterion %2d: %s  %s\n", id, pass ? "PASS" : "FAIL", detail.c_str());
  std::fflush(stdout);
  if (!pass) ++failures;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

template <typename F>
double timed(F&& f) {
  auto t0 = std::chrono::steady_clock::now();
  f();
  return seconds_since(t0);
}

Rational R(Weight v) { return Rational(static_cast<long>(v)); }

Rational dot(const std::vector<Rational>& h, const GameInstance& g) {
  Rational s = 0;
  for (int i = 0; i < g.k(); ++i) s += h[static_cast<std::size_t>(i)] * R(g.weight(i));
  return s;
}

Weight ceil_div(Weight a, Weight b) { return (a + b - 1) / b; }

const GameInstance kTable1(4, 6, {5, 5, 5, 10});
const GameInstance kTable2(5, 2, {10, 8, 7, 5});

void criterion1() {
  MixedStrategy s{{{0, 0, 0, 4}, {1, 1, 2, 0}, {1, 2, 1, 0}, {2, 1, 1, 0}},
                  {Rational(2, 5), Rational(1, 5), Rational(1, 5), Rational(1, 5)}};
  Rational p;
  double t = timed([&] { p = guaranteed_probability(s, 10, kTable1); });
  std::ostringstream d;
  d << "table 1 probability " << to_string(p) << " (want 2/5), " << t << " s (limit 1)";
  report(1, p == Rational(2, 5) && t < 1.0, d.str());
}

void criterion2() {
  Profile quarter(4, Rational(1, 4));
  MaxminResult r;
  double t = timed([&] { r = exact_maxmin_up(kTable1, 4, 10, quarter); });
  const std::uint64_t pure = count_pure(kTable1.n(), kTable1.k());
  const std::uint64_t supports = pure * (pure - 1) * (pure - 2) * (pure - 3) / 24;
  std::ostringstream d;
  d << "uniform profile probability " << to_string(r.probability) << " (want <= 1/4), supports "
    << r.supports_examined << " of " << supports << ", " << t << " s (limit 1800)";
  report(2, r.probability <= Rational(1, 4) && r.supports_examined == supports && t <= 1800, d.str());
}

void criterion3() {
  PureMaximinResult pm;
  PtasResult ptas;
  double t = timed([&] {
    pm = exact_pure_maximin(kTable2);
    ptas = pure_ptas(kTable2, 15, Rational(1, 20));
  });
  bool witness = std::find(pm.optima.begin(), pm.optima.end(), Allocation{2, 2, 1, 0}) != pm.optima.end();
  std::ostringstream d;
  d << "pure maximin " << pm.value << " (want 15), witness " << (witness ? "found" : "missing")
    << ", ptas certified " << ptas.certified << " (want >= 15), " << t << " s (limit 10)";
  report(3, pm.value == 15 && witness && ptas.certified >= 15 && t < 10, d.str());
}

// One pass over every response gives all three references at once.
void criterion4() {
  Gen gen(1004);
  int mismatches = 0;
  for (int it = 0; it < 1000; ++it) {
    GameInstance g = gen.instance(8, 8, 5, 9);
    Allocation x = gen.allocation(g.n(), g.k()), xp = gen.allocation(g.n(), g.k());
    MixedStrategy s = gen.mixed(g, static_cast<int>(gen.uniform(1, 4)));
    Weight a = gen.uniform(0, g.total_weight()), b = gen.uniform(0, g.total_weight());
    Weight best_pure = 0;
    bool prevent = false;
    Rational best_expected = -1;
    testing_support::each_allocation(g.m(), g.k(), [&](const Allocation& y) {
      Weight px = p1(x, y, g), pxp = p1(xp, y, g);
      best_pure = std::max(best_pure, g.total_weight() - px);
      if (px <= a && pxp <= b) prevent = true;
      best_expected = std::max(best_expected, testing_support::expected_p2(g, s, y));
    });
    if (pure_best_response_dp(g, x).value != best_pure) ++mismatches;
    if (two_strategy_prevent_dp(x, xp, g, a, b).possible != prevent) ++mismatches;
    if (expected_best_response_dp(g, s).value != best_expected) ++mismatches;
  }
  report(4, mismatches == 0, "1000 instances, mismatches " + std::to_string(mismatches));
}

// Criteria 5 and 6 share one suite.
void criteria5and6() {
  Gen gen(1005);
  int not_optimal = 0, unbalanced = 0, too_fractional = 0, gap_out = 0;
  Weight worst_gap = 0;
  for (int it = 0; it < 500; ++it) {
    GameInstance g = gen.instance(6, 6, 4, 6);
    Allocation x = gen.allocation(g.n(), g.k()), xp = gen.allocation(g.n(), g.k());
    FractionalTrace t = fractional_trace(x, xp, rational_weights(g), g.m());
    Rational v1 = dot(t.response.h, g), v2 = dot(t.response.hprime, g);
    if (!is_valid_response(x, xp, t.response, g.m()) || std::min(v1, v2) != testing_support::lp_maxmin(x, xp, g))
      ++not_optimal;
    if (v1 != v2) ++unbalanced;
    int fractional = 0;
    for (std::size_t i = 0; i < x.size(); ++i)
      if (t.response.h[i].get_den() != 1 || t.response.hprime[i].get_den() != 1) ++fractional;
    if (fractional > 2) ++too_fractional;

    GreedyResponse gr = greedy_opponent_response(x, xp, g);
    Weight exact = g.total_weight() - testing_support::brute_two_guarantee(g, x, xp);
    Weight gap = exact - gr.value;
    worst_gap = std::max(worst_gap, gap);
    if (gap < 0 || gap > 2 * g.max_weight()) ++gap_out;
  }
  std::ostringstream d5;
  d5 << "500 instances, not optimal " << not_optimal << ", unbalanced " << unbalanced
     << ", more than two fractional " << too_fractional;
  report(5, not_optimal == 0 && unbalanced == 0 && too_fractional == 0, d5.str());
  std::ostringstream d6;
  d6 << "500 instances, gap outside [0, 2 w_max] " << gap_out << ", largest gap " << worst_gap;
  report(6, gap_out == 0, d6.str());
}

void criterion7() {
  int out = 0, total = 0;
  for (const Rational& eps : {Rational(1, 4), Rational(1, 10)}) {
    Gen gen(1004);  // suite 4
    for (int it = 0; it < 1000; ++it) {
      GameInstance g = gen.instance(8, 8, 5, 9);
      Allocation x = gen.allocation(g.n(), g.k());
      Weight u = gen.uniform(1, g.total_weight());
      PtasSetup setup = make_ptas_setup(g, u, eps);
      WeakResponse weak = weak_adversary_pure(setup.weights, g.m(), x, setup.split);
      Rational exact = pure_best_response_dp(setup.weights, g.m(), x).value;
      Rational gap = exact - weak.value;
      ++total;
      if (gap < 0 || gap > eps * R(u) / 2) ++out;
    }
  }
  report(7, out == 0, std::to_string(total) + " rounded instances, gap outside [0, eps u/2] " + std::to_string(out));
}

void criterion8() {
  Gen gen(1008);
  int checked = 0, third_short = 0, divergence = 0;
  for (int it = 0; it < 40; ++it) {
    GameInstance g = gen.instance(4, 4, 3, 6, 1);
    // Largest u that the oracle certifies at probability 1/2.
    Weight u = 0;
    for (Weight v = g.total_weight(); v >= 1; --v)
      if (exact_maxmin_up(g, 2, v).probability >= Rational(1, 2)) {
        u = v;
        break;
      }
    if (u == 0) continue;
    ++checked;
    if (third_approx_2strategy(g, u).certified < ceil_div(u, 3)) ++third_short;
    if (eps_approx_2strategy(g, u, Rational(1, 4)).certified < ceil_div(3 * u, 4)) ++divergence;
  }
  std::ostringstream d;
  d << checked << " certified instances, below ceil(u/3) " << third_short << ", divergences "
    << divergence;
  report(8, checked > 0 && third_short == 0 && divergence == 0, d.str());
}

void criterion9() {
  GameInstance g(2, 2, {1, 1});
  PairSolution s = solve_uniform_c2(g, 1);
  bool verified = s.ok && verify_2strategy(g, s.x, s.xp, 1).ok;
  PairSolution none = solve_uniform_c2(GameInstance(1, 2, {1, 1}), 1);
  std::ostringstream d;
  d << "(2,2,(1,1)) " << (verified ? "verified" : "not verified") << ", (1,2,(1,1)) "
    << (none.ok ? "feasible" : "infeasible") << " with margin " << to_string(none.margin);
  report(9, verified && !none.ok && none.margin == 0, d.str());
}

void criterion10() {
  bool p2 = construct_Pc(2) == std::set<Profile>{Profile{1}, Profile{Rational(1, 2), Rational(1, 2)}};
  auto p3 = construct_Pc(3);
  bool p3_has = p3.count(Profile{1}) && p3.count(Profile{Rational(1, 2), Rational(1, 2)}) &&
                p3.count(Profile{Rational(1, 3), Rational(1, 3), Rational(1, 3)});
  Gen gen(1010);
  int mismatches = 0;
  for (int it = 0; it < 200; ++it) {
    GameInstance g = gen.instance(3, 3, 3, 4);
    int c = static_cast<int>(gen.uniform(1, 3));
    Weight u = gen.uniform(1, g.total_weight());
    Rational free = exact_maxmin_up(g, c, u).probability;
    Rational best = 0;
    for (const Profile& p : construct_Pc(c)) {
      if (p.size() > count_pure(g.n(), g.k())) continue;
      best = std::max(best, exact_maxmin_up(g, c, u, p).probability);
    }
    if (free != best) ++mismatches;
  }
  std::ostringstream d;
  d << "P2 " << (p2 ? "exact" : "wrong") << ", P3 " << (p3_has ? "contains" : "misses")
    << " the three profiles, 200 instances with free != best fixed " << mismatches;
  report(10, p2 && p3_has && mismatches == 0, d.str());
}

void criterion11() {
  Gen gen(1011);
  int greedy_out = 0;
  for (int it = 0; it < 500; ++it) {
    GameInstance g = gen.instance(6, 6, 4, 6);
    MixedStrategy s = gen.mixed(g, static_cast<int>(gen.uniform(1, 3)));
    Rational exact = expected_best_response_dp(g, s).value;
    Rational greedy = greedy_weak_adversary_expected(g, s).value;
    if (greedy > exact || exact - greedy > R(g.max_weight())) ++greedy_out;
  }
  int strict = 0, equal = 0, below = 0, zero = 0, runs = 0;
  std::string witness;
  Gen suite(1012);
  for (int it = 0; it < 40; ++it) {
    GameInstance g = suite.instance(3, 3, 3, 4);
    for (int c = 1; c <= 3; ++c) {
      Rational v = exact_expected_maximin_restricted(g, c).value;
      ++runs;
      if (v == 0) ++zero;
      else if (v > opt_bounds(c)) ++strict;
      else if (v == opt_bounds(c)) {
        ++equal;
        if (witness.empty()) {
          std::ostringstream w;
          w << " (first at n=" << g.n() << " m=" << g.m() << " k=" << g.k() << " c=" << c << ")";
          witness = w.str();
        }
      }
      else ++below;
    }
  }
  std::ostringstream d;
  d << "500 strategies, greedy outside w_max " << greedy_out << "; " << runs
    << " restricted maximin runs: zero " << zero << ", above 1/c " << strict << ", equal to 1/c "
    << equal << witness << ", below 1/c " << below;
  report(11, greedy_out == 0 && equal == 0 && below == 0, d.str());
}

// Least-squares slope of log(size) against log(scale).
double slope(const std::vector<double>& xs, const std::vector<double>& ys) {
  double n = static_cast<double>(xs.size()), sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    double lx = std::log(xs[i]), ly = std::log(ys[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

void growth(const std::string& name, const std::vector<double>& scale, const std::vector<double>& size) {
  std::ostringstream d;
  d << "growth " << name << ":";
  for (std::size_t i = 0; i < scale.size(); ++i) d << " " << scale[i] << "->" << size[i];
  d << "  log-log slope " << slope(scale, size);
  std::printf("%s\n", d.str().c_str());
}

void growth_checks() {
  std::vector<double> xs, ys;
  for (Troops n : {2, 4, 8, 16}) {
    xs.push_back(static_cast<double>(n));
    ys.push_back(static_cast<double>(count_signatures(GameInstance(n, n, {1, 2, 3}))));
  }
  growth("signatures vs troops (k=3)", xs, ys);

  xs.clear();
  ys.clear();
  for (Troops n : {2, 4, 8, 16}) {
    GameInstance g(n, n / 2, {8, 8, 5, 1, 1, 1});
    PtasSetup setup = make_ptas_setup(g, 16, Rational(1, 2));
    std::uint64_t seen = 0;
    enumerate_triplets(setup, [&](const Triplet&) {
      ++seen;
      return true;
    });
    xs.push_back(static_cast<double>(n));
    ys.push_back(static_cast<double>(seen));
  }
  growth("triplets vs troops", xs, ys);

  xs.clear();
  ys.clear();
  for (Weight w : {10, 100, 1000, 10000}) {
    xs.push_back(static_cast<double>(w));
    ys.push_back(static_cast<double>(profile_grid(w, 2, Rational(1, 2)).size()));
  }
  growth("profile grid vs total weight (c=2)", xs, ys);
}

}  // namespace

int main() {
  try {
    criterion1();
    criterion2();
    criterion3();
    criterion4();
    criteria5and6();
    criterion7();
    criterion8();
    criterion9();
    criterion10();
    criterion11();
    growth_checks();
  } catch (const std::exception& e) {
    std::printf("acceptance aborted: %s\n", e.what());
    return 2;
  }
  std::printf("%s: %d failing\n", failures == 0 ? "ALL PASS" : "FAILURES", failures);
  return failures == 0 ? 0 : 1;
}
