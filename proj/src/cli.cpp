#include "blotto/cli.hpp"

#include "blotto/approx.hpp"
#include "blotto/best_response.hpp"
#include "blotto/caps.hpp"
#include "blotto/continuous.hpp"
#include "blotto/errors.hpp"
#include "blotto/io.hpp"
#include "blotto/oracle.hpp"
#include "blotto/profiles.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <ostream>
#include <sstream>

namespace blotto {

namespace {

using nlohmann::json;

// Discrete payoffs are integers, so "at least u" means at least ceil(u).
Weight discrete_u(const std::string& text) { return to_int64(ceil(parse_rational(text))); }

StrategyFile load_strategy_any(const std::string& path) {
  json j = read_json_file(path);
  if (j.is_object() && j.contains("strategy")) return strategy_from_json(j.at("strategy"));
  return strategy_from_json(j);
}

json two_strategy_json(const TwoStrategyResult& r) {
  return {{"strategy", strategy_to_json(r.strategy)},
          {"certified", r.certified},
          {"target_met", r.target_met},
          {"candidates", r.candidates},
          {"objective", to_string(r.objective)}};
}

json pair_json(const PairSolution& r) {
  ContinuousMixedStrategy s = r.x == r.xp ? ContinuousMixedStrategy{{r.x}, {Rational(1)}}
                                          : ContinuousMixedStrategy{{r.x, r.xp}, {Rational(1, 2), Rational(1, 2)}};
  json j = {{"feasible", r.ok},
            {"strategy", strategy_to_json(s)},
            {"margin", to_string(r.margin)},
            {"certified", r.certified},
            {"programs", r.programs}};
  if (r.alpha >= 0) j["alpha"] = r.alpha;
  return j;
}

struct Context {
  Caps caps;
  std::ostringstream out;
  int code = 0;
};

void emit(Context& ctx, const json& j) { ctx.out << j.dump(2) << "\n"; }

std::string fixtures_dir(const std::string& flag) {
  if (!flag.empty()) return flag;
  if (const char* env = std::getenv("BLOTTO_FIXTURES")) return env;
  return "fixtures";
}

void bench_tables(Context& ctx, const std::string& dir) {
  bool all = true;
  {
    GameInstance inst = load_instance(dir + "/table1_instance.json");
    MixedStrategy s = load_strategy_any(dir + "/table1_strategy.json").discrete();
    Rational p = guaranteed_probability(s, 10, inst, ctx.caps);
    bool pass = p == Rational(2, 5);
    all = all && pass;
    ctx.out << (pass ? "PASS" : "FAIL") << " table1 guaranteed probability at u=10: " << to_string(p)
            << " (expected 2/5)\n";
  }
  {
    GameInstance inst = load_instance(dir + "/table2_instance.json");
    Allocation x = load_strategy_any(dir + "/table2_strategy.json").discrete().support.at(0);
    PureMaximinResult r = exact_pure_maximin(inst, ctx.caps);
    Weight secured = inst.total_weight() - pure_best_response_dp(inst, x).value;
    bool among = std::find(r.optima.begin(), r.optima.end(), x) != r.optima.end();
    bool pass = r.value == 15 && secured == 15 && among;
    all = all && pass;
    ctx.out << (pass ? "PASS" : "FAIL") << " table2 pure maximin: " << r.value
            << ", witness secures " << secured << (among ? " and is optimal" : " and is not optimal")
            << " (expected 15)\n";
  }
  ctx.code = all ? 0 : 1;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Context ctx;
  CLI::App app{"Colonel Blotto solvers"};
  app.require_subcommand(1);
  std::string caps_text;
  unsigned jobs = 0;
  app.add_option("--caps", caps_text, "Cap overrides, e.g. supports=1000,work=5000");
  app.add_option("--jobs", jobs, "Worker threads");

  std::string file, strat_file, u_text, eps_text, mode = "pure", profile_text, fixtures;
  int c = 0;

  auto* oracle = app.add_subcommand("oracle", "Exhaustive solvers");
  oracle->require_subcommand(1);
  auto* maxmin = oracle->add_subcommand("maxmin", "Best probability of securing u with c strategies");
  maxmin->add_option("--c", c)->required();
  maxmin->add_option("--u", u_text)->required();
  maxmin->add_option("--profile", profile_text, "Fixed probabilities, comma separated");
  maxmin->add_option("FILE", file)->required();
  auto* pure = oracle->add_subcommand("pure", "Pure maximin");
  pure->add_option("FILE", file)->required();
  auto* expected = oracle->add_subcommand("expected", "Expected-payoff maximin");
  expected->add_option("--c", c, "Support size (omit for unrestricted)");
  expected->add_option("FILE", file)->required();

  auto* best = app.add_subcommand("best-response", "Player 2's best response");
  best->add_option("--mode", mode)->check(CLI::IsMember({"pure", "two", "expected"}));
  best->add_option("FILE", file)->required();
  best->add_option("STRATFILE", strat_file)->required();

  auto* solve = app.add_subcommand("solve", "Approximation algorithms");
  solve->require_subcommand(1);
  auto* ptas = solve->add_subcommand("pure-ptas", "Pure strategy securing (1-eps)u");
  ptas->add_option("--u", u_text)->required();
  ptas->add_option("--eps", eps_text)->required();
  ptas->add_option("FILE", file)->required();
  auto* third = solve->add_subcommand("third", "Two strategies securing u/3 with probability 1/2");
  third->add_option("--u", u_text)->required();
  third->add_option("FILE", file)->required();
  auto* two_eps = solve->add_subcommand("two-eps", "Two strategies securing (1-eps)u with probability 1/2");
  two_eps->add_option("--u", u_text)->required();
  two_eps->add_option("--eps", eps_text)->required();
  two_eps->add_option("FILE", file)->required();

  auto* cont = app.add_subcommand("continuous", "Continuous troops");
  cont->require_subcommand(1);
  auto* cpure = cont->add_subcommand("pure", "Pure strategy securing u");
  cpure->add_option("--u", u_text)->required();
  cpure->add_option("FILE", file)->required();
  auto* uniform = cont->add_subcommand("uniform", "Equal weights, two strategies");
  uniform->add_option("--u", u_text)->required();
  uniform->add_option("FILE", file)->required();
  auto* general = cont->add_subcommand("general", "Arbitrary weights, two strategies at (1-eps)u");
  general->add_option("--u", u_text)->required();
  general->add_option("--eps", eps_text)->required();
  general->add_option("FILE", file)->required();

  auto* verify = app.add_subcommand("verify", "Check a strategy file");
  verify->add_option("--u", u_text)->required();
  verify->add_option("FILE", file)->required();
  verify->add_option("STRATFILE", strat_file)->required();

  auto* bench = app.add_subcommand("bench", "Reproduction checks");
  bench->require_subcommand(1);
  auto* tables = bench->add_subcommand("tables", "Reproduce the two reference instances");
  tables->add_option("--fixtures", fixtures, "Directory with the table fixtures");

  std::vector<std::string> storage{"blotto"};
  storage.insert(storage.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& s : storage) argv.push_back(s.data());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n";
    return 2;
  }

  try {
    ctx.caps = Caps::from_environment();
    if (!caps_text.empty()) ctx.caps.apply(caps_text);
    if (jobs > 0) ctx.caps.jobs = jobs;

    if (maxmin->parsed()) {
      GameInstance inst = load_instance(file);
      std::optional<Profile> profile;
      if (!profile_text.empty()) {
        std::vector<Rational> probs;
        std::stringstream ss(profile_text);
        for (std::string item; std::getline(ss, item, ',');) probs.push_back(parse_rational(item));
        profile = make_profile(probs);
      }
      MaxminResult r = exact_maxmin_up(inst, c, discrete_u(u_text), profile, ctx.caps);
      emit(ctx, {{"probability", to_string(r.probability)},
                 {"strategy", strategy_to_json(r.strategy)},
                 {"supports_examined", r.supports_examined}});
    } else if (pure->parsed()) {
      GameInstance inst = load_instance(file);
      PureMaximinResult r = exact_pure_maximin(inst, ctx.caps);
      json optima = json::array();
      for (const auto& x : r.optima) optima.push_back(allocation_to_json(x));
      emit(ctx, {{"value", r.value}, {"strategy", allocation_to_json(r.strategy)}, {"optima", optima}});
    } else if (expected->parsed()) {
      GameInstance inst = load_instance(file);
      ExpectedMaximinResult r = c > 0 ? exact_expected_maximin_restricted(inst, c, ctx.caps)
                                      : exact_expected_maximin(inst, ctx.caps);
      emit(ctx, {{"value", to_string(r.value)}, {"strategy", strategy_to_json(r.strategy)}});
    } else if (best->parsed()) {
      GameInstance inst = load_instance(file);
      StrategyFile sf = load_strategy_any(strat_file);
      if (mode == "pure") {
        MixedStrategy s = sf.discrete();
        if (s.size() != 1) throw InvalidInput("pure mode needs a single support strategy");
        s.validate(inst);
        auto r = pure_best_response_dp(inst, s.support[0]);
        emit(ctx, {{"player2", r.value}, {"player1", inst.total_weight() - r.value},
                   {"y", allocation_to_json(r.y)}});
      } else if (mode == "two") {
        if (sf.support.empty() || sf.support.size() > 2)
          throw InvalidInput("two mode needs one or two support strategies");
        const auto& a = sf.support.front();
        const auto& b = sf.support.back();
        if (sf.continuous) {
          auto r = two_strategy_guarantee(a, b, inst);
          emit(ctx, {{"guarantee", r.value}, {"y", allocation_to_json(r.y)}});
        } else {
          MixedStrategy s = sf.discrete();
          auto r = two_strategy_guarantee(s.support.front(), s.support.back(), inst);
          emit(ctx, {{"guarantee", r.value}, {"y", allocation_to_json(r.y)}});
        }
      } else {
        MixedStrategy s = sf.discrete();
        auto r = expected_best_response_dp(inst, s);
        emit(ctx, {{"player2", to_string(r.value)},
                   {"player1", to_string(Rational(static_cast<long>(inst.total_weight())) - r.value)},
                   {"y", allocation_to_json(r.y)}});
      }
    } else if (ptas->parsed()) {
      GameInstance inst = load_instance(file);
      PtasResult r = pure_ptas(inst, discrete_u(u_text), parse_rational(eps_text), ctx.caps);
      emit(ctx, {{"strategy", strategy_to_json(MixedStrategy{{r.x}, {Rational(1)}})},
                 {"certified", r.certified},
                 {"weak_value", to_string(r.weak_value)},
                 {"precondition_met", r.precondition_met},
                 {"target_met", r.target_met}});
      if (!r.target_met) ctx.code = 1;
    } else if (third->parsed()) {
      GameInstance inst = load_instance(file);
      TwoStrategyResult r = third_approx_2strategy(inst, discrete_u(u_text), ctx.caps);
      emit(ctx, two_strategy_json(r));
      if (!r.target_met) ctx.code = 1;
    } else if (two_eps->parsed()) {
      GameInstance inst = load_instance(file);
      TwoStrategyResult r =
          eps_approx_2strategy(inst, discrete_u(u_text), parse_rational(eps_text), ctx.caps);
      emit(ctx, two_strategy_json(r));
      if (!r.target_met) ctx.code = 1;
    } else if (cpure->parsed()) {
      GameInstance inst = load_instance(file);
      PureFeasibility r = pure_feasible(inst, parse_rational(u_text), ctx.caps);
      json j = {{"feasible", r.ok}, {"margin", to_string(r.margin)}};
      if (r.x) j["strategy"] = strategy_to_json(ContinuousMixedStrategy{{*r.x}, {Rational(1)}});
      emit(ctx, j);
      if (!r.ok) ctx.code = 1;
    } else if (uniform->parsed()) {
      GameInstance inst = load_instance(file);
      PairSolution r = solve_uniform_c2(inst, parse_rational(u_text), ctx.caps);
      emit(ctx, pair_json(r));
      if (!r.ok) ctx.code = 1;
    } else if (general->parsed()) {
      GameInstance inst = load_instance(file);
      PairSolution r = solve_general_c2(inst, discrete_u(u_text), parse_rational(eps_text), ctx.caps);
      json j = pair_json(r);
      j["fallback"] = r.used_fallback;
      j["precondition_met"] = r.precondition_met;
      emit(ctx, j);
      if (!r.ok) ctx.code = 1;
    } else if (verify->parsed()) {
      GameInstance inst = load_instance(file);
      StrategyFile sf = load_strategy_any(strat_file);
      if (!sf.continuous) {
        MixedStrategy s = sf.discrete();
        emit(ctx, {{"probability", to_string(guaranteed_probability(s, discrete_u(u_text), inst, ctx.caps))}});
      } else {
        ContinuousMixedStrategy s = sf.continuous_strategy();
        s.validate(inst);
        if (s.support.size() > 2 ||
            (s.support.size() == 2 && (s.probs[0] != Rational(1, 2) || s.probs[1] != Rational(1, 2))))
          throw InvalidInput("continuous verification supports one strategy or two at 1/2 each");
        const auto& a = s.support.front();
        const auto& b = s.support.back();
        TupleCheck r = verify_2strategy(inst, a, b, parse_rational(u_text), ctx.caps);
        json j = {{"ok", r.ok}};
        if (r.violating) {
          j["violating"] = {{"l1", r.violating->l1}, {"l2", r.violating->l2}, {"l12", r.violating->l12}};
          j["response"] = allocation_to_json(response_from_tuple(*r.violating, a, b));
        }
        emit(ctx, j);
        if (!r.ok) ctx.code = 1;
      }
    } else if (tables->parsed()) {
      bench_tables(ctx, fixtures_dir(fixtures));
    }
  } catch (const InvalidInput& e) {
    err << "invalid input: " << e.what() << "\n";
    return 2;
  } catch (const nlohmann::json::exception& e) {
    err << "invalid input: " << e.what() << "\n";
    return 2;
  } catch (const CapExceeded& e) {
    err << "cap exceeded: " << e.what() << "\n";
    return 3;
  } catch (const PreconditionFailed& e) {
    err << "precondition failed: " << e.what() << "\n";
    return 1;
  }
  out << ctx.out.str();
  return ctx.code;
}

}  // namespace blotto
