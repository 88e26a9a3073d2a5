#include "blotto/io.hpp"

#include "blotto/errors.hpp"

#include <fstream>
#include <sstream>

namespace blotto {

namespace {

std::int64_t get_int(const nlohmann::json& j, const char* key) {
  if (!j.contains(key)) throw InvalidInput(std::string("missing field '") + key + "'");
  const auto& v = j.at(key);
  if (!v.is_number_integer()) throw InvalidInput(std::string("field '") + key + "' must be an integer");
  return v.get<std::int64_t>();
}

Rational get_rational(const nlohmann::json& v) {
  if (v.is_string()) return parse_rational(v.get<std::string>());
  if (v.is_number_integer()) return from_int(v.get<std::int64_t>());
  throw InvalidInput("expected a rational string or an integer");
}

}  // namespace

GameInstance instance_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw InvalidInput("instance must be a JSON object");
  Troops n = get_int(j, "n");
  Troops m = get_int(j, "m");
  if (!j.contains("weights") || !j.at("weights").is_array())
    throw InvalidInput("field 'weights' must be an array");
  std::vector<Weight> weights;
  for (const auto& v : j.at("weights")) {
    if (!v.is_number_integer()) throw InvalidInput("weights must be integers");
    weights.push_back(v.get<Weight>());
  }
  return GameInstance(n, m, weights);
}

nlohmann::json instance_to_json(const GameInstance& inst) {
  return {{"n", inst.n()}, {"m", inst.m()}, {"weights", inst.weights()}};
}

MixedStrategy StrategyFile::discrete() const {
  MixedStrategy s;
  for (const auto& x : support) {
    Allocation a;
    for (const auto& v : x) {
      if (v.get_den() != 1) throw InvalidInput("discrete allocations must be integers");
      a.push_back(to_int64(v.get_num()));
    }
    s.support.push_back(std::move(a));
  }
  s.probs = probs;
  return s;
}

ContinuousMixedStrategy StrategyFile::continuous_strategy() const { return {support, probs}; }

StrategyFile strategy_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw InvalidInput("strategy must be a JSON object");
  StrategyFile f;
  if (j.contains("mode")) {
    if (!j.at("mode").is_string()) throw InvalidInput("field 'mode' must be a string");
    const auto mode = j.at("mode").get<std::string>();
    if (mode == "continuous") f.continuous = true;
    else if (mode != "discrete") throw InvalidInput("unknown mode '" + mode + "'");
  }
  if (!j.contains("support") || !j.at("support").is_array())
    throw InvalidInput("field 'support' must be an array");
  if (!j.contains("probs") || !j.at("probs").is_array())
    throw InvalidInput("field 'probs' must be an array");
  for (const auto& x : j.at("support")) {
    if (!x.is_array()) throw InvalidInput("support entries must be arrays");
    RationalAllocation a;
    for (const auto& v : x) a.push_back(get_rational(v));
    f.support.push_back(std::move(a));
  }
  for (const auto& p : j.at("probs")) f.probs.push_back(get_rational(p));
  if (f.support.size() != f.probs.size()) throw InvalidInput("support and probs differ in length");
  return f;
}

nlohmann::json allocation_to_json(const Allocation& x) {
  nlohmann::json a = nlohmann::json::array();
  for (Troops v : x) a.push_back(std::to_string(v));
  return a;
}

nlohmann::json allocation_to_json(const RationalAllocation& x) {
  nlohmann::json a = nlohmann::json::array();
  for (const auto& v : x) a.push_back(to_string(v));
  return a;
}

namespace {

template <class S>
nlohmann::json strategy_json(const S& s, const char* mode) {
  nlohmann::json support = nlohmann::json::array(), probs = nlohmann::json::array();
  for (const auto& x : s.support) support.push_back(allocation_to_json(x));
  for (const auto& p : s.probs) probs.push_back(to_string(p));
  return {{"mode", mode}, {"support", support}, {"probs", probs}};
}

}  // namespace

nlohmann::json strategy_to_json(const MixedStrategy& s) { return strategy_json(s, "discrete"); }
nlohmann::json strategy_to_json(const ContinuousMixedStrategy& s) {
  return strategy_json(s, "continuous");
}

nlohmann::json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  try {
    return nlohmann::json::parse(buffer.str());
  } catch (const nlohmann::json::exception& e) {
    throw InvalidInput(path.string() + ": " + e.what());
  }
}

GameInstance load_instance(const std::filesystem::path& path) {
  return instance_from_json(read_json_file(path));
}

StrategyFile load_strategy(const std::filesystem::path& path) {
  return strategy_from_json(read_json_file(path));
}

}  // namespace blotto
