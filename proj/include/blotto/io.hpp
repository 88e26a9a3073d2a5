#pragma once

#include "blotto/game.hpp"

#include <json.hpp>

#include <filesystem>
#include <string>

namespace blotto {

// {"n": int, "m": int, "weights": [int, ...]}
GameInstance instance_from_json(const nlohmann::json& j);
nlohmann::json instance_to_json(const GameInstance& inst);

// {"mode": "discrete" | "continuous", "support": [[rational, ...], ...],
//  "probs": [rational, ...]}; rationals are "p/q" strings or integers.
struct StrategyFile {
  bool continuous = false;
  std::vector<RationalAllocation> support;
  std::vector<Rational> probs;

  // Throws InvalidInput when an entry is not an integer.
  MixedStrategy discrete() const;
  ContinuousMixedStrategy continuous_strategy() const;
};

StrategyFile strategy_from_json(const nlohmann::json& j);
nlohmann::json strategy_to_json(const MixedStrategy& s);
nlohmann::json strategy_to_json(const ContinuousMixedStrategy& s);
nlohmann::json allocation_to_json(const Allocation& x);
nlohmann::json allocation_to_json(const RationalAllocation& x);

// Parses a file; malformed JSON and bad fields raise InvalidInput.
nlohmann::json read_json_file(const std::filesystem::path& path);
GameInstance load_instance(const std::filesystem::path& path);
StrategyFile load_strategy(const std::filesystem::path& path);

}  // namespace blotto
