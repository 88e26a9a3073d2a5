#pragma once

#include <cstdint>
#include <string_view>

namespace blotto {

// Enumeration bounds. Exceeding one raises CapExceeded instead of running
// for an unbounded time.
struct Caps {
  std::uint64_t max_supports = 5'000'000;
  std::uint64_t max_responses = 10'000;
  int max_critical_k = 12;
  int max_profile_c = 5;
  int max_heavy_responses = 8;
  std::uint64_t max_work = 50'000'000;
  unsigned jobs = 1;

  // Reads BLOTTO_CAPS, a comma separated list such as
  // "supports=100000,responses=5000,critical_k=10,profile_c=4,
  //  heavy_responses=8,work=1000000,jobs=4".
  static Caps from_environment();

  void apply(std::string_view spec);
};

}  // namespace blotto
