#include "blotto/caps.hpp"

#include "blotto/errors.hpp"

#include <charconv>
#include <cstdlib>
#include <string>

namespace blotto {

namespace {

std::uint64_t parse_count(std::string_view key, std::string_view value) {
  std::uint64_t out = 0;
  auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
  if (ec != std::errc() || ptr != value.data() + value.size())
    throw InvalidInput("bad value for cap '" + std::string(key) + "'");
  return out;
}

}  // namespace

void Caps::apply(std::string_view spec) {
  while (!spec.empty()) {
    auto comma = spec.find(',');
    std::string_view item = spec.substr(0, comma);
    spec = comma == std::string_view::npos ? std::string_view() : spec.substr(comma + 1);
    if (item.empty()) continue;
    auto eq = item.find('=');
    if (eq == std::string_view::npos)
      throw InvalidInput("cap entry without '=': " + std::string(item));
    std::string_view key = item.substr(0, eq);
    std::uint64_t v = parse_count(key, item.substr(eq + 1));
    if (key == "supports") max_supports = v;
    else if (key == "responses") max_responses = v;
    else if (key == "critical_k") max_critical_k = static_cast<int>(v);
    else if (key == "profile_c") max_profile_c = static_cast<int>(v);
    else if (key == "heavy_responses") max_heavy_responses = static_cast<int>(v);
    else if (key == "work") max_work = v;
    else if (key == "jobs") jobs = v == 0 ? 1 : static_cast<unsigned>(v);
    else throw InvalidInput("unknown cap: " + std::string(key));
  }
}

Caps Caps::from_environment() {
  Caps caps;
  if (const char* env = std::getenv("BLOTTO_CAPS")) caps.apply(env);
  return caps;
}

}  // namespace blotto
