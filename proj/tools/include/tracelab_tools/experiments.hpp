#pragma once

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace tracelab::cli {

// Flat JSON object keyed by the long flag names ("tau", "p-weights", ...).
using Config = nlohmann::json;

struct Output {
  std::string text;
  int status = 0;  // 0 ok, 3 a bound audit was violated
};

const std::vector<std::string>& subcommands();

// Fills defaults, checks ranges and returns the completed config. Notices
// about inserted defaults and schedule warnings go to `notices`. Throws
// Error(ConfigError) on invalid fields.
Config validate(const std::string& subcommand, Config config, std::vector<std::string>& notices);

// FNV-1a of the canonical dump of a validated config, as 16 hex digits.
std::string config_hash(const Config& config);

// Runs a subcommand on a validated config. `threads` only affects speed.
Output run(const std::string& subcommand, const Config& config, int threads);

}  // namespace tracelab::cli
