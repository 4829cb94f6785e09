#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

namespace bubblescope::cli {

using nlohmann::json;

/// Malformed or unknown configuration; maps to exit code 2.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Assertion {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct RunOptions {
  int threads = 1;
  std::uint64_t seed = 1;
};

struct ScenarioRun {
  std::string name;
  /// Effective parameters: every value the run used, defaults included.
  json config = json::object();
  json results = json::object();
  std::vector<Assertion> assertions;
  /// (file name, CSV text)
  std::vector<std::pair<std::string, std::string>> tables;

  [[nodiscard]] bool passed() const noexcept;
};

[[nodiscard]] const std::vector<std::string>& scenario_names();

/// Runs a named scenario. Missing config keys take documented defaults and
/// are echoed in ScenarioRun::config; unknown keys raise ConfigError.
[[nodiscard]] ScenarioRun run_scenario(const std::string& name, const json& config,
                                       const RunOptions& opts);

/// Summary record with config hash, library version and RNG algorithm.
[[nodiscard]] json summary_json(const ScenarioRun& run, const RunOptions& opts);

/// FNV-1a of the canonical dump of the effective config.
[[nodiscard]] std::string config_hash(const json& effective);

}  // namespace bubblescope::cli
