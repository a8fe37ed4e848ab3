#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>

#include "freight/demand.hpp"
#include "freight/kv_config.hpp"
#include "freight/reporting.hpp"
#include "freight/saa.hpp"

namespace freight::cli {

// Everything a run needs. Relative paths resolve against the config file's directory.
struct RunConfig {
  std::filesystem::path nodes;
  std::filesystem::path links;
  std::filesystem::path demand;
  SaaConfig saa;  // carries the solver, disaster and unit factors
  TonMileConfig tonmiles;
  std::filesystem::path output_dir = "out";
  std::uint64_t scenario_seed = 0;
};

struct Overrides {
  std::optional<std::uint64_t> seed;
  std::optional<int> threads;
  std::optional<std::filesystem::path> out;
};

RunConfig make_run_config(const KeyValueConfig& kv);
RunConfig load_run_config(const std::filesystem::path& path, const Overrides& overrides = {});

// Re-raises any library error thrown by `fn` as a ConfigError.
void as_config_error(const std::function<void()>& fn);

// Flat text echo of every resolved setting, one "key = value" per line.
std::string describe(const RunConfig& cfg);

}  // namespace freight::cli
