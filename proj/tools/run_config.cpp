#include "run_config.hpp"

#include <algorithm>
#include <array>
#include <functional>
#include <limits>
#include <string_view>

#include <fmt/format.h>

#include "freight/error.hpp"
#include "freight/scenario.hpp"

namespace freight::cli {

namespace {

constexpr std::array<std::string_view, 30> kKnownKeys{
    "network.nodes",         "network.links",          "demand.file",          "units.im_truck_equiv",
    "units.im_rail_equiv",   "disaster.preset",        "disaster.file",        "disaster.name",
    "disaster.risk_tags",    "disaster.hit_fraction",  "disaster.reduction",   "saa.M",
    "saa.N",                 "saa.N_prime",            "saa.base_seed",        "saa.threads",
    "solver.step_size",      "solver.gap_tol",         "solver.max_iters",     "solver.backtracking",
    "solver.intermodal_k",   "solver.path_gap_tol",    "tonmiles.tons_per_truck", "tonmiles.tons_per_train",
    "tonmiles.tons_per_intermodal_unit", "tonmiles.annualization_factor", "output.dir", "assign.scenario_seed",
    "run.name",              "run.notes"};

std::filesystem::path resolve(const KeyValueConfig& kv, std::string_view key, std::string_view fallback = {}) {
  const auto value = kv.get_string(key, fallback);
  if (value.empty()) throw Error(ErrorCode::Config, "missing required key " + std::string(key));
  std::filesystem::path p(value);
  return p.is_absolute() ? p : kv.base_dir() / p;
}

int get_int32(const KeyValueConfig& kv, std::string_view key, int fallback) {
  const auto v = kv.get_int(key, fallback);
  if (v < std::numeric_limits<int>::min() || v > std::numeric_limits<int>::max()) {
    throw Error(ErrorCode::Config, std::string(key) + " out of range");
  }
  return static_cast<int>(v);
}

DisasterSpec resolve_disaster(const KeyValueConfig& kv, std::optional<std::uint64_t>& file_seed) {
  const auto preset_name = kv.get_string("disaster.preset", "none");
  auto preset = disaster_preset(preset_name);
  if (!preset) {
    std::string names;
    for (const auto n : disaster_preset_names()) names += (names.empty() ? "" : ", ") + std::string(n);
    throw Error(ErrorCode::Config, "unknown disaster.preset '" + preset_name + "' (known: " + names + ")");
  }
  DisasterSpec spec = *preset;
  if (kv.has("disaster.file")) {
    const auto file = load_disaster_spec(resolve(kv, "disaster.file"));
    spec = file.spec;
    file_seed = file.seed;
  }
  if (const auto name = kv.get("disaster.name")) spec.name = *name;
  if (const auto tags = kv.get("disaster.risk_tags")) spec.risk_tags = parse_risk_tags(*tags);
  spec.hit_fraction = kv.get_double("disaster.hit_fraction", spec.hit_fraction);
  spec.reduction = kv.get_double("disaster.reduction", spec.reduction);
  spec.validate();
  return spec;
}

}  // namespace

void as_config_error(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    if (e.code() == ErrorCode::Config) throw;
    throw Error(ErrorCode::Config, e.what());
  }
}

RunConfig make_run_config(const KeyValueConfig& kv) {
  for (const auto& [key, value] : kv.entries()) {
    if (std::find(kKnownKeys.begin(), kKnownKeys.end(), key) == kKnownKeys.end()) {
      throw Error(ErrorCode::Config, "unknown key '" + key + "'");
    }
  }
  RunConfig cfg;
  cfg.nodes = resolve(kv, "network.nodes");
  cfg.links = resolve(kv, "network.links");
  cfg.demand = resolve(kv, "demand.file");
  cfg.output_dir = resolve(kv, "output.dir", "out");

  auto& saa = cfg.saa;
  saa.factors.im_truck_equiv = kv.get_double("units.im_truck_equiv", saa.factors.im_truck_equiv);
  saa.factors.im_rail_equiv = kv.get_double("units.im_rail_equiv", saa.factors.im_rail_equiv);
  saa.factors.validate();

  std::optional<std::uint64_t> file_seed;
  saa.disaster = resolve_disaster(kv, file_seed);

  saa.M = get_int32(kv, "saa.M", saa.M);
  saa.N = get_int32(kv, "saa.N", saa.N);
  saa.N_prime = get_int32(kv, "saa.N_prime", saa.N_prime);
  saa.base_seed = kv.get_uint64("saa.base_seed", file_seed.value_or(saa.base_seed));
  saa.threads = get_int32(kv, "saa.threads", saa.threads);

  auto& solver = saa.solver;
  solver.step_size = kv.get_double("solver.step_size", solver.step_size);
  solver.gap_tol = kv.get_double("solver.gap_tol", solver.gap_tol);
  solver.max_iters = get_int32(kv, "solver.max_iters", solver.max_iters);
  solver.backtracking = kv.get_bool("solver.backtracking", solver.backtracking);
  solver.intermodal_k = get_int32(kv, "solver.intermodal_k", solver.intermodal_k);
  solver.path_gap_tol = kv.get_double("solver.path_gap_tol", solver.path_gap_tol);

  auto& tm = cfg.tonmiles;
  tm.tons_per_truck = kv.get_double("tonmiles.tons_per_truck", tm.tons_per_truck);
  tm.tons_per_train = kv.get_double("tonmiles.tons_per_train", tm.tons_per_train);
  tm.tons_per_intermodal_unit = kv.get_double("tonmiles.tons_per_intermodal_unit", tm.tons_per_intermodal_unit);
  tm.annualization_factor = kv.get_double("tonmiles.annualization_factor", tm.annualization_factor);

  cfg.scenario_seed = kv.get_uint64("assign.scenario_seed", saa.base_seed);
  return cfg;
}

RunConfig load_run_config(const std::filesystem::path& path, const Overrides& overrides) {
  auto kv = KeyValueConfig::load(path);
  if (overrides.seed) {
    kv.set("saa.base_seed", std::to_string(*overrides.seed));
    kv.set("assign.scenario_seed", std::to_string(*overrides.seed));
  }
  if (overrides.threads) kv.set("saa.threads", std::to_string(*overrides.threads));
  auto cfg = make_run_config(kv);
  if (overrides.out) cfg.output_dir = *overrides.out;
  as_config_error([&] {
    cfg.saa.solver.validate();
    cfg.tonmiles.validate();
    if (cfg.saa.threads < 1) throw Error(ErrorCode::InvalidArgument, "saa.threads must be >= 1");
  });
  return cfg;
}

std::string describe(const RunConfig& cfg) {
  const auto& s = cfg.saa;
  std::string out;
  const auto line = [&out](std::string_view key, const auto& value) { out += fmt::format("{} = {}\n", key, value); };
  line("network.nodes", cfg.nodes.string());
  line("network.links", cfg.links.string());
  line("demand.file", cfg.demand.string());
  line("units.im_truck_equiv", s.factors.im_truck_equiv);
  line("units.im_rail_equiv", s.factors.im_rail_equiv);
  line("disaster.name", s.disaster.name);
  line("disaster.risk_tags", format_risk_tags(s.disaster.risk_tags));
  line("disaster.hit_fraction", s.disaster.hit_fraction);
  line("disaster.reduction", s.disaster.reduction);
  line("saa.M", s.M);
  line("saa.N", s.N);
  line("saa.N_prime", s.N_prime);
  line("saa.base_seed", s.base_seed);
  line("saa.threads", s.threads);
  line("solver.step_size", s.solver.step_size);
  line("solver.gap_tol", s.solver.gap_tol);
  line("solver.max_iters", s.solver.max_iters);
  line("solver.backtracking", s.solver.backtracking);
  line("solver.intermodal_k", s.solver.intermodal_k);
  line("solver.path_gap_tol", s.solver.path_gap_tol);
  line("tonmiles.tons_per_truck", cfg.tonmiles.tons_per_truck);
  line("tonmiles.tons_per_train", cfg.tonmiles.tons_per_train);
  line("tonmiles.tons_per_intermodal_unit", cfg.tonmiles.tons_per_intermodal_unit);
  line("tonmiles.annualization_factor", cfg.tonmiles.annualization_factor);
  line("output.dir", cfg.output_dir.string());
  line("assign.scenario_seed", cfg.scenario_seed);
  return out;
}

}  // namespace freight::cli
