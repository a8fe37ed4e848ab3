#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "freight/network.hpp"

namespace freight {

/// Which links a disaster can hit and how hard.
struct DisasterSpec {
  std::string name = "none";
  RiskMask risk_tags = 0;
  double hit_fraction = 0.5;  // share of at-risk links degraded per scenario
  double reduction = 0.8;     // capacity loss on a degraded link

  void validate() const;
};

/// Presets: earthquake-high, earthquake-high-moderate, hurricane, tornado,
/// flood, and "none" (no degradation).
std::optional<DisasterSpec> disaster_preset(std::string_view name);
std::vector<std::string_view> disaster_preset_names();

/// Contents of a disaster spec file: name, risk_tags, hit_fraction,
/// reduction, seed. `name` may also name a preset whose fields the other
/// keys then override.
struct DisasterFile {
  DisasterSpec spec;
  std::optional<std::uint64_t> seed;
};
DisasterFile load_disaster_spec(const std::filesystem::path& path);

/// One capacity realization over all links.
struct ScenarioSample {
  std::vector<double> capacities;  // indexed by LinkId
  std::uint64_t seed = 0;
  std::string disaster;
};

/// Capacities never fall below this fraction of the link's cap_lo.
inline constexpr double kCapacityFloorFraction = 1e-6;

/// Seeded generator with platform-independent output: mt19937_64 words
/// mapped to doubles and bounded integers without std distributions.
class ScenarioRng {
 public:
  explicit ScenarioRng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform on [0, 1) with 53 random bits.
  double uniform01();
  /// Uniform on [lo, hi].
  double uniform(double lo, double hi);
  /// Uniform integer on [0, bound), bound > 0; unbiased by rejection.
  std::uint64_t below(std::uint64_t bound);

 private:
  std::mt19937_64 engine_;
};

/// splitmix64 finalizer; a bijection on 64-bit words.
std::uint64_t mix64(std::uint64_t x);

/// Seed of the index-th child stream of base_seed. For a fixed base the map
/// index -> seed is injective.
std::uint64_t child_seed(std::uint64_t base_seed, std::uint64_t index);

/// Draws every capacity uniformly from [cap_lo, cap_hi] (ascending link id),
/// then picks floor(hit_fraction * n) of the n at-risk links uniformly
/// without replacement and scales them by (1 - reduction).
ScenarioSample sample_scenario(const Network& net, const DisasterSpec& spec, std::uint64_t seed);

/// Samples child_seed(base_seed, first_index + i) for i in [0, count).
std::vector<ScenarioSample> sample_batch(const Network& net, const DisasterSpec& spec, std::uint64_t base_seed,
                                         std::size_t count, std::uint64_t first_index = 0);

/// Deterministic no-disaster capacities at the midpoint of each range.
ScenarioSample base_case_scenario(const Network& net);

/// Ids of the links whose risk tags intersect the spec's, ascending.
std::vector<LinkId> at_risk_links(const Network& net, const DisasterSpec& spec);

/// floor(hit_fraction * n), robust to representation error in the product.
std::size_t degraded_count(double hit_fraction, std::size_t n);

}  // namespace freight
