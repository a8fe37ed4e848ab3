#include "freight/scenario.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numeric>
#include <utility>

#include "csv.hpp"
#include "freight/error.hpp"
#include "freight/kv_config.hpp"

namespace freight {

void DisasterSpec::validate() const {
  if (!(hit_fraction >= 0.0 && hit_fraction <= 1.0)) {
    throw Error(ErrorCode::InvalidArgument, "disaster '" + name + "': hit_fraction must lie in [0, 1]");
  }
  if (!(reduction >= 0.0 && reduction < 1.0)) {
    throw Error(ErrorCode::InvalidArgument, "disaster '" + name + "': reduction must lie in [0, 1)");
  }
}

namespace {

constexpr std::array<std::pair<std::string_view, RiskMask>, 6> kPresets{{
    {"none", 0},
    {"earthquake-high", risk_bit(RiskTag::EarthquakeHigh)},
    {"earthquake-high-moderate", risk_bit(RiskTag::EarthquakeHigh) | risk_bit(RiskTag::EarthquakeModerate)},
    {"hurricane", risk_bit(RiskTag::Hurricane)},
    {"tornado", risk_bit(RiskTag::Tornado)},
    {"flood", risk_bit(RiskTag::Flood)},
}};

}  // namespace

std::optional<DisasterSpec> disaster_preset(std::string_view name) {
  const auto key = detail::to_lower(detail::trim(name));
  for (const auto& [preset, tags] : kPresets) {
    if (key == preset) {
      DisasterSpec spec;
      spec.name = std::string(preset);
      spec.risk_tags = tags;
      return spec;
    }
  }
  return std::nullopt;
}

std::vector<std::string_view> disaster_preset_names() {
  std::vector<std::string_view> names;
  for (const auto& [preset, tags] : kPresets) names.push_back(preset);
  return names;
}

DisasterFile load_disaster_spec(const std::filesystem::path& path) {
  const auto cfg = KeyValueConfig::load(path);
  DisasterFile file;
  const auto name = cfg.get_string("name", "custom");
  if (auto preset = disaster_preset(name)) file.spec = *preset;
  file.spec.name = name;
  if (const auto tags = cfg.get("risk_tags")) file.spec.risk_tags = parse_risk_tags(*tags);
  file.spec.hit_fraction = cfg.get_double("hit_fraction", file.spec.hit_fraction);
  file.spec.reduction = cfg.get_double("reduction", file.spec.reduction);
  if (cfg.has("seed")) file.seed = cfg.get_uint64("seed", 0);
  file.spec.validate();
  return file;
}

double ScenarioRng::uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

double ScenarioRng::uniform(double lo, double hi) {
  if (lo == hi) return lo;
  return lo + (hi - lo) * uniform01();
}

std::uint64_t ScenarioRng::below(std::uint64_t bound) {
  // Reject the top partial bucket so every residue is equally likely.
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - (std::numeric_limits<std::uint64_t>::max() % bound);
  std::uint64_t word = engine_();
  while (word >= limit) word = engine_();
  return word % bound;
}

std::uint64_t mix64(std::uint64_t x) {
  x ^= x >> 30;
  x *= 0xbf58476d1ce4e5b9ULL;
  x ^= x >> 27;
  x *= 0x94d049bb133111ebULL;
  x ^= x >> 31;
  return x;
}

std::uint64_t child_seed(std::uint64_t base_seed, std::uint64_t index) {
  return mix64(base_seed + (index + 1) * 0x9e3779b97f4a7c15ULL);
}

std::size_t degraded_count(double hit_fraction, std::size_t n) {
  const double raw = hit_fraction * static_cast<double>(n);
  const auto count = static_cast<std::size_t>(std::floor(raw + 1e-9));
  return std::min(count, n);
}

std::vector<LinkId> at_risk_links(const Network& net, const DisasterSpec& spec) {
  std::vector<LinkId> ids;
  for (const auto& l : net.links()) {
    if (l.risk_tags & spec.risk_tags) ids.push_back(l.id);
  }
  return ids;
}

ScenarioSample sample_scenario(const Network& net, const DisasterSpec& spec, std::uint64_t seed) {
  spec.validate();
  ScenarioRng rng(seed);
  ScenarioSample sample;
  sample.seed = seed;
  sample.disaster = spec.name;
  sample.capacities.reserve(net.link_count());
  for (const auto& l : net.links()) sample.capacities.push_back(rng.uniform(l.cap_lo, l.cap_hi));

  auto risky = at_risk_links(net, spec);
  const auto hits = degraded_count(spec.hit_fraction, risky.size());
  // Partial Fisher-Yates: the first `hits` slots become a uniform subset.
  for (std::size_t i = 0; i < hits; ++i) {
    const auto j = i + static_cast<std::size_t>(rng.below(risky.size() - i));
    std::swap(risky[i], risky[j]);
    sample.capacities[static_cast<std::size_t>(risky[i])] *= (1.0 - spec.reduction);
  }

  for (const auto& l : net.links()) {
    auto& c = sample.capacities[static_cast<std::size_t>(l.id)];
    c = std::max(c, kCapacityFloorFraction * l.cap_lo);
  }
  return sample;
}

std::vector<ScenarioSample> sample_batch(const Network& net, const DisasterSpec& spec, std::uint64_t base_seed,
                                         std::size_t count, std::uint64_t first_index) {
  if (count == 0) throw Error(ErrorCode::InvalidArgument, "sample_batch: count must be >= 1");
  std::vector<ScenarioSample> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    out.push_back(sample_scenario(net, spec, child_seed(base_seed, first_index + i)));
  }
  return out;
}

ScenarioSample base_case_scenario(const Network& net) {
  ScenarioSample sample;
  sample.disaster = "base";
  sample.capacities.reserve(net.link_count());
  for (const auto& l : net.links()) sample.capacities.push_back(0.5 * (l.cap_lo + l.cap_hi));
  return sample;
}

}  // namespace freight
