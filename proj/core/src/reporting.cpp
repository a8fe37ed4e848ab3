#include "freight/reporting.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "csv.hpp"
#include "freight/error.hpp"
#include "json.hpp"

namespace freight {

void TonMileConfig::validate() const {
  const auto positive = [](double v) { return v > 0.0 && std::isfinite(v); };
  if (!positive(tons_per_truck) || !positive(tons_per_train) || !positive(tons_per_intermodal_unit) ||
      !positive(annualization_factor)) {
    throw Error(ErrorCode::InvalidArgument, "ton-mile factors must all be positive");
  }
}

CostStats cost_stats(std::span<const double> samples, double gap, double gap_sigma) {
  if (samples.size() < 2) {
    throw Error(ErrorCode::InsufficientSamples, "cost statistics need at least 2 samples");
  }
  const auto n = static_cast<double>(samples.size());
  double shifted = 0.0;
  for (const double v : samples) shifted += v - samples[0];
  CostStats s;
  s.mean = samples[0] + shifted / n;
  double sq = 0.0;
  for (const double v : samples) sq += (v - s.mean) * (v - s.mean);
  s.std_dev = std::sqrt(sq / ((n - 1.0) * n));
  const auto [lo, hi] = std::minmax_element(samples.begin(), samples.end());
  s.min = *lo;
  s.max = *hi;
  // Guard the ordering against the last-ulp rounding of the mean.
  s.mean = std::clamp(s.mean, s.min, s.max);
  s.gap = gap;
  s.gap_sigma = gap_sigma;
  return s;
}

TonMileTable ton_miles(const EquilibriumSolution& solution, const Network& net, const TonMileConfig& cfg) {
  cfg.validate();
  const auto flows = class_link_flows(solution.path_sets, net);
  TonMileTable table;
  table.annualization_factor = cfg.annualization_factor;
  for (const auto& l : net.links()) {
    const auto i = static_cast<std::size_t>(l.id);
    double tons = 0.0;
    if (l.kind == LinkKind::Road) {
      tons = flows.truck[i] * cfg.tons_per_truck + flows.intermodal[i] * cfg.tons_per_intermodal_unit;
    } else if (l.kind == LinkKind::Rail) {
      tons = flows.rail[i] * cfg.tons_per_train + flows.intermodal[i] * cfg.tons_per_intermodal_unit;
    } else {
      continue;
    }
    const double tm = tons * l.length_miles;
    const auto region = net.link_region(l.id);
    const auto r = static_cast<std::size_t>(index_of(region));
    if (l.kind == LinkKind::Road) {
      table.truck[r] += tm;
    } else {
      table.rail[r] += tm;
    }
    if (region == Region::Unassigned && tm > 0.0) table.unassigned_links.push_back(l.id);
  }
  for (std::size_t r = 0; r < kRegionCount; ++r) {
    table.truck_total += table.truck[r];
    table.rail_total += table.rail[r];
  }
  return table;
}

std::string link_flows_csv(const EquilibriumSolution& solution, const Network& net) {
  if (solution.link_flows.size() != net.link_count() || solution.capacities.size() != net.link_count() ||
      solution.link_times.size() != net.link_count()) {
    throw Error(ErrorCode::InvalidArgument, "solution does not match the network's link count");
  }
  std::string out = "link_id,kind,tail,head,state,region,flow,capacity,time_hr,vc_ratio\n";
  for (const auto& l : net.links()) {
    const auto i = static_cast<std::size_t>(l.id);
    const auto region = net.link_region(l.id);
    out += fmt::format("{},{},{},{},{},{},{},{},{},{}\n", l.id, to_string(l.kind), l.tail, l.head, l.state,
                       region == Region::Unassigned ? std::string_view{} : to_string(region),
                       detail::format_double(solution.link_flows[i]), detail::format_double(solution.capacities[i]),
                       detail::format_double(solution.link_times[i]),
                       detail::format_double(solution.link_flows[i] / solution.capacities[i]));
  }
  return out;
}

void export_link_flows(const EquilibriumSolution& solution, const Network& net, const std::filesystem::path& path) {
  detail::write_file(path, link_flows_csv(solution, net));
}

std::string cost_stats_json(const CostStats& s) {
  nlohmann::ordered_json j;
  j["unit"] = "normalized objective (hours/day)";
  j["mean"] = s.mean;
  j["std_dev"] = s.std_dev;
  j["min"] = s.min;
  j["max"] = s.max;
  j["gap"] = s.gap;
  j["gap_sigma"] = s.gap_sigma;
  return j.dump(2) + "\n";
}

std::string cost_stats_text(const CostStats& s, const std::string& label) {
  std::string out = fmt::format("{:<28}{:>16}\n", "Total cost (hour/day)", label);
  out += fmt::format("{:<28}{:>16.4f}\n", "Average", s.mean);
  out += fmt::format("{:<28}{:>16.4f}\n", "Std. dev.", s.std_dev);
  out += fmt::format("{:<28}{:>16.4f}\n", "Minimum", s.min);
  out += fmt::format("{:<28}{:>16.4f}\n", "Maximum", s.max);
  out += fmt::format("{:<28}{:>16.4f}\n", "gap", s.gap);
  out += fmt::format("{:<28}{:>16.4f}\n", "sigma_gap", s.gap_sigma);
  return out;
}

namespace {
constexpr std::array<Region, kRegionCount> kRegionOrder{Region::Midwest, Region::Northeast, Region::South,
                                                          Region::West, Region::Unassigned};
}

std::string ton_miles_json(const TonMileTable& t) {
  nlohmann::ordered_json j;
  j["annualization_factor"] = t.annualization_factor;
  for (const auto* mode : {"truck", "rail"}) {
    const auto& cells = std::string_view(mode) == "truck" ? t.truck : t.rail;
    const double total = std::string_view(mode) == "truck" ? t.truck_total : t.rail_total;
    nlohmann::ordered_json m;
    for (const auto r : kRegionOrder) {
      const double daily = cells[static_cast<std::size_t>(index_of(r))];
      m[std::string(to_string(r))] = {{"per_day", daily}, {"per_year", daily * t.annualization_factor}};
    }
    m["contiguous_us"] = {{"per_day", total}, {"per_year", total * t.annualization_factor}};
    j[mode] = std::move(m);
  }
  j["unassigned_links"] = t.unassigned_links;
  return j.dump(2) + "\n";
}

std::string ton_miles_text(const TonMileTable& t) {
  std::string out = fmt::format("{:<7}{:<16}{:>22}{:>22}\n", "Mode", "Census region", "ton-miles/day",
                                "million ton-miles/yr");
  const auto block = [&](const char* mode, const std::array<double, kRegionCount>& cells, double total) {
    for (const auto r : kRegionOrder) {
      const double daily = cells[static_cast<std::size_t>(index_of(r))];
      if (r == Region::Unassigned && daily == 0.0) continue;
      out += fmt::format("{:<7}{:<16}{:>22.2f}{:>22.4f}\n", mode, to_string(r), daily,
                         daily * t.annualization_factor / 1e6);
    }
    out += fmt::format("{:<7}{:<16}{:>22.2f}{:>22.4f}\n", mode, "contiguous_us", total,
                       total * t.annualization_factor / 1e6);
  };
  block("truck", t.truck, t.truck_total);
  block("rail", t.rail, t.rail_total);
  if (!t.unassigned_links.empty()) {
    out += fmt::format("warning: UnassignedRegion on {} loaded link(s):", t.unassigned_links.size());
    for (const auto id : t.unassigned_links) out += fmt::format(" {}", id);
    out += '\n';
  }
  return out;
}

}  // namespace freight
