#pragma once

#include <array>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "freight/network.hpp"
#include "freight/ue_solver.hpp"

namespace freight {

struct TonMileConfig {
  double tons_per_truck = 1.0;
  double tons_per_train = 1.0;
  double tons_per_intermodal_unit = 1.0;
  double annualization_factor = 365.0;  // days per year

  void validate() const;
};

/// Table-3 style cost summary, in normalized objective units (hours/day).
struct CostStats {
  double mean = 0.0;
  double std_dev = 0.0;  // standard deviation of the mean, sqrt(sum (x-mean)^2 / ((n-1) n))
  double min = 0.0;
  double max = 0.0;
  double gap = 0.0;
  double gap_sigma = 0.0;
};

CostStats cost_stats(std::span<const double> objective_samples, double gap, double gap_sigma);

/// Ton-miles by census region (rows, Unassigned last) and carrying mode.
/// Intermodal tonnage is attributed to the mode of the link that carries it.
struct TonMileTable {
  std::array<double, kRegionCount> truck{};  // per day
  std::array<double, kRegionCount> rail{};
  double truck_total = 0.0;  // all regions including Unassigned
  double rail_total = 0.0;
  double annualization_factor = 365.0;
  std::vector<LinkId> unassigned_links;  // loaded road/rail links with no region

  double truck_annual(Region r) const { return truck[static_cast<std::size_t>(index_of(r))] * annualization_factor; }
  double rail_annual(Region r) const { return rail[static_cast<std::size_t>(index_of(r))] * annualization_factor; }
};

TonMileTable ton_miles(const EquilibriumSolution& solution, const Network& net, const TonMileConfig& cfg);

/// Writes link_id,kind,tail,head,state,region,flow,capacity,time_hr,vc_ratio
/// in ascending link id.
void export_link_flows(const EquilibriumSolution& solution, const Network& net, const std::filesystem::path& path);
std::string link_flows_csv(const EquilibriumSolution& solution, const Network& net);

std::string cost_stats_json(const CostStats& stats);
std::string cost_stats_text(const CostStats& stats, const std::string& label);
std::string ton_miles_json(const TonMileTable& table);
std::string ton_miles_text(const TonMileTable& table);

}  // namespace freight
