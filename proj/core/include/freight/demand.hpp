#pragma once

#include <array>
#include <compare>
#include <filesystem>
#include <map>
#include <vector>

#include "freight/network.hpp"
#include "freight/types.hpp"

namespace freight {

/// (origin, destination, mode). Ordering is ascending origin, destination,
/// mode; the solver sweeps O-D triples in this order.
struct OdKey {
  NodeId origin = 0;
  NodeId destination = 0;
  Mode mode = Mode::Truck;

  auto operator<=>(const OdKey&) const = default;
};

/// How intermodal units load onto physical links. Intermodal demand keeps
/// its own unit; each intermodal unit adds `im_truck_equiv` to road links
/// and `im_rail_equiv` to rail links it crosses.
struct UnitFactors {
  double im_truck_equiv = 1.0;
  double im_rail_equiv = 1.0;

  void validate() const;
};

/// Daily demand per O-D triple. Zero entries are not stored.
class DemandTable {
 public:
  DemandTable() = default;

  /// Validates entries against the network's centroids. Duplicate keys are
  /// rejected.
  static DemandTable build(const Network& net, const std::vector<std::pair<OdKey, double>>& rows);

  const std::map<OdKey, double>& entries() const { return entries_; }
  double total(Mode mode) const { return totals_[static_cast<std::size_t>(index_of(mode))]; }
  bool empty() const { return entries_.empty(); }

 private:
  std::map<OdKey, double> entries_;
  std::array<double, kModeCount> totals_{};
};

/// Reads `origin,destination,mode,units_per_day`.
DemandTable load_demand(const std::filesystem::path& file, const Network& net);
void write_demand(const DemandTable& demand, const std::filesystem::path& file);

/// Objective normalization terms: road = sum q_truck + im_truck_equiv * sum q_intermodal,
/// rail = sum q_rail + im_rail_equiv * sum q_intermodal. A zero term means the
/// corresponding part of the objective has no demand to normalize by.
struct Denominators {
  double road = 0.0;
  double rail = 0.0;

  /// Zero terms replaced by 1, i.e. that term is left unnormalized.
  Denominators effective() const;
};

Denominators normalization_denominators(const DemandTable& demand, const UnitFactors& factors = {});

/// Confirms every demand-bearing O-D triple can be routed in its mode's
/// subnetwork (intermodal: through the terminal-bracketed layered search).
/// Throws MissingConnector when a centroid lacks the needed access
/// connector, Unreachable otherwise.
void check_connectivity(const Network& net, const DemandTable& demand);

}  // namespace freight
