#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "freight/demand.hpp"
#include "freight/network.hpp"
#include "freight/scenario.hpp"
#include "freight/shortest_path.hpp"

namespace freight {

struct SolverParams {
  double step_size = 1.0;  // GP step alpha
  double gap_tol = 1e-4;   // relative objective change between iterations
  int max_iters = 500;
  /// Halve the step until the iteration does not raise the objective.
  bool backtracking = false;
  /// Intermodal columns generated per O-D per iteration. Beyond the first,
  /// each extra column is the best layered path whose entry terminal differs
  /// from those of the columns already generated in that iteration.
  int intermodal_k = 1;
  /// Optional second stopping test: largest relative excess cost of a used
  /// path over its O-D minimum. 0 disables it.
  double path_gap_tol = 0.0;

  void validate() const;
};

struct PathFlow {
  Path path;
  double flow = 0.0;
};

/// Working path set K of one O-D triple.
struct OdPaths {
  OdKey key;
  double demand = 0.0;
  std::vector<PathFlow> paths;
};

using PathSet = std::vector<OdPaths>;

struct IterationRecord {
  int iteration = 0;
  double objective = 0.0;
  double relative_gap = 0.0;
  double step_size = 0.0;
};

struct EquilibriumSolution {
  PathSet path_sets;               // ascending OdKey
  std::vector<double> link_flows;  // vehicle units per link
  std::vector<double> capacities;  // capacities the times were computed with (mean over scenarios)
  std::vector<double> link_times;  // link times at link_flows (mean over scenarios)
  double objective = 0.0;          // normalized objective (mean over scenarios)
  double relative_gap = 0.0;
  int iterations = 0;
  bool converged = false;  // false: max_iters hit or backtracking stalled
  std::uint64_t scenario_seed = 0;
  double initial_objective = 0.0;  // after the all-or-nothing start
  std::vector<IterationRecord> history;
};

/// Per-class link loads in each class's own unit (no unit factors applied).
struct ClassLinkFlows {
  std::vector<double> truck;
  std::vector<double> rail;
  std::vector<double> intermodal;
};

/// Load contributed to `link` by one unit of `mode` flow.
double load_factor(Mode mode, const Link& link, const UnitFactors& factors);

/// Link flows from path flows: truck and rail flows load 1:1; intermodal
/// flow loads road links by im_truck_equiv, rail links by im_rail_equiv and
/// terminals/connectors 1:1.
std::vector<double> aggregate_link_flows(const PathSet& path_sets, const Network& net,
                                         const UnitFactors& factors = {});

ClassLinkFlows class_link_flows(const PathSet& path_sets, const Network& net);

/// Link times at the given flows; rail links see their twin's flow as
/// opposing flow.
std::vector<double> link_times(const Network& net, std::span<const double> capacities,
                               std::span<const double> link_flows);

/// Normalized objective: road Beckmann terms / road denominator, rail terms
/// / rail denominator, terminal and connector terms / road denominator. Rail
/// terms integrate up to own + opposing flow on every directed rail link.
/// Throws ZeroDenominator when a denominator is <= 0 but its terms are not 0.
double objective_value(const Network& net, std::span<const double> capacities, std::span<const double> link_flows,
                       const Denominators& denoms);

/// |prev - curr| / |prev|; 0 when both are 0, +inf when only prev is 0.
double relative_gap(double prev, double curr);

/// Largest (d_k - d_min) / d_min over paths with flow > 1e-6 * demand.
double max_relative_excess_cost(const PathSet& path_sets, std::span<const double> times);

/// Path-based gradient projection with column generation for one scenario.
EquilibriumSolution gp_solve(const Network& net, const ScenarioSample& scenario, const DemandTable& demand,
                             const SolverParams& params, const UnitFactors& factors = {});

/// Sample-average variant: link times, derivatives and the objective are
/// means over the scenarios. Reduces to the single-scenario solve for one.
EquilibriumSolution gp_solve(const Network& net, std::span<const ScenarioSample> scenarios, const DemandTable& demand,
                             const SolverParams& params, const UnitFactors& factors = {});

}  // namespace freight
