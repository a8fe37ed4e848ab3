#include "freight/ue_solver.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <optional>

#include "freight/error.hpp"
#include "freight/link_performance.hpp"

namespace freight {

void SolverParams::validate() const {
  if (!(step_size > 0.0)) throw Error(ErrorCode::InvalidArgument, "solver step_size must be > 0");
  if (!(gap_tol > 0.0)) throw Error(ErrorCode::InvalidArgument, "solver gap_tol must be > 0");
  if (max_iters < 1) throw Error(ErrorCode::InvalidArgument, "solver max_iters must be >= 1");
  if (intermodal_k < 1) throw Error(ErrorCode::InvalidArgument, "solver intermodal_k must be >= 1");
  if (!(path_gap_tol >= 0.0)) throw Error(ErrorCode::InvalidArgument, "solver path_gap_tol must be >= 0");
}

double load_factor(Mode mode, const Link& link, const UnitFactors& factors) {
  if (mode != Mode::Intermodal) return 1.0;
  switch (link.kind) {
    case LinkKind::Road: return factors.im_truck_equiv;
    case LinkKind::Rail: return factors.im_rail_equiv;
    default: return 1.0;
  }
}

std::vector<double> aggregate_link_flows(const PathSet& path_sets, const Network& net, const UnitFactors& factors) {
  std::vector<double> flows(net.link_count(), 0.0);
  for (const auto& od : path_sets) {
    for (const auto& pf : od.paths) {
      for (const auto id : pf.path.links) {
        flows[static_cast<std::size_t>(id)] += load_factor(od.key.mode, net.link(id), factors) * pf.flow;
      }
    }
  }
  return flows;
}

ClassLinkFlows class_link_flows(const PathSet& path_sets, const Network& net) {
  ClassLinkFlows out;
  out.truck.assign(net.link_count(), 0.0);
  out.rail.assign(net.link_count(), 0.0);
  out.intermodal.assign(net.link_count(), 0.0);
  for (const auto& od : path_sets) {
    auto& target = od.key.mode == Mode::Truck ? out.truck : od.key.mode == Mode::Rail ? out.rail : out.intermodal;
    for (const auto& pf : od.paths) {
      for (const auto id : pf.path.links) target[static_cast<std::size_t>(id)] += pf.flow;
    }
  }
  return out;
}

namespace {

LinkState state_of(const Network& net, const Link& l, std::span<const double> capacities,
                   std::span<const double> flows) {
  LinkState s;
  s.flow = flows[static_cast<std::size_t>(l.id)];
  s.capacity = capacities[static_cast<std::size_t>(l.id)];
  if (l.kind == LinkKind::Rail) s.opposing_flow = flows[static_cast<std::size_t>(net.reverse(l.id))];
  return s;
}

}  // namespace

std::vector<double> link_times(const Network& net, std::span<const double> capacities,
                               std::span<const double> link_flows) {
  std::vector<double> times(net.link_count());
  for (const auto& l : net.links()) {
    times[static_cast<std::size_t>(l.id)] = link_time(l, state_of(net, l, capacities, link_flows));
  }
  return times;
}

double objective_value(const Network& net, std::span<const double> capacities, std::span<const double> link_flows,
                       const Denominators& denoms) {
  double road = 0.0;
  double rail = 0.0;
  for (const auto& l : net.links()) {
    const double term = beckmann_term(l, state_of(net, l, capacities, link_flows));
    (l.kind == LinkKind::Rail ? rail : road) += term;
  }
  const auto scaled = [](double sum, double denom, const char* which) {
    if (sum == 0.0) return 0.0;
    if (!(denom > 0.0)) {
      throw Error(ErrorCode::ZeroDenominator, std::string(which) + " objective term is nonzero but has no demand");
    }
    return sum / denom;
  };
  return scaled(road, denoms.road, "road") + scaled(rail, denoms.rail, "rail");
}

double relative_gap(double prev, double curr) {
  if (prev == 0.0) return curr == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
  return std::abs(prev - curr) / std::abs(prev);
}

double max_relative_excess_cost(const PathSet& path_sets, std::span<const double> times) {
  double worst = 0.0;
  for (const auto& od : path_sets) {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& pf : od.paths) best = std::min(best, path_cost(pf.path, times));
    for (const auto& pf : od.paths) {
      if (pf.flow <= 1e-6 * od.demand) continue;
      const double d = path_cost(pf.path, times);
      if (best > 0.0) worst = std::max(worst, (d - best) / best);
    }
  }
  return worst;
}

namespace {

/// Mutable state of one gradient-projection run.
class GpRun {
 public:
  GpRun(const Network& net, std::span<const ScenarioSample> scenarios, const DemandTable& demand,
        const SolverParams& params, const UnitFactors& factors)
      : net_(net),
        scenarios_(scenarios),
        params_(params),
        factors_(factors),
        denoms_(normalization_denominators(demand, factors).effective()) {
    for (const auto& sc : scenarios_) {
      if (sc.capacities.size() != net.link_count()) {
        throw Error(ErrorCode::InvalidArgument, "scenario capacity vector has wrong length");
      }
      for (std::size_t i = 0; i < sc.capacities.size(); ++i) {
        if (!(sc.capacities[i] > 0.0) || !std::isfinite(sc.capacities[i])) {
          throw Error(ErrorCode::NonFiniteCost, "link=" + std::to_string(i) + ": capacity is not a positive number");
        }
      }
    }
    for (const auto& [key, units] : demand.entries()) sets_.push_back(OdPaths{key, units, {}});
    flows_.assign(net.link_count(), 0.0);
  }

  EquilibriumSolution solve();

 private:
  double time_of(LinkId id) const;
  double derivative_of(LinkId id) const;
  std::vector<double> all_times() const;
  double objective() const;

  void initialize();
  void sweep(double alpha);
  void generate_columns(OdPaths& od, std::array<std::optional<PathFinder>, kModeCount>& trees,
                        std::span<const double> times);
  void equilibrate(OdPaths& od, double alpha);
  void shift(const OdPaths& od, const Path& path, double delta);
  double curvature(Mode mode, std::span<const LinkId> path_k, std::span<const LinkId> path_best) const;
  void drop_empty_paths();

  const Network& net_;
  std::span<const ScenarioSample> scenarios_;
  SolverParams params_;
  UnitFactors factors_;
  Denominators denoms_;
  PathSet sets_;
  std::vector<double> flows_;
};

double GpRun::time_of(LinkId id) const {
  const Link& l = net_.link(id);
  double sum = 0.0;
  for (const auto& sc : scenarios_) sum += link_time(l, state_of(net_, l, sc.capacities, flows_));
  return sum / static_cast<double>(scenarios_.size());
}

double GpRun::derivative_of(LinkId id) const {
  const Link& l = net_.link(id);
  double sum = 0.0;
  for (const auto& sc : scenarios_) sum += link_time_derivative(l, state_of(net_, l, sc.capacities, flows_));
  return sum / static_cast<double>(scenarios_.size());
}

std::vector<double> GpRun::all_times() const {
  std::vector<double> times(net_.link_count());
  for (const auto& l : net_.links()) {
    const double t = time_of(l.id);
    if (!std::isfinite(t)) {
      throw Error(ErrorCode::NonFiniteCost, "link=" + std::to_string(l.id) + ": travel time is not finite");
    }
    times[static_cast<std::size_t>(l.id)] = t;
  }
  return times;
}

double GpRun::objective() const {
  double sum = 0.0;
  for (const auto& sc : scenarios_) sum += objective_value(net_, sc.capacities, flows_, denoms_);
  const double value = sum / static_cast<double>(scenarios_.size());
  if (!std::isfinite(value)) throw Error(ErrorCode::NonFiniteCost, "objective is not finite");
  return value;
}

// Second derivative of d_k - d_best along the shift of one unit from the best
// path to k. Without rail twins on the two paths this is the sum of link
// derivatives over the symmetric difference; a rail link and its twin share
// X = x + x', so a path using both sees the coupled slope.
double GpRun::curvature(Mode mode, std::span<const LinkId> path_k, std::span<const LinkId> path_best) const {
  std::vector<std::pair<LinkId, double>> net_use;  // link -> times on k minus times on best
  std::size_t i = 0, j = 0;
  while (i < path_k.size() || j < path_best.size()) {
    const bool take_k = j == path_best.size() || (i < path_k.size() && path_k[i] <= path_best[j]);
    const LinkId id = take_k ? path_k[i] : path_best[j];
    double e = 0.0;
    while (i < path_k.size() && path_k[i] == id) e += 1.0, ++i;
    while (j < path_best.size() && path_best[j] == id) e -= 1.0, ++j;
    if (e != 0.0) net_use.emplace_back(id, e);
  }
  const auto use_of = [&](LinkId id) {
    const auto it = std::lower_bound(net_use.begin(), net_use.end(), std::pair{id, -1e300});
    return it != net_use.end() && it->first == id ? it->second : 0.0;
  };
  double s = 0.0;
  for (const auto& [id, e] : net_use) {
    const Link& l = net_.link(id);
    const double along = l.kind == LinkKind::Rail ? e + use_of(net_.reverse(id)) : e;
    s += e * load_factor(mode, l, factors_) * along * derivative_of(id);
  }
  return s;
}

void GpRun::shift(const OdPaths& od, const Path& path, double delta) {
  if (delta == 0.0) return;
  for (const auto id : path.links) {
    flows_[static_cast<std::size_t>(id)] += load_factor(od.key.mode, net_.link(id), factors_) * delta;
  }
}

void GpRun::initialize() {
  // All-or-nothing on free-flow times.
  const auto times = all_times();
  std::array<std::optional<PathFinder>, kModeCount> trees;
  NodeId origin = -1;
  for (auto& od : sets_) {
    if (od.key.origin != origin) {
      for (auto& t : trees) t.reset();
      origin = od.key.origin;
    }
    auto& tree = trees[static_cast<std::size_t>(index_of(od.key.mode))];
    if (!tree) {
      tree.emplace(net_);
      tree->build_tree(times, od.key.mode, origin);
    }
    od.paths.push_back(PathFlow{tree->path_to(od.key.destination), od.demand});
  }
  flows_ = aggregate_link_flows(sets_, net_, factors_);
}

void GpRun::generate_columns(OdPaths& od, std::array<std::optional<PathFinder>, kModeCount>& trees,
                             std::span<const double> times) {
  auto& tree = trees[static_cast<std::size_t>(index_of(od.key.mode))];
  if (!tree) {
    tree.emplace(net_);
    tree->build_tree(times, od.key.mode, od.key.origin);
  }
  const auto add_if_new = [&](Path p) {
    const bool known = std::any_of(od.paths.begin(), od.paths.end(), [&](const PathFlow& pf) { return pf.path == p; });
    if (!known) od.paths.push_back(PathFlow{std::move(p), 0.0});
  };

  Path best = tree->path_to(od.key.destination);
  if (od.key.mode != Mode::Intermodal || params_.intermodal_k == 1) {
    add_if_new(std::move(best));
    return;
  }

  std::vector<LinkId> banned;
  PathFinder extra(net_);
  Path current = std::move(best);
  for (int k = 0; k < params_.intermodal_k; ++k) {
    const auto entry = std::find_if(current.links.begin(), current.links.end(),
                                    [&](LinkId id) { return net_.link(id).kind == LinkKind::Terminal; });
    banned.push_back(*entry);
    add_if_new(std::move(current));
    if (k + 1 == params_.intermodal_k) break;
    extra.build_tree(times, Mode::Intermodal, od.key.origin, banned);
    if (!extra.reachable(od.key.destination)) break;
    current = extra.path_to(od.key.destination);
  }
}

void GpRun::equilibrate(OdPaths& od, double alpha) {
  if (od.paths.size() < 2) return;

  // Path times at the current (Gauss-Seidel) flows.
  std::vector<double> cost(od.paths.size());
  for (std::size_t k = 0; k < od.paths.size(); ++k) {
    double d = 0.0;
    for (const auto id : od.paths[k].path.links) d += time_of(id);
    cost[k] = d;
  }
  const auto best = static_cast<std::size_t>(std::min_element(cost.begin(), cost.end()) - cost.begin());

  std::vector<LinkId> best_links = od.paths[best].path.links;
  std::sort(best_links.begin(), best_links.end());

  std::vector<double> updated(od.paths.size());
  double moved_total = 0.0;
  std::vector<LinkId> own;
  for (std::size_t k = 0; k < od.paths.size(); ++k) {
    if (k == best) continue;
    const double f = od.paths[k].flow;
    const double excess = cost[k] - cost[best];
    double next = f;
    if (f > 0.0 && excess > 0.0) {
      own = od.paths[k].path.links;
      std::sort(own.begin(), own.end());
      const double second = curvature(od.key.mode, own, best_links);
      next = second < 1e-12 ? 0.0 : std::max(0.0, f - alpha / second * excess);
    }
    updated[k] = next;
    moved_total += next;
  }
  updated[best] = od.demand - moved_total;

  for (std::size_t k = 0; k < od.paths.size(); ++k) {
    const double delta = updated[k] - od.paths[k].flow;
    od.paths[k].flow = updated[k];
    shift(od, od.paths[k].path, delta);
  }
}

void GpRun::sweep(double alpha) {
  std::array<std::optional<PathFinder>, kModeCount> trees;
  std::vector<double> times;
  NodeId origin = -1;
  for (auto& od : sets_) {
    if (od.key.origin != origin) {
      // Trees are rebuilt per origin on the times current at that point.
      origin = od.key.origin;
      for (auto& t : trees) t.reset();
      times = all_times();
    }
    generate_columns(od, trees, times);
    equilibrate(od, alpha);
  }
  drop_empty_paths();
  flows_ = aggregate_link_flows(sets_, net_, factors_);
}

void GpRun::drop_empty_paths() {
  for (auto& od : sets_) {
    std::erase_if(od.paths, [](const PathFlow& pf) { return pf.flow <= 0.0; });
  }
}

EquilibriumSolution GpRun::solve() {
  EquilibriumSolution sol;
  initialize();
  double prev = objective();
  sol.initial_objective = prev;

  bool converged = false;
  int iteration = 0;
  double gap = std::numeric_limits<double>::infinity();
  while (iteration < params_.max_iters) {
    ++iteration;
    double alpha = params_.step_size;
    double current = 0.0;
    if (params_.backtracking) {
      const PathSet saved_sets = sets_;
      const std::vector<double> saved_flows = flows_;
      bool accepted = false;
      for (int halving = 0; halving < 40; ++halving) {
        sweep(alpha);
        current = objective();
        if (current <= prev + 1e-9 * std::abs(prev)) {
          accepted = true;
          break;
        }
        sets_ = saved_sets;
        flows_ = saved_flows;
        alpha *= 0.5;
      }
      if (!accepted) {
        // No step size lowers the objective; keep the previous iterate.
        current = prev;
        gap = 0.0;
        sol.history.push_back({iteration, current, gap, 0.0});
        break;
      }
    } else {
      sweep(alpha);
      current = objective();
    }

    gap = relative_gap(prev, current);
    sol.history.push_back({iteration, current, gap, alpha});
    prev = current;
    if (gap <= params_.gap_tol) {
      if (params_.path_gap_tol <= 0.0 || max_relative_excess_cost(sets_, all_times()) <= params_.path_gap_tol) {
        converged = true;
        break;
      }
    }
  }

  sol.path_sets = std::move(sets_);
  sol.link_flows = flows_;
  sol.capacities.assign(net_.link_count(), 0.0);
  for (const auto& sc : scenarios_) {
    for (std::size_t i = 0; i < sol.capacities.size(); ++i) sol.capacities[i] += sc.capacities[i];
  }
  for (auto& c : sol.capacities) c /= static_cast<double>(scenarios_.size());
  sol.link_times = all_times();
  sol.objective = prev;
  sol.relative_gap = gap;
  sol.iterations = iteration;
  sol.converged = converged;
  sol.scenario_seed = scenarios_.front().seed;
  return sol;
}

}  // namespace

EquilibriumSolution gp_solve(const Network& net, const ScenarioSample& scenario, const DemandTable& demand,
                             const SolverParams& params, const UnitFactors& factors) {
  return gp_solve(net, std::span<const ScenarioSample>(&scenario, 1), demand, params, factors);
}

EquilibriumSolution gp_solve(const Network& net, std::span<const ScenarioSample> scenarios, const DemandTable& demand,
                             const SolverParams& params, const UnitFactors& factors) {
  params.validate();
  factors.validate();
  if (scenarios.empty()) throw Error(ErrorCode::InvalidArgument, "gp_solve needs at least one scenario");
  GpRun run(net, scenarios, demand, params, factors);
  return run.solve();
}

}  // namespace freight
