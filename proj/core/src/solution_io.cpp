#include "freight/solution_io.hpp"

#include <limits>

#include "freight/error.hpp"
#include "json.hpp"

namespace freight {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

// Non-finite doubles serialize as null.
double number_or_inf(const json& v) {
  return v.is_null() ? std::numeric_limits<double>::infinity() : v.get<double>();
}

}  // namespace

std::string solution_to_json(const EquilibriumSolution& s) {
  ordered_json j;
  j["scenario_seed"] = s.scenario_seed;
  j["objective"] = s.objective;
  j["initial_objective"] = s.initial_objective;
  j["relative_gap"] = s.relative_gap;
  j["iterations"] = s.iterations;
  j["converged"] = s.converged;
  ordered_json history = ordered_json::array();
  for (const auto& h : s.history) {
    history.push_back({{"iteration", h.iteration},
                       {"objective", h.objective},
                       {"relative_gap", h.relative_gap},
                       {"step_size", h.step_size}});
  }
  j["history"] = std::move(history);
  j["link_flows"] = s.link_flows;
  j["capacities"] = s.capacities;
  j["link_times"] = s.link_times;
  ordered_json sets = ordered_json::array();
  for (const auto& od : s.path_sets) {
    ordered_json o;
    o["origin"] = od.key.origin;
    o["destination"] = od.key.destination;
    o["mode"] = std::string(to_string(od.key.mode));
    o["demand"] = od.demand;
    ordered_json paths = ordered_json::array();
    for (const auto& pf : od.paths) paths.push_back({{"flow", pf.flow}, {"links", pf.path.links}});
    o["paths"] = std::move(paths);
    sets.push_back(std::move(o));
  }
  j["path_sets"] = std::move(sets);
  return j.dump(2) + "\n";
}

EquilibriumSolution solution_from_json(std::string_view text, const std::string& source) {
  try {
    const auto j = json::parse(text);
    EquilibriumSolution s;
    s.scenario_seed = j.at("scenario_seed").get<std::uint64_t>();
    s.objective = j.at("objective").get<double>();
    s.initial_objective = j.value("initial_objective", 0.0);
    s.relative_gap = number_or_inf(j.at("relative_gap"));
    s.iterations = j.at("iterations").get<int>();
    s.converged = j.at("converged").get<bool>();
    for (const auto& h : j.at("history")) {
      s.history.push_back({h.at("iteration").get<int>(), h.at("objective").get<double>(),
                           number_or_inf(h.at("relative_gap")), h.at("step_size").get<double>()});
    }
    s.link_flows = j.at("link_flows").get<std::vector<double>>();
    s.capacities = j.at("capacities").get<std::vector<double>>();
    s.link_times = j.at("link_times").get<std::vector<double>>();
    for (const auto& o : j.at("path_sets")) {
      OdPaths od;
      od.key.origin = o.at("origin").get<NodeId>();
      od.key.destination = o.at("destination").get<NodeId>();
      od.key.mode = parse_mode(o.at("mode").get<std::string>());
      od.demand = o.at("demand").get<double>();
      for (const auto& p : o.at("paths")) {
        PathFlow pf;
        pf.flow = p.at("flow").get<double>();
        pf.path.mode = od.key.mode;
        pf.path.links = p.at("links").get<std::vector<LinkId>>();
        od.paths.push_back(std::move(pf));
      }
      s.path_sets.push_back(std::move(od));
    }
    return s;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::Parse, source + ": " + e.what());
  }
}

}  // namespace freight
