#include "commands.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <ostream>
#include <sstream>

#include <fmt/format.h>

#include "freight/error.hpp"
#include "freight/network.hpp"
#include "freight/reporting.hpp"
#include "freight/saa.hpp"
#include "freight/scenario.hpp"
#include "freight/solution_io.hpp"
#include "freight/ue_solver.hpp"

namespace freight::cli {

namespace fs = std::filesystem;

namespace {

std::string read_text(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, "cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text(const fs::path& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::Io, "cannot write " + path.string());
  out << text;
  if (!out) throw Error(ErrorCode::Io, "write failed for " + path.string());
}

void ensure_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw Error(ErrorCode::Io, "cannot create " + dir.string() + ": " + ec.message());
}

struct Inputs {
  Network net;
  DemandTable demand;
};

Inputs load_inputs(const RunConfig& cfg) {
  Inputs in;
  in.net = load_network(cfg.nodes, cfg.links);
  in.demand = load_demand(cfg.demand, in.net);
  check_connectivity(in.net, in.demand);
  return in;
}

std::string convergence_csv(const EquilibriumSolution& s) {
  std::string out = "iteration,objective,relative_gap,step_size\n";
  for (const auto& h : s.history) {
    out += fmt::format("{},{},{},{}\n", h.iteration, h.objective, h.relative_gap, h.step_size);
  }
  return out;
}

void write_ton_miles(const EquilibriumSolution& s, const Network& net, const TonMileConfig& tm, const fs::path& dir,
                     Streams io) {
  const auto table = ton_miles(s, net, tm);
  write_text(dir / "ton_miles.json", ton_miles_json(table));
  write_text(dir / "ton_miles.txt", ton_miles_text(table));
  if (!table.unassigned_links.empty()) {
    io.err << fmt::format("warning: UnassignedRegion: {} loaded link(s) have no census region\n",
                          table.unassigned_links.size());
  }
}

CostStats chosen_cost_stats(const SaaReport& r) {
  const auto& c = r.candidates.at(static_cast<std::size_t>(r.chosen));
  return cost_stats(c.objectives, c.gap, std::sqrt(c.gap_var));
}

void write_cost_stats(const SaaReport& r, const fs::path& dir) {
  const auto stats = chosen_cost_stats(r);
  write_text(dir / "cost_stats.json", cost_stats_json(stats));
  write_text(dir / "cost_stats.txt", cost_stats_text(stats, r.config.disaster.name));
}

template <class Fn>
int guarded(Streams io, Fn&& fn) {
  try {
    return fn();
  } catch (const std::exception& e) {
    io.err << "error: " << e.what() << '\n';
    return exit_code_for(e);
  }
}

}  // namespace

int exit_code_for(const std::exception& e) {
  if (const auto* fe = dynamic_cast<const Error*>(&e)) {
    switch (classify(fe->code())) {
      case ErrorClass::Validation: return kValidationFailure;
      case ErrorClass::Solver: return kSolverFailure;
      case ErrorClass::Io: return kIoFailure;
    }
  }
  if (dynamic_cast<const fs::filesystem_error*>(&e) != nullptr) return kIoFailure;
  return kSolverFailure;
}

int cmd_validate(const RunConfig& cfg, Streams io) {
  try {
    const auto in = load_inputs(cfg);
    const auto c = in.net.counts();
    io.out << fmt::format("nodes {} (centroid {}, road {}, rail {})\n", c.nodes, c.nodes_by_kind[0],
                          c.nodes_by_kind[1], c.nodes_by_kind[2]);
    io.out << fmt::format("links {} (road {}, rail {}, terminal {}, connector {})\n", c.links, c.links_by_kind[0],
                          c.links_by_kind[1], c.links_by_kind[2], c.links_by_kind[3]);
    io.out << fmt::format("demand od_triples {} truck {} rail {} intermodal {} (units/day)\n",
                          in.demand.entries().size(), in.demand.total(Mode::Truck), in.demand.total(Mode::Rail),
                          in.demand.total(Mode::Intermodal));
    io.out << "ok\n";
    return kOk;
  } catch (const Error& e) {
    io.err << "error: " << e.what() << '\n';
    // Reachability is a property of the input here, not a solver outcome.
    return classify(e.code()) == ErrorClass::Io ? kIoFailure : kValidationFailure;
  } catch (const std::exception& e) {
    io.err << "error: " << e.what() << '\n';
    return exit_code_for(e);
  }
}

int cmd_assign(const RunConfig& cfg, const AssignOptions& opts, Streams io) {
  return guarded(io, [&] {
    const auto in = load_inputs(cfg);
    const auto scenario = opts.base_case ? base_case_scenario(in.net)
                                         : sample_scenario(in.net, cfg.saa.disaster, cfg.scenario_seed);
    const auto sol = gp_solve(in.net, scenario, in.demand, cfg.saa.solver, cfg.saa.factors);
    ensure_dir(cfg.output_dir);
    export_link_flows(sol, in.net, cfg.output_dir / "link_flows.csv");
    write_text(cfg.output_dir / "solution.json", solution_to_json(sol));
    write_text(cfg.output_dir / "convergence.csv", convergence_csv(sol));
    write_ton_miles(sol, in.net, cfg.tonmiles, cfg.output_dir, io);
    io.out << fmt::format("scenario {} iterations {} objective {:.6f} relative_gap {:.3e} {}\n",
                          opts.base_case ? std::string("base") : std::to_string(cfg.scenario_seed), sol.iterations,
                          sol.objective, sol.relative_gap, sol.converged ? "converged" : "not converged");
    if (!sol.converged) {
      io.err << "warning: MaxItersExceeded: stopped before reaching gap_tol\n";
    }
    return static_cast<int>(kOk);
  });
}

int cmd_saa(const RunConfig& cfg, Streams io) {
  return guarded(io, [&] {
    as_config_error([&] { cfg.saa.validate(); });
    const auto in = load_inputs(cfg);
    const auto t0 = std::chrono::steady_clock::now();
    const auto result = run_saa(in.net, in.demand, cfg.saa);
    const double runtime = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    auto report = result.report;
    report.runtime_sec = runtime;

    ensure_dir(cfg.output_dir);
    write_text(cfg.output_dir / "saa_report.json", saa_report_to_json(report));
    write_cost_stats(report, cfg.output_dir);
    const auto& chosen = result.chosen().solution;
    export_link_flows(chosen, in.net, cfg.output_dir / "link_flows.csv");
    write_text(cfg.output_dir / "solution.json", solution_to_json(chosen));
    write_ton_miles(chosen, in.net, cfg.tonmiles, cfg.output_dir, io);
    write_text(cfg.output_dir / "run_log.json",
               fmt::format("{{\n  \"runtime_sec\": {},\n  \"threads\": {}\n}}\n", runtime, cfg.saa.threads));

    const auto& c = report.candidates[static_cast<std::size_t>(report.chosen)];
    io.out << fmt::format("candidates {} chosen {} lower_bound {:.6f} estimate {:.6f} gap {:.6f} sigma_gap {:.6f}\n",
                          report.candidates.size(), report.chosen, report.lower_bound_mean, c.mean, c.gap,
                          std::sqrt(c.gap_var));
    io.out << fmt::format("runtime_sec {:.3f}\n", runtime);
    return static_cast<int>(kOk);
  });
}

int cmd_report(const RunConfig& cfg, const ReportOptions& opts, Streams io) {
  return guarded(io, [&] {
    const auto from = opts.from.empty() ? cfg.output_dir : opts.from;
    const auto report_file = from / "saa_report.json";
    const auto solution_file = from / "solution.json";
    const bool has_report = fs::exists(report_file);
    if (!has_report && !fs::exists(solution_file)) {
      throw Error(ErrorCode::Io, "no saa_report.json or solution.json in " + from.string());
    }
    ensure_dir(cfg.output_dir);
    if (has_report) {
      const auto report = saa_report_from_json(read_text(report_file), report_file.string());
      write_cost_stats(report, cfg.output_dir);
      io.out << cost_stats_text(chosen_cost_stats(report), report.config.disaster.name);
    }
    if (fs::exists(solution_file)) {
      const auto sol = solution_from_json(read_text(solution_file), solution_file.string());
      const auto net = load_network(cfg.nodes, cfg.links);
      export_link_flows(sol, net, cfg.output_dir / "link_flows.csv");
      write_ton_miles(sol, net, cfg.tonmiles, cfg.output_dir, io);
      io.out << ton_miles_text(ton_miles(sol, net, cfg.tonmiles));
    }
    return static_cast<int>(kOk);
  });
}

int cmd_sample(const RunConfig& cfg, const SampleOptions& opts, Streams io) {
  return guarded(io, [&] {
    if (opts.count < 1) throw Error(ErrorCode::InvalidArgument, "--count must be >= 1");
    const auto net = load_network(cfg.nodes, cfg.links);
    std::vector<ScenarioSample> samples;
    if (opts.base_case) {
      samples.push_back(base_case_scenario(net));
    } else if (opts.count == 1) {
      samples.push_back(sample_scenario(net, cfg.saa.disaster, cfg.scenario_seed));
    } else {
      samples = sample_batch(net, cfg.saa.disaster, cfg.saa.base_seed, static_cast<std::size_t>(opts.count));
    }
    std::string csv = "scenario,seed,link_id,capacity\n";
    for (std::size_t s = 0; s < samples.size(); ++s) {
      for (std::size_t i = 0; i < samples[s].capacities.size(); ++i) {
        csv += fmt::format("{},{},{},{}\n", s, samples[s].seed, i, samples[s].capacities[i]);
      }
    }
    ensure_dir(cfg.output_dir);
    write_text(cfg.output_dir / "capacities.csv", csv);
    io.out << fmt::format("wrote {} scenario(s) x {} links to {}\n", samples.size(), net.link_count(),
                          (cfg.output_dir / "capacities.csv").string());
    return static_cast<int>(kOk);
  });
}

}  // namespace freight::cli
