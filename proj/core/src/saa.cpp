#include "freight/saa.hpp"

#include <chrono>
#include <cmath>

#include "freight/error.hpp"
#include "json.hpp"
#include "parallel.hpp"

namespace freight {

void SaaConfig::validate() const {
  if (M < 2) throw Error(ErrorCode::InsufficientSamples, "SAA needs M >= 2 candidate problems, got " + std::to_string(M));
  if (N < 1) throw Error(ErrorCode::InvalidArgument, "SAA needs N >= 1");
  if (N_prime < 2) {
    throw Error(ErrorCode::InsufficientSamples, "SAA needs N' >= 2 evaluation scenarios, got " + std::to_string(N_prime));
  }
  if (threads < 1) throw Error(ErrorCode::InvalidArgument, "threads must be >= 1");
  solver.validate();
  disaster.validate();
  factors.validate();
}

MeanVariance mean_and_variance(std::span<const double> values) {
  if (values.size() < 2) {
    throw Error(ErrorCode::InsufficientSamples, "need at least 2 samples, got " + std::to_string(values.size()));
  }
  const auto n = static_cast<double>(values.size());
  // Shifted by the first value so equal samples give exactly their value and 0.
  double shifted = 0.0;
  for (const double v : values) shifted += v - values[0];
  const double mean = values[0] + shifted / n;
  double sq = 0.0;
  for (const double v : values) sq += (v - mean) * (v - mean);
  return {mean, sq / ((n - 1.0) * n)};
}

std::pair<double, CandidateFlow> solve_saa_problem(const Network& net, const DemandTable& demand,
                                                   std::span<const ScenarioSample> scenarios,
                                                   const SolverParams& solver, const UnitFactors& factors,
                                                   int index) {
  if (scenarios.empty()) throw Error(ErrorCode::InsufficientSamples, "SAA problem needs N >= 1 scenarios");
  CandidateFlow candidate;
  candidate.index = index;
  candidate.solution = gp_solve(net, scenarios, demand, solver, factors);
  const double z = candidate.solution.objective;
  return {z, std::move(candidate)};
}

MeanVariance lower_bound_stats(std::span<const double> z_values) { return mean_and_variance(z_values); }

std::vector<double> candidate_objectives(const Network& net, const CandidateFlow& flow,
                                         std::span<const ScenarioSample> eval_scenarios, const Denominators& denoms) {
  std::vector<double> out;
  out.reserve(eval_scenarios.size());
  for (const auto& sc : eval_scenarios) {
    out.push_back(objective_value(net, sc.capacities, flow.solution.link_flows, denoms));
  }
  return out;
}

MeanVariance evaluate_candidate(const Network& net, const DemandTable& demand, const CandidateFlow& flow,
                                std::span<const ScenarioSample> eval_scenarios, const UnitFactors& factors) {
  if (eval_scenarios.size() < 2) {
    throw Error(ErrorCode::InsufficientSamples, "candidate evaluation needs N' >= 2 scenarios");
  }
  const auto denoms = normalization_denominators(demand, factors).effective();
  const auto q = candidate_objectives(net, flow, eval_scenarios, denoms);
  return mean_and_variance(q);
}

namespace {

double sup_distance(const std::vector<double>& a, const std::vector<double>& b) {
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::abs(a[i] - b[i]));
  return worst;
}

}  // namespace

SaaResult run_saa(const Network& net, const DemandTable& demand, const SaaConfig& config) {
  config.validate();
  const auto started = std::chrono::steady_clock::now();
  const auto M = static_cast<std::size_t>(config.M);
  const auto N = static_cast<std::size_t>(config.N);
  const auto NP = static_cast<std::size_t>(config.N_prime);

  const auto training = sample_batch(net, config.disaster, config.base_seed, M * N, 0);
  const auto evaluation = sample_batch(net, config.disaster, config.base_seed, NP, M * N);

  SaaResult result;
  auto& report = result.report;
  report.config = config;
  for (const auto& s : training) report.training_seeds.push_back(s.seed);
  for (const auto& s : evaluation) report.evaluation_seeds.push_back(s.seed);

  // Step 1: M independent SAA problems.
  report.z_values.assign(M, 0.0);
  result.candidates.resize(M);
  detail::parallel_for(M, config.threads, [&](std::size_t m) {
    const std::span<const ScenarioSample> slice(training.data() + m * N, N);
    auto [z, candidate] = solve_saa_problem(net, demand, slice, config.solver, config.factors, static_cast<int>(m));
    report.z_values[m] = z;
    result.candidates[m] = std::move(candidate);
  });

  // Step 2: lower bound.
  const auto lb = lower_bound_stats(report.z_values);
  report.lower_bound_mean = lb.mean;
  report.lower_bound_var = lb.variance;

  // Step 3: evaluate each distinct candidate on the common N' scenarios.
  report.candidates.resize(M);
  std::vector<std::size_t> unique;
  for (std::size_t m = 0; m < M; ++m) {
    auto& eval = report.candidates[m];
    eval.index = static_cast<int>(m);
    for (const auto u : unique) {
      if (sup_distance(result.candidates[m].solution.link_flows, result.candidates[u].solution.link_flows) < 1e-9) {
        eval.duplicate_of = static_cast<int>(u);
        break;
      }
    }
    if (!eval.duplicate_of) unique.push_back(m);
  }

  const auto denoms = normalization_denominators(demand, config.factors).effective();
  detail::parallel_for(unique.size(), config.threads, [&](std::size_t i) {
    const auto m = unique[i];
    auto& eval = report.candidates[m];
    eval.objectives = candidate_objectives(net, result.candidates[m], evaluation, denoms);
    const auto mv = mean_and_variance(eval.objectives);
    eval.mean = mv.mean;
    eval.variance = mv.variance;
  });

  // Step 4: gaps; choose the smallest.
  for (auto& eval : report.candidates) {
    if (eval.duplicate_of) {
      const auto& src = report.candidates[static_cast<std::size_t>(*eval.duplicate_of)];
      eval.objectives = src.objectives;
      eval.mean = src.mean;
      eval.variance = src.variance;
    }
    eval.gap = eval.mean - report.lower_bound_mean;
    eval.gap_var = eval.variance + report.lower_bound_var;
  }
  report.chosen = 0;
  for (std::size_t m = 1; m < M; ++m) {
    if (report.candidates[m].gap < report.candidates[static_cast<std::size_t>(report.chosen)].gap) {
      report.chosen = static_cast<int>(m);
    }
  }

  report.runtime_sec = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  return result;
}

namespace {

using nlohmann::json;
using ordered_json = nlohmann::ordered_json;

ordered_json solver_json(const SolverParams& p) {
  ordered_json j;
  j["step_size"] = p.step_size;
  j["gap_tol"] = p.gap_tol;
  j["max_iters"] = p.max_iters;
  j["backtracking"] = p.backtracking;
  j["intermodal_k"] = p.intermodal_k;
  j["path_gap_tol"] = p.path_gap_tol;
  return j;
}

SolverParams solver_from(const json& j) {
  SolverParams p;
  p.step_size = j.at("step_size").get<double>();
  p.gap_tol = j.at("gap_tol").get<double>();
  p.max_iters = j.at("max_iters").get<int>();
  p.backtracking = j.at("backtracking").get<bool>();
  p.intermodal_k = j.at("intermodal_k").get<int>();
  p.path_gap_tol = j.value("path_gap_tol", 0.0);
  return p;
}

}  // namespace

std::string saa_report_to_json(const SaaReport& report, bool include_runtime) {
  ordered_json j;
  const auto& c = report.config;
  ordered_json cfg;
  cfg["M"] = c.M;
  cfg["N"] = c.N;
  cfg["N_prime"] = c.N_prime;
  cfg["base_seed"] = c.base_seed;
  cfg["disaster"] = {{"name", c.disaster.name},
                     {"risk_tags", format_risk_tags(c.disaster.risk_tags)},
                     {"hit_fraction", c.disaster.hit_fraction},
                     {"reduction", c.disaster.reduction}};
  cfg["solver"] = solver_json(c.solver);
  cfg["unit_factors"] = {{"im_truck_equiv", c.factors.im_truck_equiv}, {"im_rail_equiv", c.factors.im_rail_equiv}};
  j["config"] = cfg;
  j["training_seeds"] = report.training_seeds;
  j["evaluation_seeds"] = report.evaluation_seeds;
  j["z_values"] = report.z_values;
  j["lower_bound_mean"] = report.lower_bound_mean;
  j["lower_bound_var"] = report.lower_bound_var;
  ordered_json cands = ordered_json::array();
  for (const auto& e : report.candidates) {
    ordered_json ce;
    ce["index"] = e.index;
    ce["duplicate_of"] = e.duplicate_of ? ordered_json(*e.duplicate_of) : ordered_json(nullptr);
    ce["mean"] = e.mean;
    ce["variance"] = e.variance;
    ce["gap"] = e.gap;
    ce["gap_var"] = e.gap_var;
    ce["objectives"] = e.objectives;
    cands.push_back(std::move(ce));
  }
  j["candidates"] = std::move(cands);
  j["chosen"] = report.chosen;
  if (include_runtime) j["runtime_sec"] = report.runtime_sec;
  return j.dump(2) + "\n";
}

SaaReport saa_report_from_json(std::string_view text, const std::string& source) {
  try {
    const auto j = json::parse(text);
    SaaReport r;
    const auto& cfg = j.at("config");
    r.config.M = cfg.at("M").get<int>();
    r.config.N = cfg.at("N").get<int>();
    r.config.N_prime = cfg.at("N_prime").get<int>();
    r.config.base_seed = cfg.at("base_seed").get<std::uint64_t>();
    const auto& d = cfg.at("disaster");
    r.config.disaster.name = d.at("name").get<std::string>();
    r.config.disaster.risk_tags = parse_risk_tags(d.at("risk_tags").get<std::string>());
    r.config.disaster.hit_fraction = d.at("hit_fraction").get<double>();
    r.config.disaster.reduction = d.at("reduction").get<double>();
    r.config.solver = solver_from(cfg.at("solver"));
    r.config.factors.im_truck_equiv = cfg.at("unit_factors").at("im_truck_equiv").get<double>();
    r.config.factors.im_rail_equiv = cfg.at("unit_factors").at("im_rail_equiv").get<double>();
    r.training_seeds = j.at("training_seeds").get<std::vector<std::uint64_t>>();
    r.evaluation_seeds = j.at("evaluation_seeds").get<std::vector<std::uint64_t>>();
    r.z_values = j.at("z_values").get<std::vector<double>>();
    r.lower_bound_mean = j.at("lower_bound_mean").get<double>();
    r.lower_bound_var = j.at("lower_bound_var").get<double>();
    for (const auto& ce : j.at("candidates")) {
      CandidateEvaluation e;
      e.index = ce.at("index").get<int>();
      if (!ce.at("duplicate_of").is_null()) e.duplicate_of = ce.at("duplicate_of").get<int>();
      e.mean = ce.at("mean").get<double>();
      e.variance = ce.at("variance").get<double>();
      e.gap = ce.at("gap").get<double>();
      e.gap_var = ce.at("gap_var").get<double>();
      e.objectives = ce.at("objectives").get<std::vector<double>>();
      r.candidates.push_back(std::move(e));
    }
    r.chosen = j.at("chosen").get<int>();
    r.runtime_sec = j.value("runtime_sec", 0.0);
    if (r.chosen < 0 || static_cast<std::size_t>(r.chosen) >= r.candidates.size()) {
      throw Error(ErrorCode::Parse, source + ": chosen index out of range");
    }
    return r;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::Parse, source + ": " + e.what());
  }
}

}  // namespace freight
