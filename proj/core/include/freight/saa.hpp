#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "freight/demand.hpp"
#include "freight/network.hpp"
#include "freight/scenario.hpp"
#include "freight/ue_solver.hpp"

namespace freight {

struct SaaConfig {
  int M = 100;         // independent SAA problems (candidates)
  int N = 1;           // scenarios per SAA problem
  int N_prime = 1000;  // evaluation scenarios
  std::uint64_t base_seed = 0;
  SolverParams solver;
  DisasterSpec disaster;
  UnitFactors factors;
  int threads = 1;

  void validate() const;
};

/// Candidate first-stage flow pattern: the equilibrium of one SAA problem.
struct CandidateFlow {
  int index = 0;
  EquilibriumSolution solution;
};

struct MeanVariance {
  double mean = 0.0;
  double variance = 0.0;  // variance of the mean: sum (x - mean)^2 / ((n - 1) n)
};

/// Sample mean and variance-of-the-mean. Throws InsufficientSamples for n < 2.
MeanVariance mean_and_variance(std::span<const double> values);

struct CandidateEvaluation {
  int index = 0;
  std::optional<int> duplicate_of;  // set when collapsed onto an earlier candidate
  double mean = 0.0;                // estimate of the true objective at this flow
  double variance = 0.0;
  double gap = 0.0;      // mean - lower_bound_mean; may be negative
  double gap_var = 0.0;  // variance + lower_bound_var
  std::vector<double> objectives;  // per evaluation scenario
};

struct SaaReport {
  SaaConfig config;
  std::vector<std::uint64_t> training_seeds;    // M * N, problem-major
  std::vector<std::uint64_t> evaluation_seeds;  // N'
  std::vector<double> z_values;
  double lower_bound_mean = 0.0;
  double lower_bound_var = 0.0;
  std::vector<CandidateEvaluation> candidates;
  int chosen = 0;
  double runtime_sec = 0.0;
};

struct SaaResult {
  SaaReport report;
  std::vector<CandidateFlow> candidates;

  const CandidateFlow& chosen() const { return candidates[static_cast<std::size_t>(report.chosen)]; }
};

/// Solves min (1/N) sum_n Q(y, xi_n) for one sample of N scenarios and returns
/// its normalized objective together with the flow pattern.
std::pair<double, CandidateFlow> solve_saa_problem(const Network& net, const DemandTable& demand,
                                                   std::span<const ScenarioSample> scenarios,
                                                   const SolverParams& solver, const UnitFactors& factors = {},
                                                   int index = 0);

/// Lower-bound estimate over the M SAA objective values.
MeanVariance lower_bound_stats(std::span<const double> z_values);

/// Objective of the fixed candidate flow under each evaluation scenario.
std::vector<double> candidate_objectives(const Network& net, const CandidateFlow& flow,
                                         std::span<const ScenarioSample> eval_scenarios, const Denominators& denoms);

/// Mean and variance of the candidate's objective over the evaluation
/// scenarios. Flows stay fixed; scenarios change only the capacities.
MeanVariance evaluate_candidate(const Network& net, const DemandTable& demand, const CandidateFlow& flow,
                                std::span<const ScenarioSample> eval_scenarios, const UnitFactors& factors = {});

/// Full procedure: M*N training scenarios from child streams [0, M*N), N'
/// evaluation scenarios from [M*N, M*N + N'), M SAA solves, lower bound,
/// candidate evaluation (duplicates collapsed), gap per candidate, and the
/// argmin-gap choice (ties to the smaller index).
SaaResult run_saa(const Network& net, const DemandTable& demand, const SaaConfig& config);

/// JSON form of the report. `include_runtime` adds the wall-clock field,
/// which makes the text run-dependent.
std::string saa_report_to_json(const SaaReport& report, bool include_runtime = false);
SaaReport saa_report_from_json(std::string_view text, const std::string& source = "<json>");

}  // namespace freight
