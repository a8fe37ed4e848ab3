#include <iostream>

#include <CLI11.hpp>

#include "commands.hpp"
#include "freight/error.hpp"

int main(int argc, char** argv) {
  using namespace freight::cli;

  CLI::App app{"Freight user-equilibrium assignment under sampled disaster scenarios"};
  app.require_subcommand(1);

  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::optional<int> threads;
  std::optional<std::string> out;
  bool base_case = false;
  std::string from;
  int count = 1;

  const auto common = [&](CLI::App* sub) {
    sub->add_option("-c,--config", config_path, "Run configuration file")->required();
    sub->add_option("--seed", seed, "Override saa.base_seed and assign.scenario_seed");
    sub->add_option("--threads", threads, "Cap on concurrent scenario solves");
    sub->add_option("--out", out, "Output directory");
  };

  auto* validate = app.add_subcommand("validate", "Check network and demand inputs and print counts");
  common(validate);
  auto* assign = app.add_subcommand("assign", "Solve one equilibrium (sampled scenario or base case)");
  common(assign);
  assign->add_flag("--base-case", base_case, "Use midpoint capacities without degradation");
  auto* saa = app.add_subcommand("saa", "Run sample average approximation");
  common(saa);
  auto* report = app.add_subcommand("report", "Rebuild report tables from stored artifacts");
  common(report);
  report->add_option("--from", from, "Directory of a previous run (default: output dir)");
  auto* sample = app.add_subcommand("sample", "Write sampled scenario capacities as CSV");
  common(sample);
  sample->add_flag("--base-case", base_case, "Write the base-case capacities");
  sample->add_option("--count", count, "Number of scenarios from the base seed's child streams");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kIoFailure;
  }

  Streams io{std::cout, std::cerr};
  RunConfig cfg;
  try {
    Overrides ov{seed, threads, out ? std::optional<std::filesystem::path>(*out) : std::nullopt};
    cfg = load_run_config(config_path, ov);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kIoFailure;
  }

  if (validate->parsed()) return cmd_validate(cfg, io);
  if (assign->parsed()) return cmd_assign(cfg, AssignOptions{base_case}, io);
  if (saa->parsed()) return cmd_saa(cfg, io);
  if (report->parsed()) return cmd_report(cfg, ReportOptions{from}, io);
  return cmd_sample(cfg, SampleOptions{base_case, count}, io);
}
