#include <gtest/gtest.h>
#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "commands.hpp"
#include "freight/error.hpp"
#include "json.hpp"
#include "run_config.hpp"
#include "synthetic.hpp"

namespace freight::cli {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return std::string(std::istreambuf_iterator<char>(in), {});
}

std::vector<std::vector<std::string>> read_csv(const fs::path& p) {
  std::ifstream in(p);
  std::vector<std::vector<std::string>> rows;
  std::string line;
  std::getline(in, line);
  while (std::getline(in, line)) {
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string c;
    while (std::getline(ss, c, ',')) cells.push_back(c);
    rows.push_back(cells);
  }
  return rows;
}

// A scratch directory holding network, demand and config files.
class Workspace {
 public:
  explicit Workspace(const std::string& name) : dir_(fs::temp_directory_path() / ("freight_cli_" + name)) {
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  ~Workspace() { fs::remove_all(dir_); }

  const fs::path& dir() const { return dir_; }

  void write_instance(const testing::Instance& inst) {
    write_network(inst.net, dir_ / "nodes.csv", dir_ / "links.csv");
    write_demand(inst.demand, dir_ / "demand.csv");
  }

  fs::path write_config(const std::string& extra, const std::string& name = "run.cfg") const {
    std::ofstream(dir_ / name) << "network.nodes = nodes.csv\n"
                                  "network.links = links.csv\n"
                                  "demand.file = demand.csv\n"
                                  "output.dir = out\n"
                               << extra;
    return dir_ / name;
  }

 private:
  fs::path dir_;
};

struct Captured {
  std::ostringstream out, err;
  Streams streams() { return Streams{out, err}; }
};

int run_binary(const std::string& args, std::string* output = nullptr) {
  const auto log = fs::temp_directory_path() / "freight_cli_binary.log";
  const std::string cmd = std::string(FREIGHTSAA_EXE) + " " + args + " > " + log.string() + " 2>&1";
  const int status = std::system(cmd.c_str());
  if (output) *output = slurp(log);
  fs::remove(log);
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

TEST(CliValidate, CleanFixturePrintsCounts) {
  Workspace ws("validate_ok");
  ws.write_instance(testing::make_synthetic({}));
  Captured io;
  EXPECT_EQ(cmd_validate(load_run_config(ws.write_config("")), io.streams()), kOk) << io.err.str();
  EXPECT_NE(io.out.str().find("nodes 15 (centroid 3, road 8, rail 4)"), std::string::npos) << io.out.str();
  EXPECT_NE(io.out.str().find("ok\n"), std::string::npos);
}

TEST(CliValidate, NationalScaleEcho) {
  testing::SyntheticSpec spec;
  spec.centroids = 61;
  spec.road_nodes = 200;
  spec.rail_nodes = 40;
  spec.chords = 384;
  spec.terminals = 20;
  spec.truck_demand = 1.0;
  Workspace ws("validate_scale");
  ws.write_instance(testing::make_synthetic(spec));
  Captured io;
  EXPECT_EQ(cmd_validate(load_run_config(ws.write_config("")), io.streams()), kOk) << io.err.str();
  EXPECT_NE(io.out.str().find("nodes 301 "), std::string::npos) << io.out.str();
  EXPECT_NE(io.out.str().find("links 1532 "), std::string::npos) << io.out.str();
}

TEST(CliValidate, BrokenRailPairing) {
  Workspace ws("validate_broken");
  const auto inst = testing::make_synthetic({});
  ws.write_instance(inst);
  // Point the first rail link's reverse at a road link.
  LinkId rail = -1, road = -1;
  for (const auto& l : inst.net.links()) {
    if (l.kind == LinkKind::Rail && rail < 0) rail = l.id;
    if (l.kind == LinkKind::Road && road < 0) road = l.id;
  }
  std::ifstream in(ws.dir() / "links.csv");
  std::string text, line;
  int row = -1;
  while (std::getline(in, line)) {
    if (row == rail) {
      std::vector<std::string> cells;
      std::stringstream ss(line);
      std::string c;
      while (std::getline(ss, c, ',')) cells.push_back(c);
      cells.resize(12);
      cells[9] = std::to_string(road);
      line.clear();
      for (std::size_t i = 0; i < cells.size(); ++i) line += (i ? "," : "") + cells[i];
    }
    text += line + "\n";
    ++row;
  }
  in.close();
  std::ofstream(ws.dir() / "links.csv") << text;

  Captured io;
  EXPECT_EQ(cmd_validate(load_run_config(ws.write_config("")), io.streams()), kValidationFailure);
  EXPECT_NE(io.err.str().find("MissingReverseRail link="), std::string::npos) << io.err.str();

  std::string output;
  EXPECT_EQ(run_binary("validate -c " + (ws.dir() / "run.cfg").string(), &output), 1);
  EXPECT_NE(output.find("MissingReverseRail link="), std::string::npos) << output;
}

TEST(CliAssign, BaseCaseSplitsSymmetricLinksEvenly) {
  Workspace ws("assign_sym");
  ws.write_instance(testing::two_link_fixture(1.0, 1.0, 8.0, 8.0, 10.0));
  Captured io;
  ASSERT_EQ(cmd_assign(load_run_config(ws.write_config("")), AssignOptions{true}, io.streams()), kOk) << io.err.str();
  const auto rows = read_csv(ws.dir() / "out" / "link_flows.csv");
  ASSERT_EQ(rows.size(), 2U);
  EXPECT_NEAR(std::stod(rows[0][6]), 5.0, 1e-5);
  EXPECT_NEAR(std::stod(rows[1][6]), 5.0, 1e-5);
  for (const auto* f : {"solution.json", "convergence.csv", "ton_miles.json", "ton_miles.txt"})
    EXPECT_TRUE(fs::exists(ws.dir() / "out" / f)) << f;
}

TEST(CliAssign, SameSeedSameOutputsAndConvergenceLog) {
  Workspace ws("assign_seed");
  ws.write_instance(testing::make_synthetic({}));
  const auto cfg_path = ws.write_config("disaster.preset = hurricane\nassign.scenario_seed = 42\n");
  std::array<std::string, 2> flows, solutions;
  for (int run = 0; run < 2; ++run) {
    Captured io;
    ASSERT_EQ(cmd_assign(load_run_config(cfg_path), AssignOptions{}, io.streams()), kOk) << io.err.str();
    flows[run] = slurp(ws.dir() / "out" / "link_flows.csv");
    solutions[run] = slurp(ws.dir() / "out" / "solution.json");
  }
  EXPECT_EQ(flows[0], flows[1]);
  EXPECT_EQ(solutions[0], solutions[1]);

  const auto log = read_csv(ws.dir() / "out" / "convergence.csv");
  ASSERT_FALSE(log.empty());
  EXPECT_LE(std::stod(log.back()[2]), 1e-4);

  // A different seed draws a different scenario.
  Captured io;
  auto other = load_run_config(cfg_path, Overrides{7, {}, {}});
  ASSERT_EQ(cmd_assign(other, AssignOptions{}, io.streams()), kOk);
  EXPECT_NE(slurp(ws.dir() / "out" / "solution.json"), solutions[0]);
}

TEST(CliAssign, MaxItersWarning) {
  Workspace ws("assign_maxit");
  ws.write_instance(testing::make_synthetic({}));
  Captured io;
  ASSERT_EQ(cmd_assign(load_run_config(ws.write_config("solver.max_iters = 1\nsolver.gap_tol = 1e-12\n")),
                       AssignOptions{true}, io.streams()),
            kOk);
  EXPECT_NE(io.err.str().find("MaxItersExceeded"), std::string::npos);
}

const std::string kSmallSaa = "saa.M = 2\nsaa.N = 1\nsaa.N_prime = 4\nsaa.base_seed = 99\n";

TEST(CliSaa, TwoCandidatesChosenByGap) {
  Workspace ws("saa_two");
  ws.write_instance(testing::make_synthetic({}));
  Captured io;
  ASSERT_EQ(cmd_saa(load_run_config(ws.write_config(kSmallSaa + "disaster.preset = hurricane\n")), io.streams()), kOk)
      << io.err.str();
  const auto report = json::parse(slurp(ws.dir() / "out" / "saa_report.json"));
  const auto& cands = report.at("candidates");
  ASSERT_EQ(cands.size(), 2U);
  std::size_t best = 0;
  for (std::size_t i = 1; i < cands.size(); ++i)
    if (cands[i].at("gap").get<double>() < cands[best].at("gap").get<double>()) best = i;
  EXPECT_EQ(report.at("chosen").get<std::size_t>(), best);
  EXPECT_FALSE(report.contains("runtime_sec"));

  const auto run_log = json::parse(slurp(ws.dir() / "out" / "run_log.json"));
  EXPECT_GT(run_log.at("runtime_sec").get<double>(), 0.0);
  for (const auto* f : {"cost_stats.json", "cost_stats.txt", "link_flows.csv", "solution.json", "ton_miles.json"})
    EXPECT_TRUE(fs::exists(ws.dir() / "out" / f)) << f;
}

TEST(CliSaa, DegenerateRandomnessHasNoGap) {
  Workspace ws("saa_degenerate");
  ws.write_instance(testing::make_synthetic({}));
  Captured io;
  // With no disaster the capacity range is the only randomness; collapse it.
  auto cfg = load_run_config(ws.write_config(kSmallSaa));
  auto net = load_network(cfg.nodes, cfg.links);
  auto links = net.links();
  for (auto& l : links) l.cap_lo = l.cap_hi;
  write_network(Network::build(net.nodes(), links), cfg.nodes, cfg.links);
  ASSERT_EQ(cmd_saa(cfg, io.streams()), kOk) << io.err.str();
  const auto report = json::parse(slurp(ws.dir() / "out" / "saa_report.json"));
  for (const auto& c : report.at("candidates")) EXPECT_NEAR(c.at("gap").get<double>(), 0.0, 1e-9);
}

TEST(CliReport, RegeneratesIdenticalTablesAndScalesTonnage) {
  Workspace ws("report");
  ws.write_instance(testing::make_synthetic({}));
  Captured io;
  const auto cfg = load_run_config(ws.write_config(kSmallSaa + "disaster.preset = hurricane\n"));
  ASSERT_EQ(cmd_saa(cfg, io.streams()), kOk) << io.err.str();
  const auto out = ws.dir() / "out";
  const auto original_stats = slurp(out / "cost_stats.json");
  const auto original_flows = slurp(out / "link_flows.csv");
  const auto original_tm = json::parse(slurp(out / "ton_miles.json"));

  auto again = cfg;
  again.output_dir = ws.dir() / "again";
  for (int pass = 0; pass < 2; ++pass) {
    Captured r;
    ASSERT_EQ(cmd_report(again, ReportOptions{out}, r.streams()), kOk) << r.err.str();
    EXPECT_EQ(slurp(again.output_dir / "cost_stats.json"), original_stats);
    EXPECT_EQ(slurp(again.output_dir / "link_flows.csv"), original_flows);
  }

  auto heavy = again;
  heavy.tonmiles.tons_per_truck *= 2.0;
  heavy.tonmiles.tons_per_intermodal_unit *= 2.0;
  Captured r;
  ASSERT_EQ(cmd_report(heavy, ReportOptions{out}, r.streams()), kOk);
  const auto scaled = json::parse(slurp(heavy.output_dir / "ton_miles.json"));
  const double before = original_tm.at("truck").at("contiguous_us").at("per_day").get<double>();
  EXPECT_NEAR(scaled.at("truck").at("contiguous_us").at("per_day").get<double>(), 2.0 * before, 1e-9 * before);
  EXPECT_EQ(scaled.at("rail"), json::parse(slurp(again.output_dir / "ton_miles.json")).at("rail"));
}

TEST(CliReport, CorruptedJsonNamesTheFile) {
  Workspace ws("report_corrupt");
  ws.write_instance(testing::make_synthetic({}));
  const auto cfg = load_run_config(ws.write_config(""));
  fs::create_directories(ws.dir() / "prior");
  std::ofstream(ws.dir() / "prior" / "saa_report.json") << "{\"candidates\": [";
  Captured io;
  EXPECT_NE(cmd_report(cfg, ReportOptions{ws.dir() / "prior"}, io.streams()), kOk);
  EXPECT_NE(io.err.str().find("saa_report.json"), std::string::npos) << io.err.str();
}

TEST(CliReport, NothingToReport) {
  Workspace ws("report_empty");
  ws.write_instance(testing::make_synthetic({}));
  Captured io;
  EXPECT_EQ(cmd_report(load_run_config(ws.write_config("")), ReportOptions{ws.dir()}, io.streams()), kIoFailure);
}

TEST(CliSample, WritesOneRowPerLinkAndScenario) {
  Workspace ws("sample");
  const auto inst = testing::make_synthetic({});
  ws.write_instance(inst);
  Captured io;
  const auto cfg = load_run_config(ws.write_config("disaster.preset = hurricane\n"));
  ASSERT_EQ(cmd_sample(cfg, SampleOptions{false, 3}, io.streams()), kOk) << io.err.str();
  EXPECT_EQ(read_csv(ws.dir() / "out" / "capacities.csv").size(), 3 * inst.net.link_count());
  // Bad arguments share the usage/config exit code.
  EXPECT_EQ(cmd_sample(cfg, SampleOptions{false, 0}, io.streams()), kIoFailure);
}

TEST(RunConfig, RejectsUnknownKeysAndBadValues) {
  Workspace ws("config");
  ws.write_instance(testing::make_synthetic({}));
  const auto code = [&](const std::string& extra) {
    try {
      load_run_config(ws.write_config(extra));
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::Io;
  };
  EXPECT_EQ(code("solver.gap_tolerance = 1\n"), ErrorCode::Config);
  EXPECT_EQ(code("disaster.preset = meteor\n"), ErrorCode::Config);
  EXPECT_EQ(code("solver.step_size = -1\n"), ErrorCode::Config);
  EXPECT_EQ(code("tonmiles.tons_per_truck = 0\n"), ErrorCode::Config);
  EXPECT_EQ(code(""), ErrorCode::Io);
}

TEST(RunConfig, ResolvesPathsAndOverrides) {
  Workspace ws("config_paths");
  ws.write_instance(testing::make_synthetic({}));
  const auto cfg = load_run_config(ws.write_config("saa.base_seed = 5\n"), Overrides{11, 4, ws.dir() / "elsewhere"});
  EXPECT_EQ(cfg.nodes, ws.dir() / "nodes.csv");
  EXPECT_EQ(cfg.saa.base_seed, 11U);
  EXPECT_EQ(cfg.scenario_seed, 11U);
  EXPECT_EQ(cfg.saa.threads, 4);
  EXPECT_EQ(cfg.output_dir, ws.dir() / "elsewhere");
  EXPECT_NE(describe(cfg).find("saa.base_seed = 11"), std::string::npos) << describe(cfg);
}

TEST(Binary, ExitCodes) {
  Workspace ws("binary");
  ws.write_instance(testing::make_synthetic({}));
  const auto cfg = ws.write_config("").string();
  EXPECT_EQ(run_binary("--help"), 0);
  EXPECT_EQ(run_binary("validate -c " + cfg), 0);
  EXPECT_EQ(run_binary("validate -c " + (ws.dir() / "missing.cfg").string()), 3);
  EXPECT_EQ(run_binary("validate"), 3);
  EXPECT_EQ(run_binary("assign -c " + cfg + " --base-case --out " + (ws.dir() / "o").string()), 0);
  EXPECT_TRUE(fs::exists(ws.dir() / "o" / "link_flows.csv"));

  // Two disconnected halves: validation reports the input, assignment fails as a solve.
  std::ofstream(ws.dir() / "cut_nodes.csv") << "id,kind,state,region,lon,lat\n0,centroid,,,,\n1,centroid,,,,\n"
                                               "2,road,,,,\n3,road,,,,\n";
  std::ofstream(ws.dir() / "cut_links.csv")
      << "id,tail,head,kind,mode_access,length_miles,fftime_hr,cap_lo,cap_hi,reverse_id,risk_tags,state\n"
         "0,0,2,road,,1,1,10,10,,,\n1,2,0,road,,1,1,10,10,,,\n2,1,3,road,,1,1,10,10,,,\n3,3,1,road,,1,1,10,10,,,\n";
  std::ofstream(ws.dir() / "cut_demand.csv") << "origin,destination,mode,units_per_day\n0,1,truck,5\n";
  std::ofstream(ws.dir() / "cut.cfg") << "network.nodes = cut_nodes.csv\nnetwork.links = cut_links.csv\n"
                                         "demand.file = cut_demand.csv\n";
  const auto cut = (ws.dir() / "cut.cfg").string();
  std::string output;
  EXPECT_EQ(run_binary("validate -c " + cut, &output), 1) << output;
  EXPECT_EQ(run_binary("assign -c " + cut + " --out " + (ws.dir() / "z").string(), &output), 2) << output;
  EXPECT_NE(output.find("Unreachable"), std::string::npos) << output;
}

}  // namespace
}  // namespace freight::cli
