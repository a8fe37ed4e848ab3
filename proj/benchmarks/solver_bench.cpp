#include <benchmark/benchmark.h>

#include "freight/saa.hpp"
#include "freight/scenario.hpp"
#include "freight/shortest_path.hpp"
#include "freight/ue_solver.hpp"
#include "synthetic.hpp"

namespace {

using namespace freight;

// Road nodes scale with the argument; the other counts follow.
testing::Instance sized_instance(int road_nodes) {
  testing::SyntheticSpec spec;
  spec.road_nodes = road_nodes;
  spec.rail_nodes = std::max(4, road_nodes / 3);
  spec.centroids = std::max(3, road_nodes / 4);
  spec.chords = road_nodes / 2;
  spec.terminals = std::max(2, spec.rail_nodes / 4);
  spec.seed = 17;
  return testing::make_synthetic(spec);
}

DisasterSpec hurricane() {
  auto d = *disaster_preset("hurricane");
  d.hit_fraction = 0.5;
  d.reduction = 0.8;
  return d;
}

void BM_ShortestPathTree(benchmark::State& state) {
  const auto inst = sized_instance(static_cast<int>(state.range(0)));
  const auto mode = static_cast<Mode>(state.range(1));
  std::vector<double> t(inst.net.link_count(), 1.0);
  PathFinder finder(inst.net);
  for (auto _ : state) {
    finder.build_tree(t, mode, 0);
    benchmark::DoNotOptimize(finder.cost_to(1));
  }
  state.counters["links"] = static_cast<double>(inst.net.link_count());
}
BENCHMARK(BM_ShortestPathTree)->ArgsProduct({{30, 120, 480}, {0, 1, 2}});

void BM_GpSolve(benchmark::State& state) {
  const auto inst = sized_instance(static_cast<int>(state.range(0)));
  const auto scenario = sample_scenario(inst.net, hurricane(), 3);
  int iterations = 0;
  for (auto _ : state) {
    const auto sol = gp_solve(inst.net, scenario, inst.demand, SolverParams{});
    iterations = sol.iterations;
    benchmark::DoNotOptimize(sol.objective);
  }
  state.counters["gp_iters"] = iterations;
  state.counters["od_triples"] = static_cast<double>(inst.demand.entries().size());
}
BENCHMARK(BM_GpSolve)->Arg(30)->Arg(60)->Arg(120)->Unit(benchmark::kMillisecond);

void BM_SampleScenario(benchmark::State& state) {
  const auto inst = sized_instance(static_cast<int>(state.range(0)));
  const auto spec = hurricane();
  std::uint64_t seed = 0;
  for (auto _ : state) benchmark::DoNotOptimize(sample_scenario(inst.net, spec, ++seed));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(inst.net.link_count()));
}
BENCHMARK(BM_SampleScenario)->Arg(30)->Arg(480);

void BM_EvaluateCandidate(benchmark::State& state) {
  const auto inst = sized_instance(60);
  const auto scenarios = sample_batch(inst.net, hurricane(), 11, static_cast<std::size_t>(state.range(0)));
  CandidateFlow flow;
  flow.solution = gp_solve(inst.net, scenarios.front(), inst.demand, SolverParams{});
  for (auto _ : state) benchmark::DoNotOptimize(evaluate_candidate(inst.net, inst.demand, flow, scenarios));
}
BENCHMARK(BM_EvaluateCandidate)->Arg(100)->Arg(1000)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
