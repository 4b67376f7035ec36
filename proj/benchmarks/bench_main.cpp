#include <benchmark/benchmark.h>

#include "tracelab/equilibrium.hpp"
#include "tracelab/exploration.hpp"
#include "tracelab/generators.hpp"
#include "tracelab/percolation.hpp"
#include "tracelab/trace.hpp"
#include "tracelab/walk.hpp"

using namespace tracelab;

namespace {

WeightedMultiGraph regular_cm(std::size_t n, std::uint64_t seed) {
  RngStream r(seed);
  return configuration_model(DegreeDistribution::regular(3), n, r);
}

void BM_SimulateWalk(benchmark::State& state) {
  const auto g = regular_cm(static_cast<std::size_t>(state.range(0)), 1);
  const Generator gen(g);
  RngStream r(2);
  std::size_t jumps = 0;
  for (auto _ : state) {
    const auto w = simulate_walk(gen, 0, 1000.0, r);
    jumps += w.jumps.size();
    benchmark::DoNotOptimize(w.jumps.data());
  }
  state.counters["jumps/s"] = benchmark::Counter(static_cast<double>(jumps), benchmark::Counter::kIsRate);
}
BENCHMARK(BM_SimulateWalk)->Arg(1000)->Arg(100000);

void BM_TransitionProbsExact(benchmark::State& state) {
  const auto g = regular_cm(static_cast<std::size_t>(state.range(0)), 3);
  for (auto _ : state) benchmark::DoNotOptimize(transition_probs_exact(g, 5.0).data.data());
}
BENCHMARK(BM_TransitionProbsExact)->Arg(50)->Arg(200)->Arg(400);

void BM_EquilibriumExact(benchmark::State& state) {
  const auto g = regular_cm(static_cast<std::size_t>(state.range(0)), 4);
  const std::vector<VertexId> b = {0};
  for (auto _ : state) benchmark::DoNotOptimize(equilibrium_measure_exact(g, b, 10.0).capacity);
}
BENCHMARK(BM_EquilibriumExact)->Arg(100)->Arg(400);

void BM_VisitingMeasure(benchmark::State& state) {
  const auto g = regular_cm(2000, 5);
  const Generator gen(g);
  const std::vector<VertexId> b = {0};
  RngStream r(6);
  for (auto _ : state) benchmark::DoNotOptimize(visiting_measure(gen, b, 57.0, 2000.0, 1e4, r).atoms.size());
}
BENCHMARK(BM_VisitingMeasure);

void BM_ConfigurationModel(benchmark::State& state) {
  const auto law = DegreeDistribution::regular(3);
  RngStream r(7);
  for (auto _ : state)
    benchmark::DoNotOptimize(configuration_model(law, static_cast<std::size_t>(state.range(0)), r).num_edges());
}
BENCHMARK(BM_ConfigurationModel)->Arg(10000)->Arg(1000000);

void BM_CoupledExploration(benchmark::State& state) {
  const std::vector<std::size_t> degrees(static_cast<std::size_t>(state.range(0)), 3);
  const BreadthFirstRule rule;
  RngStream r(8);
  for (auto _ : state) benchmark::DoNotOptimize(coupled_exploration(degrees, 0, rule, 10, r).success);
}
BENCHMARK(BM_CoupledExploration)->Arg(10000);

void BM_VacantComponents(benchmark::State& state) {
  const auto g = regular_cm(static_cast<std::size_t>(state.range(0)), 9);
  RngStream r(10);
  for (auto _ : state) {
    const auto vg = vacant_graph(g, static_cast<double>(g.num_vertices()), PercolationMode::Site, r);
    benchmark::DoNotOptimize(components(vg).largest());
  }
}
BENCHMARK(BM_VacantComponents)->Arg(10000);

}  // namespace
BENCHMARK_MAIN();
