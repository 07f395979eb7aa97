#include <benchmark/benchmark.h>

#include <vector>

#include "wsnprio/engine/random.hpp"
#include "wsnprio/harness/experiment.hpp"
#include "wsnprio/radio.hpp"

using namespace wsnprio;

namespace {

std::vector<radio::GraphNode> nodes(std::size_t n) {
  engine::RandomStream rng(1, engine::Purpose::Placement);
  std::vector<radio::GraphNode> out;
  for (std::uint32_t i = 0; i < n; ++i) out.push_back({NodeId{i}, {rng.uniform(0, 2000), rng.uniform(0, 2000)}});
  return out;
}

radio::RadioParams params() {
  radio::RadioParams p;
  p.rx_threshold = radio::threshold_for_range(p, 250.0);
  return p;
}

void BM_GraphSerial(benchmark::State& state) {
  const auto ns = nodes(static_cast<std::size_t>(state.range(0)));
  const auto p = params();
  for (auto _ : state) benchmark::DoNotOptimize(radio::build_graph_reference(ns, p));
}

void BM_GraphParallel(benchmark::State& state) {
  const auto ns = nodes(static_cast<std::size_t>(state.range(0)));
  const auto p = params();
  for (auto _ : state) benchmark::DoNotOptimize(radio::build_graph(ns, p));
}

void seeds(benchmark::State& state, harness::Execution exec) {
  ScenarioConfig c;
  c.session = 30.0;
  std::vector<std::uint64_t> s;
  for (std::uint64_t i = 1; i <= 8; ++i) s.push_back(i);
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        harness::run_experiment(c, s, {sched::Scheme::Mdlps, sched::Scheme::DataPriority}, {exec, false}));
  }
}

void BM_SeedsSerial(benchmark::State& state) { seeds(state, harness::Execution::Serial); }
void BM_SeedsParallel(benchmark::State& state) { seeds(state, harness::Execution::Parallel); }

}  // namespace

BENCHMARK(BM_GraphSerial)->Arg(22)->Arg(256)->Arg(2048);
BENCHMARK(BM_GraphParallel)->Arg(22)->Arg(256)->Arg(2048);
BENCHMARK(BM_SeedsSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SeedsParallel)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
