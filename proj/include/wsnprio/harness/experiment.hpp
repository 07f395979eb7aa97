#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "wsnprio/config.hpp"
#include "wsnprio/engine/random.hpp"
#include "wsnprio/engine/simulation.hpp"
#include "wsnprio/engine/trace.hpp"
#include "wsnprio/harness/metrics.hpp"

namespace wsnprio::harness {

enum class Execution : std::uint8_t { Serial, Parallel };

struct RunResult {
  std::uint64_t seed{};
  sched::Scheme scheme{};
  std::size_t connections{};
  std::optional<MetricsReport> metrics;  // empty when the run failed
  std::string error;
  engine::Trace trace;
  std::map<engine::Purpose, engine::DrawRecord> draws;
  std::optional<NodeId> designated;  // designated node of the first critical event
};

struct MetricSummary {
  std::string metric;
  sched::Scheme scheme{};
  std::size_t runs{0};
  double mean{0.0};
  double stddev{0.0};
};

struct ThroughputPoint {
  std::size_t connections{};
  sched::Scheme scheme{};
  std::size_t runs{0};
  double mean_kbps{0.0};
  double stddev_kbps{0.0};
};

struct ExperimentReport {
  ScenarioConfig config;
  double effective_range{0.0};
  std::vector<RunResult> runs;  // ordered by connections, seed, scheme
  std::vector<MetricSummary> summary;
  std::vector<ThroughputPoint> throughput;
};

/// One run of `config` for `seed` under `scheme`. Never throws for module
/// errors; they are captured in RunResult::error.
RunResult run_once(const ScenarioConfig& config, std::uint64_t seed, sched::Scheme scheme);

/// Every (seed, scheme) pair. Runs are independent; Parallel spreads them over
/// OpenMP threads and gives the same report as Serial.
struct RunOptions {
  Execution exec{Execution::Parallel};
  bool keep_traces{true};
};

ExperimentReport run_experiment(const ScenarioConfig& config, const std::vector<std::uint64_t>& seeds,
                                const std::vector<sched::Scheme>& schemes, RunOptions options = {});

/// Sweeps the auto-generated connection count. n = 0 yields a zero entry.
ExperimentReport throughput_vs_connections(const ScenarioConfig& config, const std::vector<std::size_t>& counts,
                                           const std::vector<std::uint64_t>& seeds,
                                           const std::vector<sched::Scheme>& schemes, RunOptions options = {});

/// Per-scheme mean and sample standard deviation of the scalar metrics.
std::vector<MetricSummary> summarize(const std::vector<RunResult>& runs);
std::vector<ThroughputPoint> throughput_series(const std::vector<RunResult>& runs);

}  // namespace wsnprio::harness
