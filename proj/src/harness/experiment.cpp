#include "wsnprio/harness/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <functional>

#include "wsnprio/error.hpp"

namespace wsnprio::harness {

namespace {

struct Task {
  ScenarioConfig config;
  std::uint64_t seed;
  sched::Scheme scheme;
};

std::vector<RunResult> execute(const std::vector<Task>& tasks, const RunOptions& options) {
  std::vector<RunResult> out(tasks.size());
  const auto n = static_cast<std::ptrdiff_t>(tasks.size());
#pragma omp parallel for schedule(dynamic) if (options.exec == Execution::Parallel)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    const auto& t = tasks[static_cast<std::size_t>(i)];
    out[static_cast<std::size_t>(i)] = run_once(t.config, t.seed, t.scheme);
    if (!options.keep_traces) out[static_cast<std::size_t>(i)].trace = {};
  }
  return out;
}

struct Stat {
  std::string name;
  std::function<std::optional<double>(const RunResult&)> value;
};

const std::vector<Stat>& stats() {
  static const std::vector<Stat> table = {
      {"generated", [](const RunResult& r) { return std::optional<double>(static_cast<double>(r.metrics->generated)); }},
      {"delivered", [](const RunResult& r) { return std::optional<double>(static_cast<double>(r.metrics->delivered)); }},
      {"on_time", [](const RunResult& r) { return std::optional<double>(static_cast<double>(r.metrics->on_time)); }},
      {"pdr", [](const RunResult& r) { return std::optional<double>(r.metrics->pdr); }},
      {"mean_delay", [](const RunResult& r) { return std::optional<double>(r.metrics->mean_delay); }},
      {"p95_delay", [](const RunResult& r) { return std::optional<double>(r.metrics->p95_delay); }},
      {"throughput_kbps", [](const RunResult& r) { return std::optional<double>(r.metrics->throughput_kbps); }},
      {"overflow",
       [](const RunResult& r) {
         return std::optional<double>(static_cast<double>(r.metrics->drops.at(engine::DropCause::QueueOverflow)));
       }},
      {"noroute",
       [](const RunResult& r) {
         return std::optional<double>(static_cast<double>(r.metrics->drops.at(engine::DropCause::NoRoute)));
       }},
      {"expired",
       [](const RunResult& r) {
         return std::optional<double>(static_cast<double>(r.metrics->drops.at(engine::DropCause::Expired)));
       }},
      {"starved",
       [](const RunResult& r) {
         return std::optional<double>(static_cast<double>(r.metrics->drops.at(engine::DropCause::Starved)));
       }},
      {"designated_rank",
       [](const RunResult& r) -> std::optional<double> {
         if (!r.designated) return std::nullopt;
         const auto it = r.metrics->execution_orders.find(0);
         if (it == r.metrics->execution_orders.end()) return std::nullopt;
         return static_cast<double>(rank_of(it->second, *r.designated));
       }},
  };
  return table;
}

void mean_std(const std::vector<double>& xs, double& mean, double& sd) {
  mean = 0.0;
  sd = 0.0;
  if (xs.empty()) return;
  for (const double x : xs) mean += x;
  mean /= static_cast<double>(xs.size());
  if (xs.size() < 2) return;
  double ss = 0.0;
  for (const double x : xs) ss += (x - mean) * (x - mean);
  sd = std::sqrt(ss / static_cast<double>(xs.size() - 1));
}

std::vector<sched::Scheme> distinct_schemes(const std::vector<RunResult>& runs) {
  std::vector<sched::Scheme> out;
  for (const auto& r : runs) {
    if (std::find(out.begin(), out.end(), r.scheme) == out.end()) out.push_back(r.scheme);
  }
  return out;
}

double range_of(const ScenarioConfig& config) {
  const auto p = config.radio.resolved();
  return radio::range_for_threshold(p, p.rx_threshold);
}

}  // namespace

RunResult run_once(const ScenarioConfig& config, std::uint64_t seed, sched::Scheme scheme) {
  RunResult out;
  out.seed = seed;
  out.scheme = scheme;
  out.connections = config.flows.list.empty() ? config.flows.connections : config.flows.list.size();
  try {
    engine::Simulation sim(config, seed, scheme);
    out.trace = sim.finish();
    out.draws = sim.draw_digests();
    if (!config.critical_events.empty()) out.designated = sim.designated_node(0);
    out.metrics = compute_metrics(out.trace, config.session);
  } catch (const Error& e) {
    out.metrics.reset();
    out.error = e.what();
  } catch (const std::exception& e) {
    out.metrics.reset();
    out.error = std::string("Internal: ") + e.what();
  }
  return out;
}

std::vector<MetricSummary> summarize(const std::vector<RunResult>& runs) {
  std::vector<MetricSummary> out;
  for (const sched::Scheme scheme : distinct_schemes(runs)) {
    for (const auto& stat : stats()) {
      std::vector<double> xs;
      for (const auto& r : runs) {
        if (r.scheme != scheme || !r.metrics) continue;
        if (const auto v = stat.value(r)) xs.push_back(*v);
      }
      MetricSummary s;
      s.metric = stat.name;
      s.scheme = scheme;
      s.runs = xs.size();
      mean_std(xs, s.mean, s.stddev);
      out.push_back(s);
    }
  }
  return out;
}

std::vector<ThroughputPoint> throughput_series(const std::vector<RunResult>& runs) {
  std::vector<ThroughputPoint> out;
  std::vector<std::size_t> counts;
  for (const auto& r : runs) {
    if (std::find(counts.begin(), counts.end(), r.connections) == counts.end()) counts.push_back(r.connections);
  }
  std::sort(counts.begin(), counts.end());
  for (const std::size_t n : counts) {
    for (const sched::Scheme scheme : distinct_schemes(runs)) {
      std::vector<double> xs;
      for (const auto& r : runs) {
        if (r.connections == n && r.scheme == scheme && r.metrics) xs.push_back(r.metrics->throughput_kbps);
      }
      ThroughputPoint p;
      p.connections = n;
      p.scheme = scheme;
      p.runs = xs.size();
      mean_std(xs, p.mean_kbps, p.stddev_kbps);
      out.push_back(p);
    }
  }
  return out;
}

ExperimentReport run_experiment(const ScenarioConfig& config, const std::vector<std::uint64_t>& seeds,
                                const std::vector<sched::Scheme>& schemes, RunOptions options) {
  if (seeds.empty()) throw InvalidArgument("at least one seed is required");
  if (schemes.empty()) throw InvalidArgument("at least one scheme is required");
  validate(config);
  std::vector<Task> tasks;
  for (const std::uint64_t seed : seeds) {
    for (const sched::Scheme scheme : schemes) tasks.push_back({config, seed, scheme});
  }
  ExperimentReport report;
  report.config = config;
  report.config.seeds = seeds;
  report.effective_range = range_of(config);
  report.runs = execute(tasks, options);
  report.summary = summarize(report.runs);
  report.throughput = throughput_series(report.runs);
  return report;
}

ExperimentReport throughput_vs_connections(const ScenarioConfig& config, const std::vector<std::size_t>& counts,
                                           const std::vector<std::uint64_t>& seeds,
                                           const std::vector<sched::Scheme>& schemes, RunOptions options) {
  if (seeds.empty()) throw InvalidArgument("at least one seed is required");
  if (schemes.empty()) throw InvalidArgument("at least one scheme is required");
  if (!config.flows.list.empty()) throw InvalidArgument("connection sweeps need auto-generated flows");
  std::vector<Task> tasks;
  for (const std::size_t n : counts) {
    if (n == 0) continue;
    ScenarioConfig c = config;
    c.flows.connections = n;
    for (const std::uint64_t seed : seeds) {
      for (const sched::Scheme scheme : schemes) tasks.push_back({c, seed, scheme});
    }
  }
  ExperimentReport report;
  report.config = config;
  report.config.seeds = seeds;
  report.effective_range = range_of(config);
  report.runs = execute(tasks, options);
  report.summary = summarize(report.runs);
  report.throughput = throughput_series(report.runs);
  if (std::find(counts.begin(), counts.end(), std::size_t{0}) != counts.end()) {
    std::vector<ThroughputPoint> zero;
    for (const sched::Scheme scheme : schemes) zero.push_back({0, scheme, 0, 0.0, 0.0});
    report.throughput.insert(report.throughput.begin(), zero.begin(), zero.end());
  }
  return report;
}

}  // namespace wsnprio::harness
