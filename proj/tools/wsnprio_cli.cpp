#include <charconv>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "wsnprio/error.hpp"
#include "wsnprio/harness/config_io.hpp"
#include "wsnprio/harness/experiment.hpp"
#include "wsnprio/harness/metrics.hpp"
#include "wsnprio/harness/report.hpp"

namespace {

using namespace wsnprio;

std::uint64_t parse_u64(const std::string& s) {
  std::uint64_t v = 0;
  const auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || end != s.data() + s.size()) throw InvalidArgument("bad seed '" + s + "'");
  return v;
}

// "N" means seeds 1..N; anything with a comma is an explicit list.
std::vector<std::uint64_t> parse_seeds(const std::string& spec) {
  std::vector<std::uint64_t> out;
  if (spec.find(',') == std::string::npos) {
    const std::uint64_t n = parse_u64(spec);
    if (n == 0) throw InvalidArgument("seed count must be >= 1");
    for (std::uint64_t i = 1; i <= n; ++i) out.push_back(i);
    return out;
  }
  std::size_t start = 0;
  while (start <= spec.size()) {
    const std::size_t comma = std::min(spec.find(',', start), spec.size());
    const std::string item = spec.substr(start, comma - start);
    if (!item.empty()) out.push_back(parse_u64(item));
    start = comma + 1;
  }
  if (out.empty()) throw InvalidArgument("empty seed list");
  return out;
}

std::vector<sched::Scheme> parse_schemes(const std::string& name, sched::Scheme fallback) {
  if (name.empty()) return {fallback};
  if (name == "both") return {sched::Scheme::Mdlps, sched::Scheme::DataPriority};
  const auto s = sched::scheme_from(name);
  if (!s) throw InvalidArgument("unknown scheduler '" + name + "'");
  return {*s};
}

int replay(const std::string& path, const std::string& metric, double session, std::int64_t event) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  const engine::Trace trace = engine::parse_jsonl(in);
  const harness::MetricsReport m = harness::compute_metrics(trace, session);
  using engine::format_double;
  if (metric == "generated") {
    std::cout << m.generated << '\n';
  } else if (metric == "delivered") {
    std::cout << m.delivered << '\n';
  } else if (metric == "on_time") {
    std::cout << m.on_time << '\n';
  } else if (metric == "pdr") {
    std::cout << format_double(m.pdr) << '\n';
  } else if (metric == "mean_delay") {
    std::cout << format_double(m.mean_delay) << '\n';
  } else if (metric == "p50_delay") {
    std::cout << format_double(m.p50_delay) << '\n';
  } else if (metric == "p95_delay") {
    std::cout << format_double(m.p95_delay) << '\n';
  } else if (metric == "throughput") {
    std::cout << format_double(m.throughput_kbps) << '\n';
  } else if (metric == "max_queue") {
    std::cout << m.max_queue << '\n';
  } else if (metric == "drops") {
    for (const auto& [cause, n] : m.drops) std::cout << engine::to_string(cause) << ',' << n << '\n';
  } else if (metric == "flows") {
    std::cout << "flow,generated,on_time,late,pdr\n";
    for (const auto& [id, f] : m.flows) {
      std::cout << id << ',' << f.generated << ',' << f.on_time << ',' << f.late << ',' << format_double(f.pdr) << '\n';
    }
  } else if (metric == "exec_order") {
    const auto order = harness::execution_order(trace, event);
    for (std::size_t i = 0; i < order.size(); ++i) std::cout << (i ? "," : "") << order[i].value;
    std::cout << '\n';
  } else if (metric == "energy") {
    std::cout << "node,time,level\n";
    for (const auto& [node, samples] : m.energy) {
      for (const auto& s : samples) std::cout << node << ',' << format_double(s.time) << ',' << format_double(s.level) << '\n';
    }
  } else {
    throw InvalidArgument("unknown metric '" + metric + "'");
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Mobile sensor network slot scheduling simulator"};
  app.require_subcommand(1);

  std::string config_path;
  std::string scheduler;
  std::string seeds;
  std::string out_dir;
  bool serial = false;

  auto* run = app.add_subcommand("run", "Run a scenario for a set of seeds");
  run->add_option("--config", config_path, "Scenario file (JSON)")->required();
  run->add_option("--scheduler", scheduler, "mdlps, data or both (default: from the config)");
  run->add_option("--seeds", seeds, "Seed count N (1..N) or comma list (default: from the config)");
  run->add_option("--out", out_dir, "Output directory")->required();
  run->add_flag("--serial", serial, "Run seeds one after another");

  std::size_t max_n = 10;
  auto* sweep = app.add_subcommand("sweep-connections", "Throughput against the number of connections");
  sweep->add_option("--config", config_path, "Scenario file (JSON)")->required();
  sweep->add_option("--max-n", max_n, "Largest connection count")->required();
  sweep->add_option("--scheduler", scheduler, "mdlps, data or both (default: from the config)");
  sweep->add_option("--seeds", seeds, "Seed count N (1..N) or comma list (default: from the config)");
  sweep->add_option("--out", out_dir, "Output directory")->required();
  sweep->add_flag("--serial", serial, "Run seeds one after another");

  std::string trace_path;
  std::string metric;
  double session = 100.0;
  std::int64_t event = 0;
  auto* rep = app.add_subcommand("replay", "Recompute a metric from a trace file");
  rep->add_option("--trace", trace_path, "trace.jsonl file")->required();
  rep->add_option("--metric", metric,
                  "generated, delivered, on_time, pdr, mean_delay, p50_delay, p95_delay, throughput, max_queue, "
                  "drops, flows, exec_order, energy")
      ->required();
  rep->add_option("--session", session, "Session length used for rates (s)");
  rep->add_option("--event", event, "Critical event index for exec_order");

  CLI11_PARSE(app, argc, argv);

  try {
    if (rep->parsed()) return replay(trace_path, metric, session, event);

    const ScenarioConfig config = harness::load_config(config_path);
    const auto schemes = parse_schemes(scheduler, config.scheduler);
    const auto seed_list = seeds.empty() ? config.seeds : parse_seeds(seeds);
    harness::RunOptions options;
    options.exec = serial ? harness::Execution::Serial : harness::Execution::Parallel;

    harness::ExperimentReport report;
    if (run->parsed()) {
      report = harness::run_experiment(config, seed_list, schemes, options);
    } else {
      std::vector<std::size_t> counts;
      for (std::size_t n = 1; n <= max_n; ++n) counts.push_back(n);
      report = harness::throughput_vs_connections(config, counts, seed_list, schemes, options);
    }
    harness::emit_report(report, out_dir);
    std::size_t failed = 0;
    for (const auto& r : report.runs) {
      if (!r.metrics) {
        ++failed;
        std::cerr << "run seed " << r.seed << " (" << sched::to_string(r.scheme) << ") failed: " << r.error << '\n';
      }
    }
    std::cout << "wrote " << report.runs.size() << " run(s) to " << out_dir << '\n';
    return failed == 0 ? 0 : 3;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: Internal: " << e.what() << '\n';
    return 2;
  }
}
