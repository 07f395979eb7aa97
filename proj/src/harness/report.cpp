#include "wsnprio/harness/report.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "wsnprio/error.hpp"
#include "wsnprio/harness/config_io.hpp"

namespace wsnprio::harness {

namespace {

using engine::format_double;

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (const char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path.string());
  out << content;
  out.close();
  if (!out) throw IoError("failed writing " + path.string());
}

bool swept(const ExperimentReport& report) {
  std::set<std::size_t> counts;
  for (const auto& r : report.runs) counts.insert(r.connections);
  return counts.size() > 1;
}

std::string trace_name(const RunResult& r, bool with_connections) {
  std::string name = std::string(sched::to_string(r.scheme)) + "-" + std::to_string(r.seed);
  if (with_connections) name += "-n" + std::to_string(r.connections);
  return name + ".jsonl";
}

}  // namespace

std::string summary_csv(const ExperimentReport& report) {
  std::ostringstream out;
  out << "connections,seed,scheme,status,error,generated,delivered,on_time,deadline_miss,overflow,noroute,expired,"
         "gated,starved,link_breaks,orphaned,pdr,mean_delay,p50_delay,p95_delay,throughput_kbps,max_queue,"
         "designated,designated_rank\n";
  for (const auto& r : report.runs) {
    out << r.connections << ',' << r.seed << ',' << sched::to_string(r.scheme) << ',';
    if (!r.metrics) {
      out << "failed," << csv_field(r.error) << std::string(19, ',') << '\n';
      continue;
    }
    const auto& m = *r.metrics;
    out << "ok,," << m.generated << ',' << m.delivered << ',' << m.on_time << ',' << m.deadline_miss << ','
        << m.drops.at(engine::DropCause::QueueOverflow) << ',' << m.drops.at(engine::DropCause::NoRoute) << ','
        << m.drops.at(engine::DropCause::Expired) << ',' << m.drops.at(engine::DropCause::Gated) << ','
        << m.drops.at(engine::DropCause::Starved) << ',' << m.link_breaks << ',' << m.orphaned << ','
        << format_double(m.pdr) << ',' << format_double(m.mean_delay) << ',' << format_double(m.p50_delay) << ','
        << format_double(m.p95_delay) << ',' << format_double(m.throughput_kbps) << ',' << m.max_queue << ',';
    const auto order = m.execution_orders.find(0);
    if (r.designated && order != m.execution_orders.end()) {
      out << r.designated->value << ',' << rank_of(order->second, *r.designated);
    } else {
      out << ',';
    }
    out << '\n';
  }
  return out.str();
}

std::string aggregate_csv(const ExperimentReport& report) {
  std::ostringstream out;
  out << "metric,scheme,runs,mean,stddev\n";
  for (const auto& s : report.summary) {
    out << s.metric << ',' << sched::to_string(s.scheme) << ',' << s.runs << ',' << format_double(s.mean) << ','
        << format_double(s.stddev) << '\n';
  }
  return out.str();
}

std::string throughput_csv(const ExperimentReport& report) {
  std::ostringstream out;
  out << "connections,scheme,runs,kbps_mean,kbps_std\n";
  for (const auto& p : report.throughput) {
    out << p.connections << ',' << sched::to_string(p.scheme) << ',' << p.runs << ',' << format_double(p.mean_kbps)
        << ',' << format_double(p.stddev_kbps) << '\n';
  }
  return out.str();
}

std::string exec_order_csv(const ExperimentReport& report) {
  std::ostringstream out;
  out << "connections,seed,scheme,event,rank,node\n";
  for (const auto& r : report.runs) {
    if (!r.metrics) continue;
    for (const auto& [event, order] : r.metrics->execution_orders) {
      for (std::size_t i = 0; i < order.size(); ++i) {
        out << r.connections << ',' << r.seed << ',' << sched::to_string(r.scheme) << ',' << event << ',' << i + 1
            << ',' << order[i].value << '\n';
      }
    }
  }
  return out.str();
}

std::string run_header(const ExperimentReport& report) {
  std::ostringstream out;
  std::set<std::string> schemes;
  std::ostringstream scheme_list;
  for (const auto& r : report.runs) {
    const std::string s(sched::to_string(r.scheme));
    if (schemes.insert(s).second) scheme_list << (schemes.size() > 1 ? "," : "") << s;
  }
  out << "runs: " << report.runs.size() << '\n';
  out << "schemes: " << scheme_list.str() << '\n';
  out << "seeds:";
  for (std::size_t i = 0; i < report.config.seeds.size(); ++i) out << (i ? "," : " ") << report.config.seeds[i];
  out << '\n';
  out << "effective_radio_range_m: " << format_double(report.effective_range) << '\n';
  out << "throughput: payload bits of packets delivered to their final destination per second of session, "
         "kbit/s; relay hops are not counted\n";
  out << "config:\n" << dump_config(report.config);
  return out.str();
}

void emit_report(const ExperimentReport& report, const std::filesystem::path& out_dir) {
  std::error_code ec;
  std::filesystem::create_directories(out_dir / "traces", ec);
  if (ec) throw IoError("cannot create " + out_dir.string() + ": " + ec.message());
  write_file(out_dir / "summary.csv", summary_csv(report));
  write_file(out_dir / "aggregate.csv", aggregate_csv(report));
  write_file(out_dir / "throughput.csv", throughput_csv(report));
  write_file(out_dir / "exec_order.csv", exec_order_csv(report));
  write_file(out_dir / "run_header.txt", run_header(report));
  write_file(out_dir / "trace.jsonl", report.runs.empty() ? std::string() : engine::to_jsonl(report.runs.front().trace));
  const bool with_n = swept(report);
  for (const auto& r : report.runs) write_file(out_dir / "traces" / trace_name(r, with_n), engine::to_jsonl(r.trace));
}

}  // namespace wsnprio::harness
