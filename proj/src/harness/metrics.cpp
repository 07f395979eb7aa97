#include "wsnprio/harness/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "wsnprio/error.hpp"

namespace wsnprio::harness {

using engine::DropCause;
using engine::RecordKind;

namespace {

double nearest_rank(const std::vector<double>& sorted, double q) {
  if (sorted.empty()) return 0.0;
  const auto rank = static_cast<std::size_t>(std::ceil(q * static_cast<double>(sorted.size())));
  return sorted[std::clamp<std::size_t>(rank, 1, sorted.size()) - 1];
}

}  // namespace

std::vector<NodeId> execution_order(const engine::Trace& trace, std::int64_t event) {
  const auto& recs = trace.records;
  const auto it = std::find_if(recs.begin(), recs.end(), [&](const engine::TraceRecord& r) {
    return r.kind == RecordKind::Critical && r.count == event;
  });
  if (it == recs.end()) throw EventNotFound("critical event " + std::to_string(event));
  std::vector<NodeId> order;
  std::set<std::int64_t> seen;
  for (auto r = it; r != recs.end(); ++r) {
    if (r->kind != RecordKind::Granted || r->time < it->time) continue;
    if (seen.insert(r->node).second) order.push_back(NodeId{static_cast<std::uint32_t>(r->node)});
  }
  return order;
}

std::size_t rank_of(const std::vector<NodeId>& order, NodeId node) {
  const auto it = std::find(order.begin(), order.end(), node);
  return static_cast<std::size_t>(it - order.begin()) + 1;
}

std::uint64_t terminal_count(const MetricsReport& m) {
  std::uint64_t n = m.on_time + m.deadline_miss;
  for (const auto& [cause, count] : m.drops) n += count;
  return n;
}

MetricsReport compute_metrics(const engine::Trace& trace, SimTime session) {
  MetricsReport m;
  for (const DropCause c : {DropCause::QueueOverflow, DropCause::NoRoute, DropCause::Expired, DropCause::Gated,
                            DropCause::Starved}) {
    m.drops[c] = 0;
  }
  std::vector<double> delays;
  double delivered_bits = 0.0;
  std::vector<std::int64_t> events;

  for (const auto& r : trace.records) {
    switch (r.kind) {
      case RecordKind::Generated:
        ++m.generated;
        ++m.flows[r.flow].generated;
        break;
      case RecordKind::Delivered:
        ++m.delivered;
        if (r.flag) {
          ++m.on_time;
          ++m.flows[r.flow].on_time;
        } else {
          ++m.deadline_miss;
          ++m.flows[r.flow].late;
        }
        delays.push_back(r.value);
        delivered_bits += 8.0 * static_cast<double>(r.count);
        m.energy[r.node].push_back({r.time, r.value2});
        break;
      case RecordKind::Dropped:
        ++m.drops[r.cause];
        break;
      case RecordKind::LinkBroken:
        ++m.link_breaks;
        break;
      case RecordKind::Orphaned:
        ++m.orphaned;
        break;
      case RecordKind::Enqueued:
        m.max_queue = std::max<std::uint64_t>(m.max_queue, static_cast<std::uint64_t>(std::max<std::int64_t>(r.count, 0)));
        break;
      case RecordKind::Transmitted:
      case RecordKind::Relayed:
      case RecordKind::Energy:
        m.energy[r.node].push_back({r.time, r.value});
        break;
      case RecordKind::Critical:
        events.push_back(r.count);
        break;
      default:
        break;
    }
  }

  for (auto& [id, f] : m.flows) {
    f.pdr = f.generated ? static_cast<double>(f.on_time) / static_cast<double>(f.generated) : 0.0;
  }
  m.pdr = m.generated ? static_cast<double>(m.on_time) / static_cast<double>(m.generated) : 0.0;
  if (!delays.empty()) {
    double sum = 0.0;
    for (const double d : delays) sum += d;
    m.mean_delay = sum / static_cast<double>(delays.size());
    std::sort(delays.begin(), delays.end());
    m.p50_delay = nearest_rank(delays, 0.50);
    m.p95_delay = nearest_rank(delays, 0.95);
  }
  m.throughput_kbps = session > 0.0 ? delivered_bits / session / 1000.0 : 0.0;
  for (const std::int64_t e : events) m.execution_orders[e] = execution_order(trace, e);
  return m;
}

}  // namespace wsnprio::harness
