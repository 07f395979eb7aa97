#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include "wsnprio/engine/trace.hpp"
#include "wsnprio/types.hpp"

namespace wsnprio::harness {

struct FlowMetrics {
  std::uint64_t generated{0};
  std::uint64_t on_time{0};
  std::uint64_t late{0};
  /// Delivered within the deadline over generated.
  double pdr{0.0};
  bool operator==(const FlowMetrics&) const = default;
};

struct EnergySample {
  SimTime time{};
  double level{};
  bool operator==(const EnergySample&) const = default;
};

/// Everything here is a function of the trace (and the session length, for
/// rates).
struct MetricsReport {
  std::uint64_t generated{0};
  std::uint64_t delivered{0};  // reached the destination, on time or late
  std::uint64_t on_time{0};
  std::uint64_t deadline_miss{0};
  std::map<engine::DropCause, std::uint64_t> drops;
  std::uint64_t link_breaks{0};
  std::uint64_t orphaned{0};
  std::map<std::int64_t, FlowMetrics> flows;
  double pdr{0.0};
  double mean_delay{0.0};
  double p50_delay{0.0};
  double p95_delay{0.0};
  /// Payload kbit/s of packets delivered to their final destination.
  double throughput_kbps{0.0};
  std::uint64_t max_queue{0};
  /// Node ids by first grant after each critical event, indexed by event.
  std::map<std::int64_t, std::vector<NodeId>> execution_orders;
  std::map<std::int64_t, std::vector<EnergySample>> energy;

  bool operator==(const MetricsReport&) const = default;
};

MetricsReport compute_metrics(const engine::Trace& trace, SimTime session);

/// Node ids ordered by their first grant at or after critical event `event`.
/// Throws EventNotFound if the trace has no such event.
std::vector<NodeId> execution_order(const engine::Trace& trace, std::int64_t event);

/// 1-based position of `node` in `order`; order.size() + 1 when absent.
std::size_t rank_of(const std::vector<NodeId>& order, NodeId node);

/// Terminal fates: on-time and late deliveries plus drops of every cause.
std::uint64_t terminal_count(const MetricsReport& m);

}  // namespace wsnprio::harness
