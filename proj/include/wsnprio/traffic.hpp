#pragma once

#include <cstddef>
#include <cstdint>
#include <deque>
#include <functional>
#include <optional>
#include <vector>

#include "wsnprio/radio.hpp"
#include "wsnprio/scheduler.hpp"
#include "wsnprio/types.hpp"

namespace wsnprio::traffic {

struct Packet {
  PacketId id;
  FlowId flow;
  NodeId src;
  NodeId dst;
  std::uint32_t size{1000};  // bytes
  SimTime created{0.0};
  SimTime deadline{0.0};
  double importance{0.1};
  int remaining_hops{0};
  int missed_routes{0};   // consecutive frames without a route
  int link_failures{0};   // broken-link retries already used

  bool operator==(const Packet&) const = default;
};

struct Flow {
  FlowId id;
  NodeId src;
  NodeId dst;
  double interval{0.5};
  sched::FlowParams params;
  SimTime start{0.0};
  SimTime stop{100.0};

  /// Throws InvalidArgument; `session` bounds `stop`.
  void validate(SimTime session) const;
};

struct CbrEmission {
  std::uint64_t index{};  // k = 1, 2, ...
  SimTime time{};
};

/// Emissions at start + k * interval for k >= 1 while the time is within
/// min(stop, until); the boundary itself is included.
std::vector<CbrEmission> generate_cbr(const Flow& flow, SimTime until);

// ---------------------------------------------------------------------------

enum class EnqueueStatus : std::uint8_t { Admitted, DroppedNew, EvictedOther, Expired };

struct EnqueueOutcome {
  EnqueueStatus status{EnqueueStatus::Admitted};
  std::optional<Packet> dropped;  // the overflow victim or the rejected packet
};

/// Bounded queue ordered by priority index; FIFO among equal keys.
class NodeQueue {
 public:
  struct Entry {
    Packet packet;
    sched::PriorityIndex key;
  };

  explicit NodeQueue(std::size_t capacity = 50) : capacity_(capacity) {}

  /// Inserts by key. When full the worst entry (possibly the new packet) is
  /// dropped. A packet whose deadline has passed at `now` is rejected.
  EnqueueOutcome enqueue(Packet packet, sched::PriorityIndex key, SimTime now);

  /// Recomputes every key and restores the order (stable).
  void rekey(const std::function<sched::PriorityIndex(const Packet&)>& key_of);

  /// Removes and returns every packet matching `pred`, preserving order.
  std::vector<Packet> remove_if(const std::function<bool(const Packet&)>& pred);

  /// Removes and returns the best packet satisfying `pred`.
  std::optional<Packet> pop_best_if(const std::function<bool(const Packet&)>& pred);

  template <class Fn>
  void for_each_mut(Fn&& fn) {
    for (auto& e : entries_) fn(e.packet);
  }

  [[nodiscard]] std::size_t size() const noexcept { return entries_.size(); }
  [[nodiscard]] bool empty() const noexcept { return entries_.empty(); }
  [[nodiscard]] std::size_t capacity() const noexcept { return capacity_; }
  [[nodiscard]] const std::vector<Entry>& entries() const noexcept { return entries_; }
  [[nodiscard]] const Entry* head() const { return entries_.empty() ? nullptr : &entries_.front(); }

 private:
  std::size_t capacity_;
  std::vector<Entry> entries_;
};

// ---------------------------------------------------------------------------

/// Delivered-within-deadline ratio over the last `window` outcomes.
class PdrTracker {
 public:
  explicit PdrTracker(std::size_t window = 20);

  void record_outcome(bool delivered_within_deadline);
  /// 1.0 until the first outcome.
  [[nodiscard]] double pdr() const noexcept;
  [[nodiscard]] std::size_t window() const noexcept { return window_; }
  [[nodiscard]] std::size_t outcomes() const noexcept { return total_; }

 private:
  std::size_t window_;
  std::deque<bool> recent_;
  std::size_t delivered_in_window_{0};
  std::size_t total_{0};
};

// ---------------------------------------------------------------------------

/// Minimum-hop path; among equal-hop paths the lexicographically smallest
/// node sequence. Empty optional when src and dst are disconnected.
std::optional<std::vector<NodeId>> shortest_hop_route(const radio::ConnectivityGraph& graph, NodeId src,
                                                      NodeId dst);

/// Next hops toward one destination for every node of a graph, derived from
/// a breadth-first search from the destination.
class RoutingTable {
 public:
  RoutingTable() = default;
  RoutingTable(const radio::ConnectivityGraph& graph, NodeId dst);

  [[nodiscard]] NodeId destination() const noexcept { return dst_; }
  /// Hop count to the destination, or nullopt when unreachable.
  [[nodiscard]] std::optional<int> hops(NodeId from) const;
  /// Smallest-id neighbor one hop closer to the destination.
  [[nodiscard]] std::optional<NodeId> next_hop(NodeId from) const;

 private:
  NodeId dst_;
  std::vector<int> hops_;          // indexed by node id, -1 unreachable
  std::vector<std::int64_t> next_;  // indexed by node id, -1 none
};

// ---------------------------------------------------------------------------

struct HopResult {
  Packet packet;
  bool arrived{false};   // reached dst
  bool on_time{false};   // arrived with t <= deadline
  double delay{0.0};     // t - created, when arrived
};

/// Moves a packet one hop to `receiver` at time t.
HopResult advance_hop(Packet packet, NodeId receiver, SimTime t);

}  // namespace wsnprio::traffic
