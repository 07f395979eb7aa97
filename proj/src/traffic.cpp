#include "wsnprio/traffic.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "wsnprio/error.hpp"

namespace wsnprio::traffic {

void Flow::validate(SimTime session) const {
  const std::string name = "flow " + std::to_string(id.value);
  if (!(interval > 0.0)) throw InvalidArgument(name + ": interval must be > 0");
  if (!(start >= 0.0 && start < stop)) throw InvalidArgument(name + ": start must be in [0, stop)");
  if (!(stop <= session)) throw InvalidArgument(name + ": stop exceeds the session duration");
  if (src == dst) throw InvalidArgument(name + ": src equals dst");
  params.validate();
}

std::vector<CbrEmission> generate_cbr(const Flow& flow, SimTime until) {
  std::vector<CbrEmission> out;
  const SimTime limit = std::min(flow.stop, until);
  if (limit <= flow.start) return out;
  // The tolerance admits an emission that lands on the limit up to rounding.
  const double span = (limit - flow.start) / flow.interval;
  const auto count = static_cast<std::uint64_t>(std::floor(span + 1e-9));
  out.reserve(count);
  for (std::uint64_t k = 1; k <= count; ++k) {
    out.push_back({k, flow.start + static_cast<double>(k) * flow.interval});
  }
  return out;
}

EnqueueOutcome NodeQueue::enqueue(Packet packet, sched::PriorityIndex key, SimTime now) {
  if (now >= packet.deadline) {
    return {EnqueueStatus::Expired, std::move(packet)};
  }
  const auto pos = std::upper_bound(entries_.begin(), entries_.end(), key,
                                    [](const sched::PriorityIndex& k, const Entry& e) { return k < e.key; });
  const bool is_tail = pos == entries_.end();
  if (entries_.size() < capacity_) {
    entries_.insert(pos, Entry{std::move(packet), key});
    return {EnqueueStatus::Admitted, std::nullopt};
  }
  if (is_tail || capacity_ == 0) return {EnqueueStatus::DroppedNew, std::move(packet)};
  entries_.insert(pos, Entry{std::move(packet), key});
  Packet victim = std::move(entries_.back().packet);
  entries_.pop_back();
  return {EnqueueStatus::EvictedOther, std::move(victim)};
}

void NodeQueue::rekey(const std::function<sched::PriorityIndex(const Packet&)>& key_of) {
  for (auto& e : entries_) e.key = key_of(e.packet);
  std::stable_sort(entries_.begin(), entries_.end(), [](const Entry& a, const Entry& b) { return a.key < b.key; });
}

std::vector<Packet> NodeQueue::remove_if(const std::function<bool(const Packet&)>& pred) {
  std::vector<Packet> removed;
  std::vector<Entry> kept;
  kept.reserve(entries_.size());
  for (auto& e : entries_) {
    if (pred(e.packet)) {
      removed.push_back(std::move(e.packet));
    } else {
      kept.push_back(std::move(e));
    }
  }
  entries_ = std::move(kept);
  return removed;
}

std::optional<Packet> NodeQueue::pop_best_if(const std::function<bool(const Packet&)>& pred) {
  const auto it = std::find_if(entries_.begin(), entries_.end(), [&](const Entry& e) { return pred(e.packet); });
  if (it == entries_.end()) return std::nullopt;
  Packet p = std::move(it->packet);
  entries_.erase(it);
  return p;
}

PdrTracker::PdrTracker(std::size_t window) : window_(window) {
  if (window == 0) throw InvalidArgument("pdr window must be >= 1");
}

void PdrTracker::record_outcome(bool delivered_within_deadline) {
  recent_.push_back(delivered_within_deadline);
  if (delivered_within_deadline) ++delivered_in_window_;
  if (recent_.size() > window_) {
    if (recent_.front()) --delivered_in_window_;
    recent_.pop_front();
  }
  ++total_;
}

double PdrTracker::pdr() const noexcept {
  if (recent_.empty()) return 1.0;
  return static_cast<double>(delivered_in_window_) / static_cast<double>(recent_.size());
}

namespace {

std::size_t id_span(const radio::ConnectivityGraph& graph) {
  return graph.nodes().empty() ? 0 : graph.nodes().back().value + 1;
}

std::vector<int> bfs_hops(const radio::ConnectivityGraph& graph, NodeId dst) {
  std::vector<int> hops(id_span(graph), -1);
  if (!graph.contains(dst)) return hops;
  std::deque<NodeId> frontier{dst};
  hops[dst.value] = 0;
  while (!frontier.empty()) {
    const NodeId u = frontier.front();
    frontier.pop_front();
    for (const auto& nb : graph.neighbors(u)) {
      if (hops[nb.id.value] >= 0) continue;
      hops[nb.id.value] = hops[u.value] + 1;
      frontier.push_back(nb.id);
    }
  }
  return hops;
}

std::optional<NodeId> closer_neighbor(const radio::ConnectivityGraph& graph, const std::vector<int>& hops,
                                      NodeId from) {
  if (from.value >= hops.size() || hops[from.value] <= 0) return std::nullopt;
  // Adjacency is sorted by id, so the first match is the smallest id.
  for (const auto& nb : graph.neighbors(from)) {
    if (hops[nb.id.value] == hops[from.value] - 1) return nb.id;
  }
  return std::nullopt;
}

}  // namespace

std::optional<std::vector<NodeId>> shortest_hop_route(const radio::ConnectivityGraph& graph, NodeId src,
                                                      NodeId dst) {
  if (!graph.contains(src) || !graph.contains(dst)) throw UnknownNode("route endpoint not in graph");
  if (src == dst) return std::vector<NodeId>{src};
  const std::vector<int> hops = bfs_hops(graph, dst);
  if (hops[src.value] < 0) return std::nullopt;
  // Greedy smallest-id descent toward dst yields the lexicographically
  // smallest among the minimum-hop paths.
  std::vector<NodeId> route{src};
  NodeId at = src;
  while (at != dst) {
    at = *closer_neighbor(graph, hops, at);
    route.push_back(at);
  }
  return route;
}

RoutingTable::RoutingTable(const radio::ConnectivityGraph& graph, NodeId dst) : dst_(dst), hops_(bfs_hops(graph, dst)) {
  next_.assign(hops_.size(), -1);
  for (const NodeId id : graph.nodes()) {
    if (const auto nh = closer_neighbor(graph, hops_, id)) next_[id.value] = nh->value;
  }
}

std::optional<int> RoutingTable::hops(NodeId from) const {
  if (from.value >= hops_.size() || hops_[from.value] < 0) return std::nullopt;
  return hops_[from.value];
}

std::optional<NodeId> RoutingTable::next_hop(NodeId from) const {
  if (from.value >= next_.size() || next_[from.value] < 0) return std::nullopt;
  return NodeId{static_cast<std::uint32_t>(next_[from.value])};
}

HopResult advance_hop(Packet packet, NodeId receiver, SimTime t) {
  HopResult r;
  packet.remaining_hops = std::max(0, packet.remaining_hops - 1);
  r.arrived = receiver == packet.dst;
  if (r.arrived) {
    r.delay = t - packet.created;
    r.on_time = t <= packet.deadline;
  }
  r.packet = std::move(packet);
  return r;
}

}  // namespace wsnprio::traffic
