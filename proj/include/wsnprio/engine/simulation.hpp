#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "wsnprio/config.hpp"
#include "wsnprio/energy.hpp"
#include "wsnprio/engine/event_queue.hpp"
#include "wsnprio/engine/random.hpp"
#include "wsnprio/engine/trace.hpp"
#include "wsnprio/mobility.hpp"
#include "wsnprio/radio.hpp"
#include "wsnprio/scheduler.hpp"
#include "wsnprio/traffic.hpp"

namespace wsnprio::engine {

struct DrawRecord {
  std::uint64_t draws{0};
  std::uint64_t digest{0};
  bool operator==(const DrawRecord&) const = default;
};

/// One simulation run: a validated scenario, a master seed and a scheme.
/// Owns all of its state; independent runs may execute concurrently.
class Simulation {
 public:
  Simulation(const ScenarioConfig& config, std::uint64_t seed, sched::Scheme scheme);

  /// Processes every event with time <= t (never beyond the session).
  void advance_to(SimTime t);
  /// Runs to the end of the session, terminates packets still in the system
  /// and returns the trace. Subsequent calls return the same trace.
  const Trace& finish();

  [[nodiscard]] const Trace& trace() const noexcept { return trace_; }
  [[nodiscard]] SimTime now() const noexcept { return queue_.clock(); }
  [[nodiscard]] std::uint64_t seed() const noexcept { return seed_; }
  [[nodiscard]] sched::Scheme scheme() const noexcept { return scheme_; }
  [[nodiscard]] const ScenarioConfig& config() const noexcept { return config_; }
  [[nodiscard]] const mobility::ClassSnapshot& classes() const noexcept { return classes_; }
  [[nodiscard]] const sched::SlotGrid& grid() const noexcept { return grid_; }
  [[nodiscard]] const std::vector<traffic::Flow>& flows() const noexcept { return flows_; }
  [[nodiscard]] const std::vector<NodeKind>& kinds() const noexcept { return kinds_; }
  [[nodiscard]] std::size_t node_count() const noexcept { return kinds_.size(); }
  [[nodiscard]] const traffic::NodeQueue& queue(NodeId node) const;
  [[nodiscard]] std::size_t queue_length(NodeId node) const { return queue(node).size(); }
  [[nodiscard]] double energy(NodeId node) const;
  [[nodiscard]] Position position(NodeId node) const;
  [[nodiscard]] const radio::RadioParams& radio() const noexcept { return radio_; }
  [[nodiscard]] double effective_range() const;
  [[nodiscard]] std::optional<NodeId> designated_node(std::size_t event) const;
  [[nodiscard]] const EventQueue& events() const noexcept { return queue_; }

  /// Per-purpose count and combined digest of every draw made so far.
  [[nodiscard]] std::map<Purpose, DrawRecord> draw_digests() const;

 private:
  struct InFlight {
    traffic::Packet packet;
    NodeId sender;
    NodeId receiver;
  };

  void setup_nodes();
  void setup_flows();
  void schedule_initial();

  void handle(const Event& ev);
  void on_generated(SimTime t, const PacketGenerated& e);
  void on_frame(SimTime t, const FrameBoundary& e);
  void on_tick(SimTime t, const MobilityTick& e);
  void on_critical(SimTime t, const CriticalEvent& e);
  void on_delivered(SimTime t, const PacketDelivered& e);
  void on_depleted(SimTime t, const EnergyDepleted& e);

  [[nodiscard]] bool alive(NodeId n) const { return !batteries_[n.value].depleted(); }
  void rebuild_routes(SimTime t);
  [[nodiscard]] std::optional<int> hops_to(NodeId from, NodeId dst) const;
  [[nodiscard]] std::optional<NodeId> next_hop(NodeId from, NodeId dst) const;
  [[nodiscard]] sched::PriorityIndex key_of(NodeId node, const traffic::Packet& p, SimTime t) const;
  void refresh_queue(NodeId node, SimTime t, bool count_route_misses);
  void admit(NodeId node, traffic::Packet packet, SimTime t);
  void drop(SimTime t, NodeId node, const traffic::Packet& p, DropCause cause);
  [[nodiscard]] std::vector<sched::PriorityTuple> candidates(SimTime t, std::int64_t frame);
  void charge(SimTime t, NodeId node, const energy::Consumption& c);

  ScenarioConfig config_;
  std::uint64_t seed_;
  sched::Scheme scheme_;
  radio::RadioParams radio_;

  std::vector<NodeKind> kinds_;
  std::vector<NetworkId> network_of_;
  std::vector<energy::BatteryState> batteries_;
  mobility::MobilityField field_;
  std::vector<RandomStream> placement_;
  RandomStream traffic_rng_;
  std::vector<RandomStream> importance_;

  std::vector<traffic::Flow> flows_;
  std::vector<traffic::PdrTracker> pdr_;
  std::vector<std::optional<NodeId>> designated_;  // per critical event
  std::vector<traffic::NodeQueue> queues_;
  std::map<std::uint64_t, InFlight> in_flight_;
  std::uint64_t next_transmission_{0};
  std::uint64_t next_packet_{0};

  radio::ConnectivityGraph graph_;
  std::map<NodeId, traffic::RoutingTable> routes_;
  mobility::ClassSnapshot classes_;
  std::map<NetworkId, int> n1_;
  sched::SlotGrid grid_;

  EventQueue queue_;
  Trace trace_;
  bool finished_{false};
};

}  // namespace wsnprio::engine
