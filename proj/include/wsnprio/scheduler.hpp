#pragma once

#include <compare>
#include <cstddef>
#include <limits>
#include <map>
#include <optional>
#include <span>
#include <string_view>
#include <variant>
#include <vector>

#include "wsnprio/mobility.hpp"
#include "wsnprio/radio.hpp"
#include "wsnprio/types.hpp"

namespace wsnprio::sched {

// ---------------------------------------------------------------------------
// Priority index. Lower value means higher priority.

struct PriorityIndex {
  double value{0.0};

  /// Value used for gated packets: loses against every finite index.
  static constexpr PriorityIndex sentinel() { return {std::numeric_limits<double>::infinity()}; }
  [[nodiscard]] bool gated() const noexcept { return value == std::numeric_limits<double>::infinity(); }

  auto operator<=>(const PriorityIndex&) const = default;
};

struct FlowParams {
  double desired_pdr{0.9};    // M
  double pdr_threshold{0.25};
  double deadline_budget{5.0};  // s

  void validate() const;
};

struct Ulb {
  double value{0.0};
  bool expired{false};
};

/// Laxity budget per remaining hop: max(0, deadline - now) / 2^hops.
/// `expired` is set once now >= deadline. Throws InvalidArgument for hops < 0.
Ulb compute_ulb(SimTime deadline, SimTime now, int remaining_hops);

/// pdr strictly below the flow's threshold gates the packet to the sentinel.
PriorityIndex pdr_gate(PriorityIndex pi, double pdr, const FlowParams& flow);

/// MDLPS index (pdr / M) * ulb * (1 / v) * x, then gated.
/// Throws ZeroVelocity at v == 0 and InvalidArgument for v < 0, x < 1 or pdr
/// outside [0, 1]. Callers apply the velocity floor first.
PriorityIndex compute_pi_mdlps(double pdr, const FlowParams& flow, double ulb, double v, double x);

/// max(v, floor): keeps paused nodes finite in the 1/v term.
inline double floored_velocity(double v, double floor) { return v < floor ? floor : v; }

enum class Scheme : std::uint8_t { Mdlps, DataPriority };

std::string_view to_string(Scheme scheme);
std::optional<Scheme> scheme_from(std::string_view name);

// ---------------------------------------------------------------------------
// Data-importance priority.

struct DataCandidate {
  NodeId node;
  double importance{1.0};
  mobility::MobilityClass mobility{mobility::MobilityClass::Low};
  int battery_level{1};

  bool operator==(const DataCandidate&) const = default;
};

/// 1 / importance. Throws InvalidArgument unless importance > 0.
PriorityIndex compute_pi_data(double importance);

/// High mobility ranks first.
int mobility_rank(mobility::MobilityClass c);
/// The lowest above-threshold level ranks first; below-threshold (level 0) last.
int battery_rank(int battery_level);

/// Ordering of the data scheme: index ascending, then faster class, then
/// lower battery level, then node id.
bool data_before(const DataCandidate& a, const DataCandidate& b);

// ---------------------------------------------------------------------------
// Priority tuples (N1, N2).

struct PriorityTuple {
  int n1{1};               // network rank, 1 is best
  PriorityIndex n2;        // node index inside the network
  int mobility_key{0};     // data scheme tie-breaks; zero under MDLPS
  int battery_key{0};
  NodeId node;

  friend bool operator<(const PriorityTuple& a, const PriorityTuple& b) {
    if (a.n1 != b.n1) return a.n1 < b.n1;
    if (a.n2.value != b.n2.value) return a.n2.value < b.n2.value;
    if (a.mobility_key != b.mobility_key) return a.mobility_key < b.mobility_key;
    if (a.battery_key != b.battery_key) return a.battery_key < b.battery_key;
    return a.node < b.node;
  }
  bool operator==(const PriorityTuple&) const = default;
};

struct MdlpsInputs {
  double pdr{1.0};
  FlowParams flow;
  double ulb{0.0};
  double velocity{1.0};
  double battery_factor{1.0};
};

struct DataInputs {
  double importance{1.0};
  mobility::MobilityClass mobility{mobility::MobilityClass::Low};
  int battery_level{1};
};

using SchemeInputs = std::variant<MdlpsInputs, DataInputs>;

/// Throws UnknownNetwork if `network` has no rank.
PriorityTuple priority_tuple(NodeId node, NetworkId network, const std::map<NetworkId, int>& n1_ranks,
                             const SchemeInputs& inputs);

/// Returns the tuples in scheduling order.
std::vector<PriorityTuple> rank_candidates(std::span<const PriorityTuple> candidates);

// ---------------------------------------------------------------------------
// Network ranking at a critical event.

struct NetworkInfo {
  NetworkId id;
  double bandwidth{1e6};  // bit/s
  std::vector<Position> members;
};

struct CriticalArea {
  Position center;
  double radius{400.0};
};

struct NetworkWeights {
  double density{0.7};
  double bandwidth{0.3};
};

struct NetworkRanking {
  std::map<NetworkId, int> ranks;
  std::map<NetworkId, double> scores;
  bool empty_area{false};  // nobody in the area: ranked on bandwidth alone
};

/// score = w_d * (members in area / all in-area nodes) + w_b * (bandwidth / max bandwidth);
/// ranks by descending score, ties by network id. Throws InvalidArgument for
/// radius <= 0 or invalid weights.
NetworkRanking network_priority(std::span<const NetworkInfo> networks, const CriticalArea& area,
                                const NetworkWeights& weights);

// ---------------------------------------------------------------------------
// TDMA/FDMA positions.

/// F frequencies x S slots per frame. Positions are scanned slot by slot and,
/// within a slot, by frequency; scan index = slot * F + frequency.
class SlotGrid {
 public:
  struct Cell {
    int freq{0};
    int slot{0};
  };

  /// Throws EmptyGrid if F * S == 0, InvalidArgument for a bad frame length.
  SlotGrid(int frequencies, int slots_per_frame, double frame_length);

  [[nodiscard]] int frequencies() const noexcept { return frequencies_; }
  [[nodiscard]] int slots_per_frame() const noexcept { return slots_; }
  [[nodiscard]] double frame_length() const noexcept { return frame_length_; }
  [[nodiscard]] double slot_length() const noexcept { return frame_length_ / slots_; }
  [[nodiscard]] std::size_t positions() const noexcept { return assignment_.size(); }
  [[nodiscard]] Cell cell(std::size_t scan_index) const;
  [[nodiscard]] const std::vector<std::optional<NodeId>>& assignment() const noexcept { return assignment_; }
  [[nodiscard]] std::optional<NodeId> holder(int freq, int slot) const;
  [[nodiscard]] bool holds(NodeId node) const;
  [[nodiscard]] SimTime frozen_since() const noexcept { return frozen_since_; }
  [[nodiscard]] bool allocation_open() const noexcept { return open_; }

  /// Marks the start of a critical event; permits exactly one allocation.
  void open_allocation() noexcept { open_ = true; }

  bool operator==(const SlotGrid&) const = default;

 private:
  friend SlotGrid allocate_slots(std::span<const PriorityTuple>, SlotGrid, SimTime);

  int frequencies_;
  int slots_;
  double frame_length_;
  std::vector<std::optional<NodeId>> assignment_;
  SimTime frozen_since_{0.0};
  bool open_{true};
};

/// Freezes the best min(|sources|, F*S) sources onto the grid in scan order.
/// Throws FrozenGrid unless the grid was opened for a new critical event.
SlotGrid allocate_slots(std::span<const PriorityTuple> sources, SlotGrid grid, SimTime t);

struct Vacancy {
  std::size_t scan_index{};
  NodeId node;
};

/// Per-frame use of positions left empty by the last allocation: the best
/// non-holders take them in scan order. The frozen assignment is untouched.
std::vector<Vacancy> fill_vacancies(const SlotGrid& grid, std::span<const PriorityTuple> candidates);

// ---------------------------------------------------------------------------
// Cluster-head importance checks.

struct ClusterReport {
  NodeId head;
  std::vector<DataCandidate> members;
};

struct ReportingNode {
  DataCandidate candidate;
  Position position;
};

struct ClusterAssignment {
  std::vector<ClusterReport> reports;  // ordered by head id
  std::vector<NodeId> orphans;         // sensors with no in-range head
};

/// Each node reports to the nearest in-range head (ties: lower id). A head
/// reports to itself.
ClusterAssignment assign_to_clusters(std::span<const ReportingNode> nodes, std::span<const radio::GraphNode> heads,
                                     const radio::RadioParams& params);

/// Each head orders its members with data_before; the per-head lists are then
/// merged into one global order.
std::vector<DataCandidate> global_importance_ranking(std::span<const ClusterReport> reports);

}  // namespace wsnprio::sched
