#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "wsnprio/energy.hpp"
#include "wsnprio/mobility.hpp"
#include "wsnprio/radio.hpp"
#include "wsnprio/scheduler.hpp"
#include "wsnprio/types.hpp"

namespace wsnprio {

struct GridConfig {
  int frequencies{2};
  int slots_per_frame{4};
  double frame_length{0.5};  // s
};

struct RadioConfig {
  double tx_power{0.28183815};
  double tx_gain{1.0};
  double rx_gain{1.0};
  double antenna_height_tx{1.5};
  double antenna_height_rx{1.5};
  double system_loss{1.0};
  double frequency{914e6};  // Hz
  double nominal_range{800.0};  // m, used when rx_threshold is unset
  std::optional<double> rx_threshold;

  /// Parameters with the wavelength and reception threshold filled in.
  [[nodiscard]] radio::RadioParams resolved() const;
};

struct EnergyConfig {
  energy::EnergyCosts costs;
  double hard_threshold{10.0};
  int levels_above{3};
  double level_penalty{0.25};
};

struct MobilityConfig {
  mobility::MotionParams motion;
  double tick{0.1};
  mobility::ClassThresholds classes;
  double patrol_side{80.0};  // side of the square patrolled by controlled nodes
};

enum class GateMode : std::uint8_t { Sentinel, Drop };

struct PriorityConfig {
  double v_floor{0.1};
  GateMode gate_mode{GateMode::Sentinel};
  sched::NetworkWeights network_weights;
  std::size_t pdr_window{20};
};

struct FlowSpec {
  NodeId src;
  std::optional<NodeId> dst;  // defaults to the base station
  std::optional<double> interval;
  std::optional<SimTime> start;
  std::optional<SimTime> stop;
};

struct FlowsConfig {
  /// Number of auto-generated flows when `list` is empty.
  std::size_t connections{10};
  sched::FlowParams params;
  SimTime start{0.0};
  std::optional<SimTime> stop;  // defaults to the session duration
  std::vector<FlowSpec> list;
};

struct CriticalEventSpec {
  SimTime time{10.0};
  Position center{1000.0, 1000.0};
  double radius{400.0};
  std::optional<NodeId> designated_node;
  std::optional<std::size_t> designated_flow;  // designates that flow's source
  double designated_importance{1.0};
};

struct NetworkSpec {
  NetworkId id;
  double bandwidth{1e6};
  std::vector<NodeId> nodes;
};

struct NodeOverride {
  NodeId id;
  std::optional<NodeKind> kind;
  std::optional<Position> start;
  std::optional<std::vector<Position>> patrol;  // controlled motion, first point is the start
  std::optional<double> speed;                  // patrol speed
  std::optional<double> energy;                 // starting charge (J)
};

/// Complete scenario description. Defaults reproduce the reference setup:
/// 2000 x 2000 m, 22 mobile nodes, 100 s, queue 50, 50 J, 1000 B packets,
/// CBR every 0.5 s.
struct ScenarioConfig {
  Terrain terrain{2000.0, 2000.0};
  std::uint32_t node_count{22};
  std::uint32_t cluster_heads{4};
  SimTime session{100.0};
  std::size_t queue_capacity{50};
  double initial_energy{50.0};
  std::uint32_t packet_size{1000};
  double cbr_interval{0.5};
  sched::Scheme scheduler{sched::Scheme::DataPriority};

  GridConfig grid;
  RadioConfig radio;
  EnergyConfig energy;
  MobilityConfig mobility;
  PriorityConfig priority;
  FlowsConfig flows;
  std::vector<CriticalEventSpec> critical_events{CriticalEventSpec{}};
  std::vector<NetworkSpec> networks;
  std::vector<NodeOverride> nodes;
  std::vector<std::uint64_t> seeds{1};
};

/// Throws ValidationError naming the offending field.
void validate(const ScenarioConfig& config);

}  // namespace wsnprio
