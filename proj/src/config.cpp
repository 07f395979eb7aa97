#include "wsnprio/config.hpp"

#include <set>
#include <string>

#include "wsnprio/error.hpp"

namespace wsnprio {

radio::RadioParams RadioConfig::resolved() const {
  radio::RadioParams p;
  p.tx_power = tx_power;
  p.tx_gain = tx_gain;
  p.rx_gain = rx_gain;
  p.antenna_height_tx = antenna_height_tx;
  p.antenna_height_rx = antenna_height_rx;
  p.system_loss = system_loss;
  p.wavelength = radio::kSpeedOfLight / frequency;
  p.rx_threshold = rx_threshold ? *rx_threshold : radio::threshold_for_range(p, nominal_range);
  return p;
}

namespace {

void require(bool ok, const std::string& field, const std::string& what) {
  if (!ok) throw ValidationError(field + " " + what);
}

template <class Fn>
void rethrow_as_validation(const std::string& field, Fn&& fn) {
  try {
    fn();
  } catch (const InvalidArgument& e) {
    throw ValidationError(field + ": " + e.what());
  }
}

NodeKind default_kind(const ScenarioConfig& c, std::uint32_t id) {
  if (id == 0) return NodeKind::BaseStation;
  if (id <= c.cluster_heads) return NodeKind::ClusterHead;
  return NodeKind::Sensor;
}

}  // namespace

void validate(const ScenarioConfig& c) {
  require(c.terrain.width > 0 && c.terrain.height > 0, "terrain_area (terrain)", "must be positive");
  require(c.node_count >= 2, "number_of_mobile_nodes (node_count)", "must be >= 2");
  require(c.cluster_heads + 2 <= c.node_count, "cluster_heads", "leaves no sensor nodes");
  require(c.session > 0, "session_duration (session)", "must be > 0");
  require(c.queue_capacity >= 1, "queue_size (queue_capacity)", "must be >= 1");
  require(c.initial_energy > 0, "initial_energy_level (initial_energy)", "must be > 0");
  require(c.packet_size >= 1, "packet_size", "must be >= 1");
  require(c.cbr_interval > 0, "cbr_interval", "must be > 0");

  require(c.grid.frequencies >= 1, "grid.frequencies", "must be >= 1");
  require(c.grid.slots_per_frame >= 1, "grid.slots_per_frame", "must be >= 1");
  require(c.grid.frame_length > 0, "grid.frame_length", "must be > 0");

  require(c.radio.frequency > 0, "radio.frequency", "must be > 0");
  require(c.radio.nominal_range > 0, "radio.nominal_range", "must be > 0");
  rethrow_as_validation("radio", [&] { c.radio.resolved().validate(); });

  rethrow_as_validation("energy", [&] { c.energy.costs.validate(); });
  require(c.energy.hard_threshold >= 0 && c.energy.hard_threshold < c.initial_energy, "energy.hard_threshold",
          "must be in [0, initial_energy_level)");
  require(c.energy.levels_above >= 1, "energy.levels_above", "must be >= 1");
  require(c.energy.level_penalty >= 0, "energy.level_penalty", "must be >= 0");
  const double slot = c.grid.frame_length / c.grid.slots_per_frame;
  require(energy::airtime(c.energy.costs, c.packet_size) <= slot, "grid.slots_per_frame",
          "gives slots shorter than one packet airtime");

  const auto& m = c.mobility;
  require(m.motion.v_min > 0 && m.motion.v_min <= m.motion.v_max, "mobility.v_min", "must be in (0, v_max]");
  require(m.motion.pause >= 0, "mobility.pause", "must be >= 0");
  require(m.motion.controlled_cap >= 0 && m.motion.controlled_cap < m.motion.v_max, "mobility.controlled_cap",
          "must be in [0, v_max)");
  require(m.tick > 0, "mobility.tick", "must be > 0");
  require(m.classes.v1 >= 0 && m.classes.v1 < m.classes.v2, "mobility.class_thresholds", "must satisfy 0 <= v1 < v2");
  require(m.patrol_side >= 0, "mobility.patrol_side", "must be >= 0");

  require(c.priority.v_floor > 0, "priority.v_floor", "must be > 0");
  const auto& w = c.priority.network_weights;
  require(w.density >= 0 && w.bandwidth >= 0 && (w.density > 0 || w.bandwidth > 0), "priority.network_weights",
          "must be >= 0 and not both zero");
  require(c.priority.pdr_window >= 1, "priority.pdr_window", "must be >= 1");

  const auto& f = c.flows;
  require(f.params.desired_pdr > 0 && f.params.desired_pdr <= 1, "flows.desired_pdr", "must be in (0, 1]");
  require(f.params.pdr_threshold >= 0 && f.params.pdr_threshold < 1, "flows.pdr_threshold", "must be in [0, 1)");
  require(f.params.desired_pdr > f.params.pdr_threshold, "flows.desired_pdr", "must exceed flows.pdr_threshold");
  require(f.params.deadline_budget > 0, "flows.deadline_budget", "must be > 0");
  const SimTime stop = f.stop.value_or(c.session);
  require(f.start >= 0 && f.start < stop, "flows.start", "must be in [0, stop)");
  require(stop <= c.session, "flows.stop", "exceeds session_duration");
  for (std::size_t i = 0; i < f.list.size(); ++i) {
    const std::string field = "flows.list[" + std::to_string(i) + "]";
    const auto& spec = f.list[i];
    require(spec.src.value < c.node_count, field + ".src", "is not a node");
    if (spec.dst) {
      require(spec.dst->value < c.node_count, field + ".dst", "is not a node");
      require(*spec.dst != spec.src, field + ".dst", "equals src");
    }
    if (spec.interval) require(*spec.interval > 0, field + ".interval", "must be > 0");
    const SimTime s0 = spec.start.value_or(f.start);
    const SimTime s1 = spec.stop.value_or(stop);
    require(s0 >= 0 && s0 < s1 && s1 <= c.session, field, "has an invalid start/stop window");
  }
  const std::size_t flow_count = f.list.empty() ? f.connections : f.list.size();

  for (std::size_t i = 0; i < c.critical_events.size(); ++i) {
    const std::string field = "critical_events[" + std::to_string(i) + "]";
    const auto& e = c.critical_events[i];
    require(e.time >= 0 && e.time <= c.session, field + ".time", "must be within the session");
    require(e.radius > 0, field + ".radius", "must be > 0");
    require(c.terrain.contains(e.center), field + ".center", "is outside the terrain");
    if (e.designated_node) require(e.designated_node->value < c.node_count, field + ".designated_node", "is not a node");
    if (e.designated_flow) require(*e.designated_flow < flow_count, field + ".designated_flow", "is not a flow");
    require(e.designated_importance > 0 && e.designated_importance <= 1, field + ".designated_importance",
            "must be in (0, 1]");
    if (i > 0) require(e.time >= c.critical_events[i - 1].time, field + ".time", "must not precede the previous event");
  }

  std::set<std::uint32_t> net_ids;
  for (std::size_t i = 0; i < c.networks.size(); ++i) {
    const std::string field = "networks[" + std::to_string(i) + "]";
    require(net_ids.insert(c.networks[i].id.value).second, field + ".id", "is duplicated");
    require(c.networks[i].bandwidth > 0, field + ".bandwidth", "must be > 0");
    for (const NodeId n : c.networks[i].nodes) require(n.value < c.node_count, field + ".nodes", "names an unknown node");
  }

  if (!c.networks.empty()) {
    std::vector<int> memberships(c.node_count, 0);
    for (const auto& n : c.networks) {
      for (const NodeId m : n.nodes) ++memberships[m.value];
    }
    for (std::uint32_t i = 0; i < c.node_count; ++i) {
      require(memberships[i] == 1, "networks", "must list node " + std::to_string(i) + " exactly once");
    }
  }

  std::vector<NodeKind> kinds(c.node_count);
  for (std::uint32_t i = 0; i < c.node_count; ++i) kinds[i] = default_kind(c, i);
  for (std::size_t i = 0; i < c.nodes.size(); ++i) {
    const std::string field = "nodes[" + std::to_string(i) + "]";
    const auto& o = c.nodes[i];
    require(o.id.value < c.node_count, field + ".id", "is not a node");
    if (o.kind) kinds[o.id.value] = *o.kind;
    if (o.start) require(c.terrain.contains(*o.start), field + ".start", "is outside the terrain");
    if (o.patrol) {
      require(!o.patrol->empty(), field + ".patrol", "must not be empty");
      for (const auto& p : *o.patrol) require(c.terrain.contains(p), field + ".patrol", "leaves the terrain");
      require(o.speed.has_value(), field + ".speed", "is required with a patrol");
    }
    if (o.speed) {
      require(o.patrol.has_value(), field + ".speed", "needs a patrol");
      require(*o.speed >= 0 && *o.speed <= m.motion.controlled_cap, field + ".speed",
              "must be in [0, mobility.controlled_cap]");
    }
    if (o.energy) require(*o.energy > 0 && *o.energy <= c.initial_energy, field + ".energy",
                          "must be in (0, initial_energy_level]");
  }
  bool has_bs = false;
  for (const NodeKind k : kinds) has_bs = has_bs || k == NodeKind::BaseStation;
  require(has_bs, "nodes", "leave no base station");

  require(!c.seeds.empty(), "seeds", "must not be empty");
}

}  // namespace wsnprio
