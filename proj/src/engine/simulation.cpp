#include "wsnprio/engine/simulation.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "wsnprio/error.hpp"

namespace wsnprio::engine {

namespace {

std::vector<Position> square_route(Position c, double side, const Terrain& terrain) {
  const double h = side / 2.0;
  auto clamp = [&](double x, double y) {
    return Position{std::clamp(x, 0.0, terrain.width), std::clamp(y, 0.0, terrain.height)};
  };
  return {clamp(c.x - h, c.y - h), clamp(c.x + h, c.y - h), clamp(c.x + h, c.y + h), clamp(c.x - h, c.y + h)};
}

Position cell_center(std::size_t index, std::size_t count, const Terrain& terrain) {
  const auto g = static_cast<std::size_t>(std::ceil(std::sqrt(static_cast<double>(count))));
  const double col = static_cast<double>(index % g);
  const double row = static_cast<double>(index / g);
  const double gd = static_cast<double>(g);
  return {(col + 0.5) * terrain.width / gd, (row + 0.5) * terrain.height / gd};
}

std::uint64_t fold(std::uint64_t h, std::uint64_t v) {
  for (int i = 0; i < 8; ++i) {
    h ^= (v >> (8 * i)) & 0xffU;
    h *= 0x100000001b3ULL;
  }
  return h;
}

}  // namespace

Simulation::Simulation(const ScenarioConfig& config, std::uint64_t seed, sched::Scheme scheme)
    : config_(config),
      seed_(seed),
      scheme_(scheme),
      field_(config.terrain, config.mobility.motion),
      traffic_rng_(seed, Purpose::Traffic, 0),
      grid_(config.grid.frequencies, config.grid.slots_per_frame, config.grid.frame_length) {
  validate(config_);
  radio_ = config_.radio.resolved();
  setup_nodes();
  setup_flows();

  rebuild_routes(0.0);
  classes_ = mobility::snapshot_classes(field_, 0.0, config_.mobility.classes);
  std::vector<sched::NetworkInfo> nets;
  std::set<NetworkId> ids(network_of_.begin(), network_of_.end());
  for (const NetworkId id : ids) {
    double bw = 1e6;
    for (const auto& spec : config_.networks) {
      if (spec.id == id) bw = spec.bandwidth;
    }
    nets.push_back({id, bw, {}});
  }
  n1_ = sched::network_priority(nets, sched::CriticalArea{{0.0, 0.0}, 1.0}, config_.priority.network_weights).ranks;
  grid_ = sched::allocate_slots({}, grid_, 0.0);

  schedule_initial();
}

void Simulation::setup_nodes() {
  const std::uint32_t n = config_.node_count;
  kinds_.resize(n);
  for (std::uint32_t i = 0; i < n; ++i) {
    kinds_[i] = i == 0 ? NodeKind::BaseStation : (i <= config_.cluster_heads ? NodeKind::ClusterHead : NodeKind::Sensor);
  }
  std::vector<const NodeOverride*> overrides(n, nullptr);
  for (const auto& o : config_.nodes) {
    overrides[o.id.value] = &o;
    if (o.kind) kinds_[o.id.value] = *o.kind;
  }

  network_of_.assign(n, NetworkId{0});
  for (const auto& net : config_.networks) {
    for (const NodeId m : net.nodes) network_of_[m.value] = net.id;
  }

  const std::size_t ch_count = static_cast<std::size_t>(std::count(kinds_.begin(), kinds_.end(), NodeKind::ClusterHead));
  std::size_t ch_index = 0;
  const Position center{config_.terrain.width / 2.0, config_.terrain.height / 2.0};
  const auto& motion = config_.mobility.motion;

  for (std::uint32_t i = 0; i < n; ++i) {
    const NodeOverride* o = overrides[i];
    batteries_.push_back(energy::BatteryState{o && o->energy ? *o->energy : config_.initial_energy,
                                              config_.initial_energy, config_.energy.hard_threshold,
                                              config_.energy.levels_above, config_.energy.level_penalty});
    queues_.emplace_back(config_.queue_capacity);

    placement_.emplace_back(seed_, Purpose::Placement, i);
    RandomStream rng(seed_, Purpose::Mobility, i);
    mobility::MotionState state;
    if (o && o->patrol) {
      state = mobility::patrol_start(*o->patrol, *o->speed, motion);
    } else if (kinds_[i] == NodeKind::Sensor) {
      Position start;
      if (o && o->start) {
        start = *o->start;
      } else {
        start.x = placement_.back().uniform(0.0, config_.terrain.width);
        start.y = placement_.back().uniform(0.0, config_.terrain.height);
      }
      state = mobility::random_waypoint_start(start, config_.terrain, motion, rng);
    } else {
      Position c = kinds_[i] == NodeKind::BaseStation ? center : cell_center(ch_index, ch_count, config_.terrain);
      if (o && o->start) c = *o->start;
      state = mobility::patrol_start(square_route(c, config_.mobility.patrol_side, config_.terrain),
                                     motion.controlled_cap, motion);
    }
    if (kinds_[i] == NodeKind::ClusterHead) ++ch_index;
    field_.add(NodeId{i}, std::move(state), std::move(rng));
  }
}

void Simulation::setup_flows() {
  NodeId bs{0};
  for (std::uint32_t i = 0; i < kinds_.size(); ++i) {
    if (kinds_[i] == NodeKind::BaseStation) {
      bs = NodeId{i};
      break;
    }
  }
  const auto& fc = config_.flows;
  const SimTime stop = fc.stop.value_or(config_.session);
  if (fc.list.empty()) {
    std::vector<NodeId> sensors;
    for (std::uint32_t i = 0; i < kinds_.size(); ++i) {
      if (kinds_[i] == NodeKind::Sensor) sensors.push_back(NodeId{i});
    }
    for (std::size_t i = sensors.size(); i > 1; --i) {
      std::swap(sensors[i - 1], sensors[traffic_rng_.index_below(i)]);
    }
    for (std::size_t k = 0; k < fc.connections; ++k) {
      flows_.push_back({FlowId{static_cast<std::uint32_t>(k)}, sensors[k % sensors.size()], bs, config_.cbr_interval,
                        fc.params, fc.start, stop});
    }
  } else {
    for (std::size_t k = 0; k < fc.list.size(); ++k) {
      const auto& s = fc.list[k];
      flows_.push_back({FlowId{static_cast<std::uint32_t>(k)}, s.src, s.dst.value_or(bs),
                        s.interval.value_or(config_.cbr_interval), fc.params, s.start.value_or(fc.start),
                        s.stop.value_or(stop)});
    }
  }
  for (std::size_t k = 0; k < flows_.size(); ++k) {
    try {
      flows_[k].validate(config_.session);
    } catch (const InvalidArgument& e) {
      throw ValidationError("flows[" + std::to_string(k) + "]: " + e.what());
    }
    pdr_.emplace_back(config_.priority.pdr_window);
    importance_.emplace_back(seed_, Purpose::Importance, k);
  }
  for (const auto& ev : config_.critical_events) {
    if (ev.designated_node) {
      designated_.push_back(ev.designated_node);
    } else if (ev.designated_flow) {
      designated_.push_back(flows_.at(*ev.designated_flow).src);
    } else {
      designated_.push_back(std::nullopt);
    }
  }
}

void Simulation::schedule_initial() {
  for (std::size_t k = 0; k < flows_.size(); ++k) {
    for (const auto& em : traffic::generate_cbr(flows_[k], config_.session)) {
      queue_.schedule(em.time, PacketGenerated{k, em.index});
    }
  }
  for (std::size_t i = 0; i < config_.critical_events.size(); ++i) {
    queue_.schedule(config_.critical_events[i].time, CriticalEvent{i});
  }
  queue_.schedule(0.0, FrameBoundary{0});
  if (config_.mobility.tick <= config_.session) queue_.schedule(config_.mobility.tick, MobilityTick{1});
}

// ---------------------------------------------------------------------------

void Simulation::advance_to(SimTime t) {
  if (finished_) return;
  run_until(queue_, std::min(t, config_.session), [this](const Event& ev) { handle(ev); });
}

const Trace& Simulation::finish() {
  if (finished_) return trace_;
  advance_to(config_.session);
  const SimTime t = config_.session;
  for (std::uint32_t i = 0; i < queues_.size(); ++i) {
    for (const auto& e : queues_[i].entries()) {
      TraceRecord r;
      r.time = t;
      r.kind = RecordKind::Dropped;
      r.node = i;
      r.packet = e.packet.id.value;
      r.flow = e.packet.flow.value;
      r.cause = DropCause::Starved;
      trace_.records.push_back(r);
    }
    queues_[i].remove_if([](const traffic::Packet&) { return true; });
  }
  for (const auto& [id, f] : in_flight_) {
    TraceRecord r;
    r.time = t;
    r.kind = RecordKind::Dropped;
    r.node = f.sender.value;
    r.packet = f.packet.id.value;
    r.flow = f.packet.flow.value;
    r.cause = DropCause::Starved;
    trace_.records.push_back(r);
  }
  in_flight_.clear();
  finished_ = true;
  return trace_;
}

void Simulation::handle(const Event& ev) {
  std::visit(
      [&](const auto& p) {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, PacketGenerated>) on_generated(ev.time, p);
        else if constexpr (std::is_same_v<T, FrameBoundary>) on_frame(ev.time, p);
        else if constexpr (std::is_same_v<T, MobilityTick>) on_tick(ev.time, p);
        else if constexpr (std::is_same_v<T, CriticalEvent>) on_critical(ev.time, p);
        else if constexpr (std::is_same_v<T, PacketDelivered>) on_delivered(ev.time, p);
        else on_depleted(ev.time, p);
      },
      ev.payload);
}

// ---------------------------------------------------------------------------

void Simulation::rebuild_routes(SimTime t) {
  std::vector<radio::GraphNode> nodes;
  for (std::uint32_t i = 0; i < kinds_.size(); ++i) {
    if (alive(NodeId{i})) nodes.push_back({NodeId{i}, field_.position_at(NodeId{i}, t)});
  }
  graph_ = radio::build_graph(nodes, radio_);
  routes_.clear();
  for (const auto& f : flows_) {
    if (!routes_.contains(f.dst) && graph_.contains(f.dst)) routes_.emplace(f.dst, traffic::RoutingTable(graph_, f.dst));
  }
}

std::optional<int> Simulation::hops_to(NodeId from, NodeId dst) const {
  const auto it = routes_.find(dst);
  if (it == routes_.end() || !graph_.contains(from)) return std::nullopt;
  return it->second.hops(from);
}

std::optional<NodeId> Simulation::next_hop(NodeId from, NodeId dst) const {
  const auto it = routes_.find(dst);
  if (it == routes_.end() || !graph_.contains(from)) return std::nullopt;
  return it->second.next_hop(from);
}

sched::PriorityIndex Simulation::key_of(NodeId node, const traffic::Packet& p, SimTime t) const {
  if (scheme_ == sched::Scheme::DataPriority) return sched::compute_pi_data(p.importance);
  const auto& flow = flows_[p.flow.value];
  const auto ulb = sched::compute_ulb(p.deadline, t, std::max(0, p.remaining_hops));
  const double v = sched::floored_velocity(field_.speed_at(node, t), config_.priority.v_floor);
  const double x = energy::battery_factor(batteries_[node.value]);
  return sched::compute_pi_mdlps(pdr_[p.flow.value].pdr(), flow.params, ulb.value, v, x);
}

void Simulation::drop(SimTime t, NodeId node, const traffic::Packet& p, DropCause cause) {
  TraceRecord r;
  r.time = t;
  r.kind = RecordKind::Dropped;
  r.node = node.value;
  r.packet = p.id.value;
  r.flow = p.flow.value;
  r.cause = cause;
  trace_.records.push_back(r);
  pdr_[p.flow.value].record_outcome(false);
}

void Simulation::refresh_queue(NodeId node, SimTime t, bool count_route_misses) {
  auto& q = queues_[node.value];
  if (q.empty()) return;
  for (const auto& p : q.remove_if([t](const traffic::Packet& p) { return t >= p.deadline; })) {
    drop(t, node, p, DropCause::Expired);
  }
  std::vector<PacketId> unroutable;
  q.for_each_mut([&](traffic::Packet& p) {
    if (const auto h = hops_to(node, p.dst)) {
      p.remaining_hops = *h;
      p.missed_routes = 0;
    } else if (count_route_misses) {
      ++p.missed_routes;
    }
  });
  if (count_route_misses) {
    for (const auto& p : q.remove_if([](const traffic::Packet& p) { return p.missed_routes >= 2; })) {
      drop(t, node, p, DropCause::NoRoute);
    }
  }
  q.rekey([&](const traffic::Packet& p) { return key_of(node, p, t); });
  if (config_.priority.gate_mode == GateMode::Drop) {
    const auto& entries = q.entries();
    std::set<std::uint64_t> gated;
    for (const auto& e : entries) {
      if (e.key.gated()) gated.insert(e.packet.id.value);
    }
    for (const auto& p : q.remove_if([&](const traffic::Packet& p) { return gated.contains(p.id.value); })) {
      drop(t, node, p, DropCause::Gated);
    }
  }
}

void Simulation::admit(NodeId node, traffic::Packet packet, SimTime t) {
  if (!alive(node)) {
    drop(t, node, packet, DropCause::NoRoute);
    return;
  }
  refresh_queue(node, t, false);
  if (const auto h = hops_to(node, packet.dst)) packet.remaining_hops = *h;
  const sched::PriorityIndex key = key_of(node, packet, t);
  if (config_.priority.gate_mode == GateMode::Drop && key.gated() && t < packet.deadline) {
    drop(t, node, packet, DropCause::Gated);
    return;
  }
  const PacketId id = packet.id;
  auto outcome = queues_[node.value].enqueue(std::move(packet), key, t);
  auto enq = [&] {
    TraceRecord r;
    r.time = t;
    r.kind = RecordKind::Enqueued;
    r.node = node.value;
    r.packet = id.value;
    r.count = static_cast<std::int64_t>(queues_[node.value].size());
    trace_.records.push_back(r);
  };
  switch (outcome.status) {
    case traffic::EnqueueStatus::Admitted:
      enq();
      break;
    case traffic::EnqueueStatus::EvictedOther:
      enq();
      drop(t, node, *outcome.dropped, DropCause::QueueOverflow);
      break;
    case traffic::EnqueueStatus::DroppedNew:
      drop(t, node, *outcome.dropped, DropCause::QueueOverflow);
      break;
    case traffic::EnqueueStatus::Expired:
      drop(t, node, *outcome.dropped, DropCause::Expired);
      break;
  }
}

void Simulation::charge(SimTime t, NodeId node, const energy::Consumption& c) {
  batteries_[node.value] = c.state;
  if (c.depleted_now) queue_.schedule(t, EnergyDepleted{node});
}

std::vector<sched::PriorityTuple> Simulation::candidates(SimTime t, std::int64_t frame) {
  std::vector<sched::PriorityTuple> out;
  if (scheme_ == sched::Scheme::Mdlps) {
    for (std::uint32_t i = 0; i < queues_.size(); ++i) {
      const NodeId n{i};
      if (!alive(n) || queues_[i].empty()) continue;
      out.push_back(sched::priority_tuple(n, network_of_[i], n1_, sched::MdlpsInputs{}));
      out.back().n2 = queues_[i].head()->key;
    }
    return out;
  }

  std::vector<sched::ReportingNode> reporting;
  std::vector<radio::GraphNode> heads;
  for (std::uint32_t i = 0; i < queues_.size(); ++i) {
    const NodeId n{i};
    if (!alive(n)) continue;
    const Position pos = field_.position_at(n, t);
    if (kinds_[i] == NodeKind::ClusterHead) heads.push_back({n, pos});
    if (queues_[i].empty()) continue;
    reporting.push_back({sched::DataCandidate{n, queues_[i].head()->packet.importance, classes_.at(n),
                                              energy::battery_level(batteries_[i])},
                         pos});
  }
  const auto assignment = sched::assign_to_clusters(reporting, heads, radio_);
  for (const NodeId orphan : assignment.orphans) {
    TraceRecord r;
    r.time = t;
    r.kind = RecordKind::Orphaned;
    r.node = orphan.value;
    r.frame = frame;
    trace_.records.push_back(r);
  }
  for (const auto& c : sched::global_importance_ranking(assignment.reports)) {
    out.push_back(sched::priority_tuple(c.node, network_of_[c.node.value], n1_,
                                        sched::DataInputs{c.importance, c.mobility, c.battery_level}));
  }
  return out;
}

// ---------------------------------------------------------------------------

void Simulation::on_generated(SimTime t, const PacketGenerated& e) {
  const auto& flow = flows_[e.flow];
  traffic::Packet p;
  p.id = PacketId{next_packet_++};
  p.flow = flow.id;
  p.src = flow.src;
  p.dst = flow.dst;
  p.size = config_.packet_size;
  p.created = t;
  p.deadline = t + flow.params.deadline_budget;

  std::optional<std::size_t> latest;
  for (std::size_t i = 0; i < config_.critical_events.size(); ++i) {
    if (config_.critical_events[i].time <= t) latest = i;
  }
  bool in_area = false;
  if (latest) {
    const auto& ev = config_.critical_events[*latest];
    in_area = distance(field_.position_at(flow.src, t), ev.center) <= ev.radius;
  }
  p.importance = in_area ? importance_[e.flow].uniform(0.8, 1.0) : importance_[e.flow].uniform(0.1, 0.5);
  if (latest && designated_[*latest] == flow.src) p.importance = config_.critical_events[*latest].designated_importance;
  p.remaining_hops = hops_to(flow.src, flow.dst).value_or(0);

  TraceRecord r;
  r.time = t;
  r.kind = RecordKind::Generated;
  r.node = flow.src.value;
  r.packet = p.id.value;
  r.flow = flow.id.value;
  r.count = p.size;
  r.value = p.importance;
  r.value2 = p.deadline;
  trace_.records.push_back(r);

  admit(flow.src, std::move(p), t);
}

void Simulation::on_tick(SimTime t, const MobilityTick& e) {
  field_.step_to(t);
  const SimTime next = static_cast<double>(e.tick + 1) * config_.mobility.tick;
  if (next <= config_.session) queue_.schedule(next, MobilityTick{e.tick + 1});
}

void Simulation::on_critical(SimTime t, const CriticalEvent& e) {
  TraceRecord r;
  r.time = t;
  r.kind = RecordKind::Critical;
  r.count = static_cast<std::int64_t>(e.index);
  trace_.records.push_back(r);

  rebuild_routes(t);
  for (std::uint32_t i = 0; i < queues_.size(); ++i) {
    if (alive(NodeId{i})) refresh_queue(NodeId{i}, t, false);
  }
  classes_ = mobility::snapshot_classes(field_, t, config_.mobility.classes);

  const auto& spec = config_.critical_events[e.index];
  std::map<NetworkId, sched::NetworkInfo> nets;
  for (std::uint32_t i = 0; i < kinds_.size(); ++i) {
    auto& info = nets[network_of_[i]];
    info.id = network_of_[i];
    if (alive(NodeId{i})) info.members.push_back(field_.position_at(NodeId{i}, t));
  }
  std::vector<sched::NetworkInfo> list;
  for (auto& [id, info] : nets) {
    info.bandwidth = 1e6;
    for (const auto& ns : config_.networks) {
      if (ns.id == id) info.bandwidth = ns.bandwidth;
    }
    list.push_back(std::move(info));
  }
  n1_ = sched::network_priority(list, sched::CriticalArea{spec.center, spec.radius}, config_.priority.network_weights)
            .ranks;

  grid_.open_allocation();
  const auto tuples = candidates(t, -1);
  grid_ = sched::allocate_slots(tuples, grid_, t);
  for (std::size_t s = 0; s < grid_.positions(); ++s) {
    if (!grid_.assignment()[s]) continue;
    const auto cell = grid_.cell(s);
    TraceRecord a;
    a.time = t;
    a.kind = RecordKind::Allocated;
    a.node = grid_.assignment()[s]->value;
    a.freq = cell.freq;
    a.slot = cell.slot;
    trace_.records.push_back(a);
  }
}

void Simulation::on_frame(SimTime t, const FrameBoundary& e) {
  const auto& costs = config_.energy.costs;
  if (e.frame > 0 && costs.idle_power > 0.0) {
    for (std::uint32_t i = 0; i < batteries_.size(); ++i) {
      const NodeId n{i};
      if (!alive(n)) continue;
      const auto c = energy::consume_idle(batteries_[i], costs, config_.grid.frame_length);
      charge(t, n, c);
      TraceRecord r;
      r.time = t;
      r.kind = RecordKind::Energy;
      r.node = i;
      r.value = c.state.level;
      trace_.records.push_back(r);
    }
  }

  rebuild_routes(t);
  for (std::uint32_t i = 0; i < queues_.size(); ++i) {
    if (alive(NodeId{i})) refresh_queue(NodeId{i}, t, true);
  }

  std::vector<std::pair<std::size_t, NodeId>> senders;
  for (std::size_t s = 0; s < grid_.positions(); ++s) {
    if (const auto h = grid_.assignment()[s]) senders.emplace_back(s, *h);
  }
  for (const auto& v : sched::fill_vacancies(grid_, candidates(t, static_cast<std::int64_t>(e.frame)))) {
    senders.emplace_back(v.scan_index, v.node);
  }
  std::sort(senders.begin(), senders.end());

  const double slot_len = grid_.slot_length();
  const double air = energy::airtime(costs, config_.packet_size);
  for (const auto& [scan, node] : senders) {
    if (!alive(node)) continue;
    auto p = queues_[node.value].pop_best_if(
        [&](const traffic::Packet& pk) { return next_hop(node, pk.dst).has_value(); });
    if (!p) continue;
    const NodeId to = *next_hop(node, p->dst);
    const auto cell = grid_.cell(scan);

    TraceRecord r;
    r.time = t;
    r.kind = RecordKind::Granted;
    r.node = node.value;
    r.packet = p->id.value;
    r.frame = static_cast<std::int64_t>(e.frame);
    r.freq = cell.freq;
    r.slot = cell.slot;
    trace_.records.push_back(r);

    const std::uint64_t id = next_transmission_++;
    in_flight_.emplace(id, InFlight{std::move(*p), node, to});
    queue_.schedule(t + cell.slot * slot_len + air, PacketDelivered{id});
  }

  const SimTime next = static_cast<double>(e.frame + 1) * config_.grid.frame_length;
  if (next < config_.session) queue_.schedule(next, FrameBoundary{e.frame + 1});
}

void Simulation::on_delivered(SimTime t, const PacketDelivered& e) {
  const auto it = in_flight_.find(e.transmission);
  if (it == in_flight_.end()) throw EventNotFound("unknown transmission");
  InFlight f = std::move(it->second);
  in_flight_.erase(it);
  const auto& costs = config_.energy.costs;

  bool sent = false;
  if (alive(f.sender)) {
    const auto c = energy::consume_tx(batteries_[f.sender.value], costs, f.packet.size);
    charge(t, f.sender, c);
    TraceRecord r;
    r.time = t;
    r.kind = RecordKind::Transmitted;
    r.node = f.sender.value;
    r.peer = f.receiver.value;
    r.packet = f.packet.id.value;
    r.value = c.state.level;
    trace_.records.push_back(r);
    sent = true;
  }

  const bool link = sent && alive(f.receiver) &&
                    radio::in_range(radio_, field_.position_at(f.sender, t), field_.position_at(f.receiver, t));
  if (!link) {
    TraceRecord r;
    r.time = t;
    r.kind = RecordKind::LinkBroken;
    r.node = f.sender.value;
    r.peer = f.receiver.value;
    r.packet = f.packet.id.value;
    trace_.records.push_back(r);
    ++f.packet.link_failures;
    if (f.packet.link_failures >= 2 || !alive(f.sender)) {
      drop(t, f.sender, f.packet, DropCause::NoRoute);
    } else {
      admit(f.sender, std::move(f.packet), t);
    }
    return;
  }

  const auto c = energy::consume_rx(batteries_[f.receiver.value], costs, f.packet.size);
  charge(t, f.receiver, c);
  const auto hop = traffic::advance_hop(std::move(f.packet), f.receiver, t);
  TraceRecord r;
  r.time = t;
  r.node = f.receiver.value;
  r.peer = f.sender.value;
  r.packet = hop.packet.id.value;
  if (hop.arrived) {
    r.kind = RecordKind::Delivered;
    r.flow = hop.packet.flow.value;
    r.count = hop.packet.size;
    r.value = hop.delay;
    r.value2 = c.state.level;
    r.flag = hop.on_time;
    trace_.records.push_back(r);
    pdr_[hop.packet.flow.value].record_outcome(hop.on_time);
  } else {
    r.kind = RecordKind::Relayed;
    r.value = c.state.level;
    trace_.records.push_back(r);
    admit(f.receiver, hop.packet, t);
  }
}

void Simulation::on_depleted(SimTime t, const EnergyDepleted& e) {
  TraceRecord r;
  r.time = t;
  r.kind = RecordKind::Depleted;
  r.node = e.node.value;
  trace_.records.push_back(r);
}

// ---------------------------------------------------------------------------

const traffic::NodeQueue& Simulation::queue(NodeId node) const {
  if (node.value >= queues_.size()) throw UnknownNode("node " + std::to_string(node.value));
  return queues_[node.value];
}

double Simulation::energy(NodeId node) const {
  if (node.value >= batteries_.size()) throw UnknownNode("node " + std::to_string(node.value));
  return batteries_[node.value].level;
}

Position Simulation::position(NodeId node) const { return field_.position_at(node, now()); }

double Simulation::effective_range() const { return radio::range_for_threshold(radio_, radio_.rx_threshold); }

std::optional<NodeId> Simulation::designated_node(std::size_t event) const { return designated_.at(event); }

std::map<Purpose, DrawRecord> Simulation::draw_digests() const {
  std::map<Purpose, DrawRecord> out;
  auto add = [&](const RandomStream& s) {
    auto& d = out[s.purpose()];
    d.draws += s.draws();
    d.digest = fold(fold(d.digest, s.draws()), s.digest());
  };
  for (const auto& s : placement_) add(s);
  for (const auto& s : field_.streams()) add(s);
  add(traffic_rng_);
  for (const auto& s : importance_) add(s);
  return out;
}

}  // namespace wsnprio::engine
