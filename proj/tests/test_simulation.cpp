#include <doctest.h>

#include <map>
#include <set>

#include "wsnprio/engine/simulation.hpp"
#include "wsnprio/error.hpp"
#include "wsnprio/harness/metrics.hpp"

using namespace wsnprio;
using engine::RecordKind;
using engine::Simulation;
using sched::Scheme;

namespace {

NodeOverride fixed_at(std::uint32_t id, Position p, std::optional<double> energy = std::nullopt) {
  NodeOverride o;
  o.id = NodeId{id};
  o.patrol = std::vector<Position>{p};
  o.speed = 0.0;
  o.energy = energy;
  return o;
}

/// A sensor that drifts out of base-station range while its packet is on the air.
ScenarioConfig drifting_sensor() {
  ScenarioConfig c;
  c.node_count = 2;
  c.cluster_heads = 0;
  c.session = 8.0;
  c.grid = {1, 1, 0.5};
  c.energy.costs.link_rate = 20000.0;  // 0.4 s on air per 1000 B packet
  c.mobility.motion.v_max = 25.0;
  c.mobility.motion.controlled_cap = 20.0;
  c.critical_events.clear();
  c.nodes.push_back(fixed_at(0, {0, 0}));
  NodeOverride s;
  s.id = NodeId{1};
  s.patrol = std::vector<Position>{{705, 0}, {1900, 0}};
  s.speed = 20.0;
  c.nodes.push_back(s);
  c.flows.list.push_back({NodeId{1}, NodeId{0}, std::nullopt, std::nullopt, std::nullopt});
  return c;
}

/// Two stationary sensors, one designated for the event but low on charge.
ScenarioConfig two_sensors() {
  ScenarioConfig c;
  c.node_count = 4;
  c.cluster_heads = 1;
  c.session = 12.0;
  c.nodes = {fixed_at(0, {100, 100}), fixed_at(1, {150, 100}), fixed_at(2, {200, 100}, 5.0),
             fixed_at(3, {200, 150})};
  c.flows.list = {{NodeId{2}, NodeId{0}, std::nullopt, std::nullopt, std::nullopt},
                  {NodeId{3}, NodeId{0}, std::nullopt, std::nullopt, std::nullopt}};
  CriticalEventSpec e;
  e.time = 10.0;
  e.center = {200, 150};
  e.radius = 60.0;
  e.designated_node = NodeId{2};
  c.critical_events = {e};
  return c;
}

std::map<std::int64_t, std::int64_t> packet_flows(const engine::Trace& t) {
  std::map<std::int64_t, std::int64_t> out;
  for (const auto& r : t.records) {
    if (r.kind == RecordKind::Generated) out[r.packet] = r.flow;
  }
  return out;
}

}  // namespace

TEST_CASE("nothing happens before time zero ends") {
  for (const Scheme s : {Scheme::Mdlps, Scheme::DataPriority}) {
    Simulation sim(ScenarioConfig{}, 1, s);
    sim.advance_to(0.0);
    CHECK(sim.trace().records.empty());
    CHECK(sim.now() == 0.0);
  }
}

TEST_CASE("reference scenario transmits on every flow") {
  const ScenarioConfig c;
  for (const Scheme s : {Scheme::Mdlps, Scheme::DataPriority}) {
    Simulation sim(c, 3, s);
    const auto& trace = sim.finish();
    const auto flows = packet_flows(trace);
    std::set<std::int64_t> transmitted;
    for (const auto& r : trace.records) {
      if (r.kind == RecordKind::Transmitted) transmitted.insert(flows.at(r.packet));
    }
    CHECK(transmitted.size() == c.flows.connections);
    CHECK(sim.effective_range() == doctest::Approx(c.radio.nominal_range).epsilon(1e-9));
  }
}

TEST_CASE("node roles and flow endpoints") {
  ScenarioConfig c;
  c.critical_events[0].designated_flow = 0;
  Simulation sim(c, 5, Scheme::DataPriority);
  REQUIRE(sim.node_count() == 22);
  CHECK(sim.kinds()[0] == NodeKind::BaseStation);
  for (std::size_t i = 1; i <= 4; ++i) CHECK(sim.kinds()[i] == NodeKind::ClusterHead);
  std::set<std::uint32_t> sources;
  for (const auto& f : sim.flows()) {
    CHECK(f.dst == NodeId{0});
    CHECK(sim.kinds()[f.src.value] == NodeKind::Sensor);
    sources.insert(f.src.value);
  }
  CHECK(sources.size() == 10);
  CHECK(sim.designated_node(0) == sim.flows()[0].src);
  CHECK_FALSE(Simulation(ScenarioConfig{}, 5, Scheme::DataPriority).designated_node(0).has_value());
}

TEST_CASE("rerunning a seed reproduces the trace byte for byte") {
  for (const Scheme s : {Scheme::Mdlps, Scheme::DataPriority}) {
    Simulation a(ScenarioConfig{}, 17, s);
    Simulation b(ScenarioConfig{}, 17, s);
    CHECK(engine::to_jsonl(a.finish()) == engine::to_jsonl(b.finish()));
  }
  Simulation c(ScenarioConfig{}, 18, Scheme::Mdlps);
  Simulation d(ScenarioConfig{}, 17, Scheme::Mdlps);
  CHECK(engine::to_jsonl(c.finish()) != engine::to_jsonl(d.finish()));
}

TEST_CASE("both schemes see the same world") {
  Simulation m(ScenarioConfig{}, 9, Scheme::Mdlps);
  Simulation d(ScenarioConfig{}, 9, Scheme::DataPriority);
  m.finish();
  d.finish();
  CHECK(m.draw_digests() == d.draw_digests());
  CHECK(m.draw_digests().at(engine::Purpose::Importance).draws > 0);
  std::vector<engine::TraceRecord> gen_m;
  std::vector<engine::TraceRecord> gen_d;
  for (const auto& r : m.trace().records) {
    if (r.kind == RecordKind::Generated) gen_m.push_back(r);
  }
  for (const auto& r : d.trace().records) {
    if (r.kind == RecordKind::Generated) gen_d.push_back(r);
  }
  CHECK(gen_m == gen_d);
}

TEST_CASE("every packet has exactly one fate") {
  for (std::uint64_t seed = 1; seed <= 4; ++seed) {
    for (const Scheme s : {Scheme::Mdlps, Scheme::DataPriority}) {
      Simulation sim(ScenarioConfig{}, seed, s);
      const auto& trace = sim.finish();
      std::map<std::int64_t, int> fates;
      for (const auto& r : trace.records) {
        if (r.kind == RecordKind::Delivered || r.kind == RecordKind::Dropped) ++fates[r.packet];
      }
      const auto flows = packet_flows(trace);
      CHECK(fates.size() == flows.size());
      for (const auto& [pkt, n] : fates) REQUIRE(n == 1);
      const auto m = harness::compute_metrics(trace, sim.config().session);
      CHECK(harness::terminal_count(m) == m.generated);
      CHECK(m.max_queue <= 50);
    }
  }
}

TEST_CASE("energy never rises and depleted nodes stay silent") {
  ScenarioConfig c;
  c.energy.costs.idle_power = 0.05;
  for (std::uint32_t i = 5; i < 9; ++i) c.nodes.push_back({NodeId{i}, std::nullopt, std::nullopt, std::nullopt,
                                                           std::nullopt, 0.05});
  Simulation sim(c, 2, Scheme::Mdlps);
  const auto& trace = sim.finish();
  std::map<std::int64_t, double> last;
  std::set<std::int64_t> depleted;
  for (const auto& r : trace.records) {
    if (r.kind == RecordKind::Depleted) depleted.insert(r.node);
    if (r.kind == RecordKind::Granted || r.kind == RecordKind::Transmitted) REQUIRE_FALSE(depleted.contains(r.node));
    if (r.kind == RecordKind::Transmitted || r.kind == RecordKind::Relayed || r.kind == RecordKind::Energy) {
      if (last.contains(r.node)) REQUIRE(r.value <= last[r.node]);
      last[r.node] = r.value;
    }
  }
  CHECK_FALSE(depleted.empty());
  for (const auto n : depleted) CHECK(sim.energy(NodeId{static_cast<std::uint32_t>(n)}) == 0.0);
}

TEST_CASE("link lost during a transmission is retried, then the packet is dropped") {
  Simulation sim(drifting_sensor(), 1, Scheme::Mdlps);
  const auto& trace = sim.finish();
  const engine::TraceRecord* broken = nullptr;
  std::int64_t last_delivered_pkt = -1;
  for (const auto& r : trace.records) {
    if (r.kind == RecordKind::Delivered && !broken) last_delivered_pkt = r.packet;
    if (r.kind == RecordKind::LinkBroken && !broken) broken = &r;
  }
  REQUIRE(broken != nullptr);
  // out of range (800 m) once x = 705 + 20 t passes 800, i.e. at t = 4.75
  CHECK(broken->time == doctest::Approx(4.9));
  CHECK(broken->node == 1);
  CHECK(broken->peer == 0);
  CHECK(last_delivered_pkt >= 0);
  bool dropped = false;
  for (const auto& r : trace.records) {
    if (r.kind == RecordKind::Dropped && r.packet == broken->packet) {
      CHECK(r.cause == engine::DropCause::NoRoute);
      CHECK(r.time > broken->time);
      dropped = true;
    }
    if (r.kind == RecordKind::Delivered) CHECK(r.time < 4.75);
  }
  CHECK(dropped);
}

TEST_CASE("designated node goes first under the data scheme only") {
  const ScenarioConfig c = two_sensors();
  Simulation data(c, 1, Scheme::DataPriority);
  Simulation mdlps(c, 1, Scheme::Mdlps);
  const auto data_order = harness::execution_order(data.finish(), 0);
  const auto mdlps_order = harness::execution_order(mdlps.finish(), 0);
  CHECK(data_order == std::vector<NodeId>{NodeId{2}, NodeId{3}});
  CHECK(mdlps_order == std::vector<NodeId>{NodeId{3}, NodeId{2}});
  CHECK(data.grid().holder(0, 0) == NodeId{2});
  CHECK(mdlps.grid().holder(0, 0) == NodeId{3});
  CHECK(data.grid().frozen_since() == 10.0);
  CHECK(data.classes().taken_at() == 10.0);
}

TEST_CASE("allocation records match the frozen grid") {
  Simulation sim(ScenarioConfig{}, 4, Scheme::DataPriority);
  sim.advance_to(10.0);
  std::size_t allocated = 0;
  for (const auto& r : sim.trace().records) {
    if (r.kind != RecordKind::Allocated) continue;
    ++allocated;
    CHECK(sim.grid().holder(static_cast<int>(r.freq), static_cast<int>(r.slot)) ==
          NodeId{static_cast<std::uint32_t>(r.node)});
  }
  std::size_t holders = 0;
  for (const auto& h : sim.grid().assignment()) holders += h.has_value();
  CHECK(allocated == holders);
  const auto before = sim.grid();
  sim.advance_to(50.0);
  CHECK(sim.grid() == before);
}

TEST_CASE("invalid scenarios are rejected at construction") {
  ScenarioConfig c;
  c.node_count = 1;
  CHECK_THROWS_AS(Simulation(c, 1, Scheme::Mdlps), ValidationError);
  ScenarioConfig g;
  g.grid.frame_length = 0.004;  // shorter than one packet on air
  CHECK_THROWS_AS(Simulation(g, 1, Scheme::Mdlps), ValidationError);
}
