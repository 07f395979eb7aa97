#include "wsnprio/harness/config_io.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>

#include "wsnprio/error.hpp"
#include "wsnprio/engine/trace.hpp"
#include "wsnprio/radio.hpp"

namespace wsnprio::harness {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

// Descriptive Table 1 entries. Only the listed value is accepted.
struct FixedEntry {
  const char* key;
  const char* value;
};
constexpr FixedEntry kFixed[] = {
    {"agent", "UDP"},
    {"routing_protocol", "AODV"},
    {"mobility_model", "Random Way Point"},
    {"data_flow", "Constant Bit Rate (CBR)"},
    {"node_placement", "Random"},
    {"propagation_type", "Two-Ray ground Reflection Model"},
    {"antenna_type", "Omni-Antenna"},
};

/// Walks one JSON object, remembering which keys were read so that leftovers
/// can be reported.
class Reader {
 public:
  Reader(const json& obj, std::string path) : obj_(obj), path_(std::move(path)) {
    if (!obj_.is_object()) throw ParseError(where_self() + ": expected an object");
  }

  ~Reader() = default;
  Reader(const Reader&) = delete;
  Reader& operator=(const Reader&) = delete;

  [[nodiscard]] std::string where(std::string_view key) const {
    return path_.empty() ? std::string(key) : path_ + "." + std::string(key);
  }

  const json* find(const char* key) {
    seen_.insert(key);
    const auto it = obj_.find(key);
    return it == obj_.end() ? nullptr : &*it;
  }

  void number(const char* key, double& out) {
    if (const json* v = find(key)) out = as_number(*v, where(key));
  }
  void number(const char* key, std::optional<double>& out) {
    if (const json* v = find(key)) out = as_number(*v, where(key));
  }

  template <class I>
  void integer(const char* key, I& out) {
    if (const json* v = find(key)) out = as_integer<I>(*v, where(key));
  }
  template <class I>
  void integer(const char* key, std::optional<I>& out) {
    if (const json* v = find(key)) out = as_integer<I>(*v, where(key));
  }

  void text(const char* key, std::string& out) {
    if (const json* v = find(key)) {
      if (!v->is_string()) throw ParseError(where(key) + ": expected a string");
      out = v->get<std::string>();
    }
  }

  void finish() const {
    for (auto it = obj_.begin(); it != obj_.end(); ++it) {
      if (!seen_.contains(it.key())) throw ParseError(where(it.key()) + ": unknown key");
    }
  }

  static double as_number(const json& v, const std::string& at) {
    if (!v.is_number()) throw ParseError(at + ": expected a number");
    const double d = v.get<double>();
    if (!std::isfinite(d)) throw ParseError(at + ": not finite");
    return d;
  }

  template <class I>
  static I as_integer(const json& v, const std::string& at) {
    if (!v.is_number_integer()) {
      if (v.is_number_float() && std::floor(v.get<double>()) == v.get<double>()) {
        return checked<I>(static_cast<long double>(v.get<double>()), at);
      }
      throw ParseError(at + ": expected an integer");
    }
    if (v.is_number_unsigned()) return checked<I>(static_cast<long double>(v.get<std::uint64_t>()), at);
    return checked<I>(static_cast<long double>(v.get<std::int64_t>()), at);
  }

 private:
  template <class I>
  static I checked(long double x, const std::string& at) {
    if (x < static_cast<long double>(std::numeric_limits<I>::min()) ||
        x > static_cast<long double>(std::numeric_limits<I>::max())) {
      throw ValidationError(at + ": integer out of range");
    }
    return static_cast<I>(x);
  }

  [[nodiscard]] std::string where_self() const { return path_.empty() ? "document" : path_; }

  const json& obj_;
  std::string path_;
  std::set<std::string, std::less<>> seen_;
};

Position as_position(const json& v, const std::string& at) {
  if (!v.is_array() || v.size() != 2) throw ParseError(at + ": expected [x, y]");
  return {Reader::as_number(v[0], at + "[0]"), Reader::as_number(v[1], at + "[1]")};
}

Terrain as_terrain(const json& v, const std::string& at) {
  if (v.is_string()) {
    std::istringstream in(v.get<std::string>());
    double w = 0;
    double h = 0;
    char x = 0;
    in >> w >> x >> h;
    if (!in || (x != 'x' && x != 'X')) throw ParseError(at + ": expected \"W x H\"");
    in >> std::ws;
    if (!in.eof()) throw ParseError(at + ": trailing text");
    return {w, h};
  }
  const Position p = as_position(v, at);
  return {p.x, p.y};
}

std::string terrain_text(const Terrain& t) {
  return engine::format_double(t.width) + " x " + engine::format_double(t.height);
}

const char* kind_name(NodeKind k) {
  switch (k) {
    case NodeKind::Sensor: return "sensor";
    case NodeKind::ClusterHead: return "cluster_head";
    case NodeKind::BaseStation: return "base_station";
  }
  return "sensor";
}

NodeKind kind_from(const std::string& s, const std::string& at) {
  if (s == "sensor") return NodeKind::Sensor;
  if (s == "cluster_head") return NodeKind::ClusterHead;
  if (s == "base_station") return NodeKind::BaseStation;
  throw ValidationError(at + ": unknown node kind '" + s + "'");
}

const json& array_at(const json& v, const std::string& at) {
  if (!v.is_array()) throw ParseError(at + ": expected an array");
  return v;
}

void read_grid(const json& v, GridConfig& g) {
  Reader r(v, "grid");
  r.integer("frequencies", g.frequencies);
  r.integer("slots_per_frame", g.slots_per_frame);
  r.number("frame_length", g.frame_length);
  r.finish();
}

void read_radio(const json& v, RadioConfig& c) {
  Reader r(v, "radio");
  r.number("tx_power", c.tx_power);
  r.number("tx_gain", c.tx_gain);
  r.number("rx_gain", c.rx_gain);
  r.number("antenna_height_tx", c.antenna_height_tx);
  r.number("antenna_height_rx", c.antenna_height_rx);
  r.number("system_loss", c.system_loss);
  r.number("frequency", c.frequency);
  r.number("nominal_range", c.nominal_range);
  r.number("rx_threshold", c.rx_threshold);
  r.finish();
}

void read_energy(const json& v, EnergyConfig& c) {
  Reader r(v, "energy");
  r.number("tx_power", c.costs.tx_power);
  r.number("rx_power", c.costs.rx_power);
  r.number("idle_power", c.costs.idle_power);
  r.number("link_rate", c.costs.link_rate);
  r.number("hard_threshold", c.hard_threshold);
  r.integer("levels_above", c.levels_above);
  r.number("level_penalty", c.level_penalty);
  r.finish();
}

void read_mobility(const json& v, MobilityConfig& c) {
  Reader r(v, "mobility");
  r.number("v_min", c.motion.v_min);
  r.number("v_max", c.motion.v_max);
  r.number("pause", c.motion.pause);
  r.number("controlled_cap", c.motion.controlled_cap);
  r.number("tick", c.tick);
  if (const json* t = r.find("class_thresholds")) {
    const Position p = as_position(*t, r.where("class_thresholds"));
    c.classes = {p.x, p.y};
  }
  r.number("patrol_side", c.patrol_side);
  r.finish();
}

void read_priority(const json& v, PriorityConfig& c) {
  Reader r(v, "priority");
  r.number("v_floor", c.v_floor);
  std::string gate = c.gate_mode == GateMode::Drop ? "drop" : "sentinel";
  r.text("gate_mode", gate);
  if (gate == "sentinel") {
    c.gate_mode = GateMode::Sentinel;
  } else if (gate == "drop") {
    c.gate_mode = GateMode::Drop;
  } else {
    throw ValidationError("priority.gate_mode: expected \"sentinel\" or \"drop\"");
  }
  if (const json* w = r.find("network_weights")) {
    Reader wr(*w, "priority.network_weights");
    wr.number("density", c.network_weights.density);
    wr.number("bandwidth", c.network_weights.bandwidth);
    wr.finish();
  }
  r.integer("pdr_window", c.pdr_window);
  r.finish();
}

void read_flows(const json& v, FlowsConfig& c) {
  Reader r(v, "flows");
  r.integer("connections", c.connections);
  r.number("desired_pdr", c.params.desired_pdr);
  r.number("pdr_threshold", c.params.pdr_threshold);
  r.number("deadline_budget", c.params.deadline_budget);
  r.number("start", c.start);
  r.number("stop", c.stop);
  if (const json* list = r.find("list")) {
    c.list.clear();
    const json& arr = array_at(*list, "flows.list");
    for (std::size_t i = 0; i < arr.size(); ++i) {
      Reader fr(arr[i], "flows.list[" + std::to_string(i) + "]");
      FlowSpec f;
      const json* src = fr.find("src");
      if (!src) throw ValidationError(fr.where("src") + ": required");
      f.src = NodeId{Reader::as_integer<std::uint32_t>(*src, fr.where("src"))};
      if (const json* dst = fr.find("dst")) f.dst = NodeId{Reader::as_integer<std::uint32_t>(*dst, fr.where("dst"))};
      fr.number("interval", f.interval);
      fr.number("start", f.start);
      fr.number("stop", f.stop);
      fr.finish();
      c.list.push_back(f);
    }
  }
  r.finish();
}

void read_events(const json& v, std::vector<CriticalEventSpec>& out) {
  out.clear();
  const json& arr = array_at(v, "critical_events");
  for (std::size_t i = 0; i < arr.size(); ++i) {
    Reader r(arr[i], "critical_events[" + std::to_string(i) + "]");
    CriticalEventSpec e;
    r.number("time", e.time);
    if (const json* c = r.find("center")) e.center = as_position(*c, r.where("center"));
    r.number("radius", e.radius);
    if (const json* n = r.find("designated_node")) {
      e.designated_node = NodeId{Reader::as_integer<std::uint32_t>(*n, r.where("designated_node"))};
    }
    r.integer("designated_flow", e.designated_flow);
    r.number("designated_importance", e.designated_importance);
    r.finish();
    out.push_back(e);
  }
}

void read_networks(const json& v, std::vector<NetworkSpec>& out) {
  out.clear();
  const json& arr = array_at(v, "networks");
  for (std::size_t i = 0; i < arr.size(); ++i) {
    const std::string at = "networks[" + std::to_string(i) + "]";
    Reader r(arr[i], at);
    NetworkSpec n;
    std::uint32_t id = 0;
    r.integer("id", id);
    n.id = NetworkId{id};
    r.number("bandwidth", n.bandwidth);
    if (const json* nodes = r.find("nodes")) {
      const json& list = array_at(*nodes, at + ".nodes");
      for (std::size_t k = 0; k < list.size(); ++k) {
        n.nodes.push_back(NodeId{Reader::as_integer<std::uint32_t>(list[k], at + ".nodes[" + std::to_string(k) + "]")});
      }
    }
    r.finish();
    out.push_back(std::move(n));
  }
}

void read_nodes(const json& v, std::vector<NodeOverride>& out) {
  out.clear();
  const json& arr = array_at(v, "nodes");
  for (std::size_t i = 0; i < arr.size(); ++i) {
    const std::string at = "nodes[" + std::to_string(i) + "]";
    Reader r(arr[i], at);
    NodeOverride o;
    const json* id = r.find("id");
    if (!id) throw ValidationError(at + ".id: required");
    o.id = NodeId{Reader::as_integer<std::uint32_t>(*id, at + ".id")};
    std::string kind;
    r.text("kind", kind);
    if (!kind.empty()) o.kind = kind_from(kind, at + ".kind");
    if (const json* s = r.find("start")) o.start = as_position(*s, at + ".start");
    if (const json* p = r.find("patrol")) {
      const json& list = array_at(*p, at + ".patrol");
      std::vector<Position> route;
      for (std::size_t k = 0; k < list.size(); ++k) {
        route.push_back(as_position(list[k], at + ".patrol[" + std::to_string(k) + "]"));
      }
      o.patrol = std::move(route);
    }
    r.number("speed", o.speed);
    r.number("energy", o.energy);
    r.finish();
    out.push_back(std::move(o));
  }
}

ordered_json position_json(const Position& p) { return ordered_json::array({p.x, p.y}); }

}  // namespace

ScenarioConfig config_from_json(const json& doc) {
  ScenarioConfig c;
  Reader r(doc, "");
  for (const auto& f : kFixed) {
    std::string value = f.value;
    r.text(f.key, value);
    if (value != f.value) {
      throw ValidationError(std::string(f.key) + ": only \"" + f.value + "\" is supported");
    }
  }
  if (const json* t = r.find("terrain_area")) c.terrain = as_terrain(*t, "terrain_area");
  if (const json* n = r.find("number_of_mobile_nodes")) {
    const auto count = Reader::as_integer<std::int64_t>(*n, "number_of_mobile_nodes");
    if (count < 2 || count > std::numeric_limits<std::uint32_t>::max()) {
      throw ValidationError("number_of_mobile_nodes (node_count): must be an integer >= 2");
    }
    c.node_count = static_cast<std::uint32_t>(count);
  }
  r.integer("cluster_heads", c.cluster_heads);
  r.number("session_duration", c.session);
  if (const json* q = r.find("queue_size")) {
    const auto size = Reader::as_integer<std::int64_t>(*q, "queue_size");
    if (size < 1) throw ValidationError("queue_size (queue_capacity): must be >= 1");
    c.queue_capacity = static_cast<std::size_t>(size);
  }
  r.number("initial_energy_level", c.initial_energy);
  r.integer("packet_size", c.packet_size);
  r.number("cbr_interval", c.cbr_interval);
  std::string scheme(sched::to_string(c.scheduler));
  r.text("scheduler", scheme);
  const auto parsed = sched::scheme_from(scheme);
  if (!parsed) throw ValidationError("scheduler: expected \"mdlps\" or \"data\"");
  c.scheduler = *parsed;

  if (const json* v = r.find("grid")) read_grid(*v, c.grid);
  if (const json* v = r.find("radio")) read_radio(*v, c.radio);
  if (const json* v = r.find("energy")) read_energy(*v, c.energy);
  if (const json* v = r.find("mobility")) read_mobility(*v, c.mobility);
  if (const json* v = r.find("priority")) read_priority(*v, c.priority);
  if (const json* v = r.find("flows")) read_flows(*v, c.flows);
  if (const json* v = r.find("critical_events")) read_events(*v, c.critical_events);
  if (const json* v = r.find("networks")) read_networks(*v, c.networks);
  if (const json* v = r.find("nodes")) read_nodes(*v, c.nodes);
  if (const json* v = r.find("seeds")) {
    c.seeds.clear();
    const json& arr = array_at(*v, "seeds");
    for (std::size_t i = 0; i < arr.size(); ++i) {
      c.seeds.push_back(Reader::as_integer<std::uint64_t>(arr[i], "seeds[" + std::to_string(i) + "]"));
    }
  }
  r.finish();
  validate(c);
  return c;
}

ScenarioConfig parse_config(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("config: ") + e.what());
  }
  if (doc.is_null()) doc = json::object();
  return config_from_json(doc);
}

ScenarioConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  const std::string text = buf.str();
  if (text.find_first_not_of(" \t\r\n") == std::string::npos) return config_from_json(json::object());
  return parse_config(text);
}

ordered_json to_json(const ScenarioConfig& c) {
  ordered_json j;
  for (const auto& f : kFixed) j[f.key] = f.value;
  j["terrain_area"] = terrain_text(c.terrain);
  j["session_duration"] = c.session;
  j["queue_size"] = c.queue_capacity;
  j["initial_energy_level"] = c.initial_energy;
  j["number_of_mobile_nodes"] = c.node_count;
  j["packet_size"] = c.packet_size;
  j["cluster_heads"] = c.cluster_heads;
  j["cbr_interval"] = c.cbr_interval;
  j["scheduler"] = std::string(sched::to_string(c.scheduler));
  j["grid"] = {{"frequencies", c.grid.frequencies},
               {"slots_per_frame", c.grid.slots_per_frame},
               {"frame_length", c.grid.frame_length}};

  const radio::RadioParams rp = c.radio.resolved();
  j["radio"] = {{"tx_power", c.radio.tx_power},
                {"tx_gain", c.radio.tx_gain},
                {"rx_gain", c.radio.rx_gain},
                {"antenna_height_tx", c.radio.antenna_height_tx},
                {"antenna_height_rx", c.radio.antenna_height_rx},
                {"system_loss", c.radio.system_loss},
                {"frequency", c.radio.frequency},
                {"nominal_range", radio::range_for_threshold(rp, rp.rx_threshold)},
                {"rx_threshold", rp.rx_threshold}};
  j["energy"] = {{"tx_power", c.energy.costs.tx_power},
                 {"rx_power", c.energy.costs.rx_power},
                 {"idle_power", c.energy.costs.idle_power},
                 {"link_rate", c.energy.costs.link_rate},
                 {"hard_threshold", c.energy.hard_threshold},
                 {"levels_above", c.energy.levels_above},
                 {"level_penalty", c.energy.level_penalty}};
  j["mobility"] = {{"v_min", c.mobility.motion.v_min},
                   {"v_max", c.mobility.motion.v_max},
                   {"pause", c.mobility.motion.pause},
                   {"controlled_cap", c.mobility.motion.controlled_cap},
                   {"tick", c.mobility.tick},
                   {"class_thresholds", ordered_json::array({c.mobility.classes.v1, c.mobility.classes.v2})},
                   {"patrol_side", c.mobility.patrol_side}};
  j["priority"] = {{"v_floor", c.priority.v_floor},
                   {"gate_mode", c.priority.gate_mode == GateMode::Drop ? "drop" : "sentinel"},
                   {"network_weights",
                    {{"density", c.priority.network_weights.density},
                     {"bandwidth", c.priority.network_weights.bandwidth}}},
                   {"pdr_window", c.priority.pdr_window}};

  ordered_json flows = {{"connections", c.flows.connections},
                        {"desired_pdr", c.flows.params.desired_pdr},
                        {"pdr_threshold", c.flows.params.pdr_threshold},
                        {"deadline_budget", c.flows.params.deadline_budget},
                        {"start", c.flows.start},
                        {"stop", c.flows.stop.value_or(c.session)}};
  ordered_json list = ordered_json::array();
  for (const auto& f : c.flows.list) {
    ordered_json e = {{"src", f.src.value}};
    if (f.dst) e["dst"] = f.dst->value;
    if (f.interval) e["interval"] = *f.interval;
    if (f.start) e["start"] = *f.start;
    if (f.stop) e["stop"] = *f.stop;
    list.push_back(std::move(e));
  }
  flows["list"] = std::move(list);
  j["flows"] = std::move(flows);

  ordered_json events = ordered_json::array();
  for (const auto& e : c.critical_events) {
    ordered_json o = {{"time", e.time}, {"center", position_json(e.center)}, {"radius", e.radius}};
    if (e.designated_node) o["designated_node"] = e.designated_node->value;
    if (e.designated_flow) o["designated_flow"] = *e.designated_flow;
    o["designated_importance"] = e.designated_importance;
    events.push_back(std::move(o));
  }
  j["critical_events"] = std::move(events);

  ordered_json nets = ordered_json::array();
  for (const auto& n : c.networks) {
    ordered_json ids = ordered_json::array();
    for (const NodeId m : n.nodes) ids.push_back(m.value);
    nets.push_back({{"id", n.id.value}, {"bandwidth", n.bandwidth}, {"nodes", std::move(ids)}});
  }
  j["networks"] = std::move(nets);

  ordered_json nodes = ordered_json::array();
  for (const auto& o : c.nodes) {
    ordered_json e = {{"id", o.id.value}};
    if (o.kind) e["kind"] = kind_name(*o.kind);
    if (o.start) e["start"] = position_json(*o.start);
    if (o.patrol) {
      ordered_json route = ordered_json::array();
      for (const auto& p : *o.patrol) route.push_back(position_json(p));
      e["patrol"] = std::move(route);
    }
    if (o.speed) e["speed"] = *o.speed;
    if (o.energy) e["energy"] = *o.energy;
    nodes.push_back(std::move(e));
  }
  j["nodes"] = std::move(nodes);
  j["seeds"] = c.seeds;
  return j;
}

std::string dump_config(const ScenarioConfig& c) { return to_json(c).dump(2) + "\n"; }

}  // namespace wsnprio::harness
