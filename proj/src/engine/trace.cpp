#include "wsnprio/engine/trace.hpp"

#include <array>
#include <charconv>
#include <istream>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "wsnprio/error.hpp"

namespace wsnprio::engine {

namespace {

enum class Field : std::uint8_t { Node, Peer, Packet, Flow, Frame, Freq, Slot, Count, Value, Value2, Cause, Flag };

struct KeyedField {
  std::string_view key;
  Field field;
};

struct KindLayout {
  RecordKind kind;
  std::string_view name;
  std::vector<KeyedField> fields;
};

const std::vector<KindLayout>& layouts() {
  static const std::vector<KindLayout> table = {
      {RecordKind::Generated, "gen",
       {{"node", Field::Node}, {"pkt", Field::Packet}, {"flow", Field::Flow}, {"bytes", Field::Count},
        {"imp", Field::Value}, {"deadline", Field::Value2}}},
      {RecordKind::Enqueued, "enq", {{"node", Field::Node}, {"pkt", Field::Packet}, {"qlen", Field::Count}}},
      {RecordKind::Allocated, "alloc", {{"node", Field::Node}, {"freq", Field::Freq}, {"slot", Field::Slot}}},
      {RecordKind::Granted, "grant",
       {{"node", Field::Node}, {"pkt", Field::Packet}, {"frame", Field::Frame}, {"freq", Field::Freq},
        {"slot", Field::Slot}}},
      {RecordKind::Transmitted, "tx",
       {{"node", Field::Node}, {"to", Field::Peer}, {"pkt", Field::Packet}, {"energy", Field::Value}}},
      {RecordKind::Relayed, "hop",
       {{"node", Field::Node}, {"from", Field::Peer}, {"pkt", Field::Packet}, {"energy", Field::Value}}},
      {RecordKind::Delivered, "deliver",
       {{"node", Field::Node}, {"from", Field::Peer}, {"pkt", Field::Packet}, {"flow", Field::Flow},
        {"bytes", Field::Count}, {"delay", Field::Value}, {"energy", Field::Value2}, {"ontime", Field::Flag}}},
      {RecordKind::Dropped, "drop",
       {{"node", Field::Node}, {"pkt", Field::Packet}, {"flow", Field::Flow}, {"cause", Field::Cause}}},
      {RecordKind::LinkBroken, "linkbreak", {{"node", Field::Node}, {"to", Field::Peer}, {"pkt", Field::Packet}}},
      {RecordKind::Orphaned, "orphan", {{"node", Field::Node}, {"frame", Field::Frame}}},
      {RecordKind::Critical, "critical", {{"event", Field::Count}}},
      {RecordKind::Depleted, "depleted", {{"node", Field::Node}}},
      {RecordKind::Energy, "energy", {{"node", Field::Node}, {"energy", Field::Value}}},
  };
  return table;
}

const KindLayout& layout_of(RecordKind kind) {
  for (const auto& l : layouts()) {
    if (l.kind == kind) return l;
  }
  throw InvalidArgument("unknown record kind");
}

constexpr std::array<std::string_view, 5> kCauseNames = {"overflow", "noroute", "expired", "gated", "starved"};

std::int64_t* int_field(TraceRecord& r, Field f) {
  switch (f) {
    case Field::Node: return &r.node;
    case Field::Peer: return &r.peer;
    case Field::Packet: return &r.packet;
    case Field::Flow: return &r.flow;
    case Field::Frame: return &r.frame;
    case Field::Freq: return &r.freq;
    case Field::Slot: return &r.slot;
    case Field::Count: return &r.count;
    default: return nullptr;
  }
}

double* double_field(TraceRecord& r, Field f) {
  if (f == Field::Value) return &r.value;
  if (f == Field::Value2) return &r.value2;
  return nullptr;
}

}  // namespace

std::string_view to_string(RecordKind kind) { return layout_of(kind).name; }

std::string_view to_string(DropCause cause) { return kCauseNames.at(static_cast<std::size_t>(cause)); }

std::optional<RecordKind> record_kind_from(std::string_view name) {
  for (const auto& l : layouts()) {
    if (l.name == name) return l.kind;
  }
  return std::nullopt;
}

std::optional<DropCause> drop_cause_from(std::string_view name) {
  for (std::size_t i = 0; i < kCauseNames.size(); ++i) {
    if (kCauseNames[i] == name) return static_cast<DropCause>(i);
  }
  return std::nullopt;
}

std::string format_double(double value) {
  std::array<char, 64> buf{};
  const auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
  if (ec != std::errc{}) throw InvalidArgument("unformattable double");
  return std::string(buf.data(), end);
}

void write_jsonl(const Trace& trace, std::ostream& out) {
  for (const TraceRecord& rec : trace.records) {
    TraceRecord r = rec;
    const KindLayout& layout = layout_of(r.kind);
    out << "{\"t\":" << format_double(r.time) << ",\"ev\":\"" << layout.name << '"';
    for (const auto& [key, field] : layout.fields) {
      out << ",\"" << key << "\":";
      if (auto* i = int_field(r, field)) {
        out << *i;
      } else if (auto* d = double_field(r, field)) {
        out << format_double(*d);
      } else if (field == Field::Cause) {
        out << '"' << to_string(r.cause) << '"';
      } else {
        out << (r.flag ? "true" : "false");
      }
    }
    out << "}\n";
  }
}

std::string to_jsonl(const Trace& trace) {
  std::ostringstream out;
  write_jsonl(trace, out);
  return out.str();
}

Trace parse_jsonl(std::istream& in) {
  Trace trace;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const std::string where = "trace line " + std::to_string(line_no);
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(line);
    } catch (const nlohmann::json::exception& e) {
      throw ParseError(where + ": " + e.what());
    }
    try {
      TraceRecord r;
      r.time = j.at("t").get<double>();
      const auto kind = record_kind_from(j.at("ev").get<std::string>());
      if (!kind) throw ParseError(where + ": unknown event name");
      r.kind = *kind;
      for (const auto& [key, field] : layout_of(r.kind).fields) {
        const auto& v = j.at(std::string(key));
        if (auto* i = int_field(r, field)) {
          *i = v.get<std::int64_t>();
        } else if (auto* d = double_field(r, field)) {
          *d = v.get<double>();
        } else if (field == Field::Cause) {
          const auto cause = drop_cause_from(v.get<std::string>());
          if (!cause) throw ParseError(where + ": unknown drop cause");
          r.cause = *cause;
        } else {
          r.flag = v.get<bool>();
        }
      }
      trace.records.push_back(r);
    } catch (const nlohmann::json::exception& e) {
      throw ParseError(where + ": " + e.what());
    }
  }
  return trace;
}

}  // namespace wsnprio::engine
