#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "wsnprio/types.hpp"

namespace wsnprio::engine {

enum class RecordKind : std::uint8_t {
  Generated,    // packet created at its source
  Enqueued,     // packet admitted to a node queue
  Allocated,    // position (freq, slot) frozen to a node at a critical event
  Granted,      // node uses a position in a frame to send one packet
  Transmitted,  // sender finished a transmission; carries sender energy
  Relayed,      // packet received by an intermediate node; carries its energy
  Delivered,    // packet reached its destination
  Dropped,      // packet terminated without delivery
  LinkBroken,   // next hop no longer reachable at transmission time
  Orphaned,     // sensor without an in-range cluster head when ranked
  Critical,     // critical event processed
  Depleted,     // node battery reached zero
  Energy,       // idle-drain energy sample
};

enum class DropCause : std::uint8_t { QueueOverflow, NoRoute, Expired, Gated, Starved };

std::string_view to_string(RecordKind kind);
std::string_view to_string(DropCause cause);
std::optional<RecordKind> record_kind_from(std::string_view name);
std::optional<DropCause> drop_cause_from(std::string_view name);

/// One trace line. Fields not used by a record kind keep their defaults and
/// are omitted from the serialized form.
struct TraceRecord {
  SimTime time{};
  RecordKind kind{};
  std::int64_t node{-1};
  std::int64_t peer{-1};
  std::int64_t packet{-1};
  std::int64_t flow{-1};
  std::int64_t frame{-1};
  std::int64_t freq{-1};
  std::int64_t slot{-1};
  std::int64_t count{-1};
  double value{0.0};
  double value2{0.0};
  DropCause cause{DropCause::Starved};
  bool flag{false};

  bool operator==(const TraceRecord&) const = default;
};

struct Trace {
  std::vector<TraceRecord> records;

  bool operator==(const Trace&) const = default;
};

/// Line-delimited JSON, one record per line. Doubles use the shortest
/// representation that round-trips.
void write_jsonl(const Trace& trace, std::ostream& out);
std::string to_jsonl(const Trace& trace);
/// Throws ParseError naming the offending line.
Trace parse_jsonl(std::istream& in);

/// Shortest round-trip decimal text of a double.
std::string format_double(double value);

}  // namespace wsnprio::engine
