#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <queue>
#include <variant>
#include <vector>

#include "wsnprio/types.hpp"

namespace wsnprio::engine {

enum class EventKind : std::uint8_t {
  PacketGenerated,
  FrameBoundary,
  MobilityTick,
  CriticalEvent,
  PacketDelivered,
  EnergyDepleted,
};

struct PacketGenerated {
  std::size_t flow{};
  std::uint64_t emission{};
};
struct FrameBoundary {
  std::uint64_t frame{};
};
struct MobilityTick {
  std::uint64_t tick{};
};
struct CriticalEvent {
  std::size_t index{};
};
struct PacketDelivered {
  std::uint64_t transmission{};
};
struct EnergyDepleted {
  NodeId node{};
};

// Alternative order matches EventKind.
using EventPayload = std::variant<PacketGenerated, FrameBoundary, MobilityTick, CriticalEvent,
                                  PacketDelivered, EnergyDepleted>;

struct Event {
  SimTime time{};
  std::uint64_t sequence{};
  EventPayload payload;

  [[nodiscard]] EventKind kind() const noexcept { return static_cast<EventKind>(payload.index()); }
};

struct EventHandle {
  std::uint64_t sequence{};
};

/// Priority queue keyed by (time, sequence). Sequence numbers are assigned at
/// schedule time, so events sharing a timestamp dequeue in insertion order.
class EventQueue {
 public:
  EventHandle schedule(SimTime time, EventPayload payload);

  [[nodiscard]] bool empty() const noexcept { return heap_.empty(); }
  [[nodiscard]] std::size_t pending() const noexcept { return heap_.size(); }
  [[nodiscard]] const Event& top() const { return heap_.top(); }
  [[nodiscard]] SimTime clock() const noexcept { return clock_; }
  [[nodiscard]] std::uint64_t scheduled_count() const noexcept { return next_sequence_; }
  [[nodiscard]] std::uint64_t processed_count() const noexcept { return processed_; }

  /// Removes the head event and advances the clock to its time.
  Event pop();

  /// Moves the clock forward without processing anything. Never moves it back.
  void advance_clock(SimTime t);

 private:
  struct Later {
    bool operator()(const Event& a, const Event& b) const {
      if (a.time != b.time) return a.time > b.time;
      return a.sequence > b.sequence;
    }
  };

  std::priority_queue<Event, std::vector<Event>, Later> heap_;
  SimTime clock_{0.0};
  std::uint64_t next_sequence_{0};
  std::uint64_t processed_{0};
};

/// Processes every event with time <= t_end in (time, sequence) order, then
/// moves the clock to t_end. Handlers may schedule further events.
void run_until(EventQueue& queue, SimTime t_end, const std::function<void(const Event&)>& handle);

}  // namespace wsnprio::engine
