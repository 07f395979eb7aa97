#include "wsnprio/engine/event_queue.hpp"

#include <cmath>
#include <string>

#include "wsnprio/error.hpp"

namespace wsnprio::engine {

EventHandle EventQueue::schedule(SimTime time, EventPayload payload) {
  if (!std::isfinite(time)) throw PastEvent("non-finite event time");
  if (time < clock_) {
    throw PastEvent("event at t=" + std::to_string(time) + " before clock t=" + std::to_string(clock_));
  }
  const std::uint64_t seq = next_sequence_++;
  heap_.push(Event{time, seq, std::move(payload)});
  return EventHandle{seq};
}

Event EventQueue::pop() {
  Event e = heap_.top();
  heap_.pop();
  clock_ = e.time;
  ++processed_;
  return e;
}

void EventQueue::advance_clock(SimTime t) {
  if (t > clock_) clock_ = t;
}

void run_until(EventQueue& queue, SimTime t_end, const std::function<void(const Event&)>& handle) {
  while (!queue.empty() && queue.top().time <= t_end) {
    const Event e = queue.pop();
    handle(e);
  }
  queue.advance_clock(t_end);
}

}  // namespace wsnprio::engine
