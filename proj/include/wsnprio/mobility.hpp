#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "wsnprio/engine/random.hpp"
#include "wsnprio/types.hpp"

namespace wsnprio::mobility {

/// Uncontrolled nodes follow random waypoint motion; controlled nodes
/// (cluster heads and base stations) patrol fixed waypoints at a capped speed.
enum class Regime : std::uint8_t { Uncontrolled, Controlled };

struct MotionParams {
  double v_min{1.0};
  double v_max{20.0};
  double pause{2.0};
  double controlled_cap{2.0};
};

struct MotionState {
  Position position;
  Position waypoint;
  double speed{0.0};
  SimTime pause_until{0.0};
  Regime regime{Regime::Uncontrolled};
  double pause_on_arrival{0.0};
  std::vector<Position> patrol;  // Controlled only
  std::size_t patrol_index{0};   // index of `waypoint` inside `patrol`
};

/// Fresh random-waypoint state at `position`: draws a first waypoint and speed.
MotionState random_waypoint_start(Position position, const Terrain& terrain, const MotionParams& params,
                                  engine::RandomStream& rng);

/// Controlled state patrolling `route` (looping) starting at route[0].
/// Throws InvalidArgument if the route is empty or speed is outside [0, cap].
MotionState patrol_start(std::vector<Position> route, double speed, const MotionParams& params);

/// Advances `state` from `now` to `now + dt`. The node moves along the
/// straight line toward its waypoint; on arrival it pauses and its next leg
/// (waypoint and, for uncontrolled nodes, speed) is drawn. Throws
/// InvalidArgument if dt <= 0.
MotionState waypoint_step(MotionState state, SimTime now, double dt, const Terrain& terrain,
                          const MotionParams& params, engine::RandomStream& rng);

/// Position at t >= state_time by linear interpolation along the current leg.
Position interpolate(const MotionState& state, SimTime state_time, SimTime t);

/// Instantaneous speed at t: zero while paused or after arriving on the leg.
double speed_at(const MotionState& state, SimTime state_time, SimTime t);

enum class MobilityClass : std::uint8_t { Low, Medium, High };

const char* to_string(MobilityClass c);

struct ClassThresholds {
  double v1{5.0};
  double v2{15.0};
};

/// speed < v1 -> Low, v1 <= speed < v2 -> Medium, speed >= v2 -> High.
/// Throws BadThresholds unless 0 <= v1 < v2.
MobilityClass classify_mobility(double speed, const ClassThresholds& thresholds);

/// Kinematic state of every node in one run. Node ids are dense and must be
/// added in order.
class MobilityField {
 public:
  MobilityField(Terrain terrain, MotionParams params) : terrain_(terrain), params_(params) {}

  void add(NodeId id, MotionState initial, engine::RandomStream rng);

  /// Steps every node from last_tick() to t.
  void step_to(SimTime t);

  [[nodiscard]] Position position_at(NodeId id, SimTime t) const;
  [[nodiscard]] double speed_at(NodeId id, SimTime t) const;
  [[nodiscard]] const MotionState& state(NodeId id) const;
  [[nodiscard]] SimTime last_tick() const noexcept { return last_tick_; }
  [[nodiscard]] std::size_t size() const noexcept { return states_.size(); }
  [[nodiscard]] const Terrain& terrain() const noexcept { return terrain_; }
  [[nodiscard]] const std::vector<engine::RandomStream>& streams() const noexcept { return rngs_; }

 private:
  void check(NodeId id) const;

  Terrain terrain_;
  MotionParams params_;
  std::vector<MotionState> states_;
  std::vector<engine::RandomStream> rngs_;
  SimTime last_tick_{0.0};
};

/// Mobility classes of all nodes, frozen at the critical event that took it.
class ClassSnapshot {
 public:
  ClassSnapshot() = default;
  ClassSnapshot(SimTime taken_at, std::vector<MobilityClass> classes)
      : taken_at_(taken_at), classes_(std::move(classes)) {}

  [[nodiscard]] MobilityClass at(NodeId id) const;
  [[nodiscard]] SimTime taken_at() const noexcept { return taken_at_; }
  [[nodiscard]] std::size_t size() const noexcept { return classes_.size(); }
  bool operator==(const ClassSnapshot&) const = default;

 private:
  SimTime taken_at_{0.0};
  std::vector<MobilityClass> classes_;
};

ClassSnapshot snapshot_classes(const MobilityField& field, SimTime t, const ClassThresholds& thresholds);

}  // namespace wsnprio::mobility
