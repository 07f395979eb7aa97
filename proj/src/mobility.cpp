#include "wsnprio/mobility.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "wsnprio/error.hpp"

namespace wsnprio::mobility {

namespace {

Position clamp_to(const Terrain& terrain, Position p) {
  return {std::clamp(p.x, 0.0, terrain.width), std::clamp(p.y, 0.0, terrain.height)};
}

Position toward(const Position& from, const Position& to, double travelled) {
  const double d = distance(from, to);
  if (d <= 0.0 || travelled >= d) return to;
  const double f = travelled / d;
  return {from.x + (to.x - from.x) * f, from.y + (to.y - from.y) * f};
}

void next_leg(MotionState& s, const Terrain& terrain, const MotionParams& params, engine::RandomStream& rng) {
  if (s.regime == Regime::Controlled) {
    s.patrol_index = (s.patrol_index + 1) % s.patrol.size();
    s.waypoint = s.patrol[s.patrol_index];
    return;
  }
  s.waypoint = {rng.uniform(0.0, terrain.width), rng.uniform(0.0, terrain.height)};
  s.speed = rng.uniform(params.v_min, params.v_max);
}

}  // namespace

MotionState random_waypoint_start(Position position, const Terrain& terrain, const MotionParams& params,
                                  engine::RandomStream& rng) {
  MotionState s;
  s.position = clamp_to(terrain, position);
  s.regime = Regime::Uncontrolled;
  s.pause_on_arrival = params.pause;
  next_leg(s, terrain, params, rng);
  return s;
}

MotionState patrol_start(std::vector<Position> route, double speed, const MotionParams& params) {
  if (route.empty()) throw InvalidArgument("patrol route is empty");
  if (speed < 0.0 || speed > params.controlled_cap) {
    throw InvalidArgument("controlled speed " + std::to_string(speed) + " outside [0, " +
                          std::to_string(params.controlled_cap) + "]");
  }
  MotionState s;
  s.regime = Regime::Controlled;
  s.position = route.front();
  s.speed = speed;
  s.patrol = std::move(route);
  s.patrol_index = s.patrol.size() > 1 ? 1 : 0;
  s.waypoint = s.patrol[s.patrol_index];
  return s;
}

MotionState waypoint_step(MotionState s, SimTime now, double dt, const Terrain& terrain, const MotionParams& params,
                          engine::RandomStream& rng) {
  if (!(dt > 0.0)) throw InvalidArgument("waypoint_step needs dt > 0");
  const SimTime end = now + dt;
  SimTime t = now;
  // A single-point patrol or zero speed never makes progress; the bound keeps
  // degenerate routes from spinning.
  for (int legs = 0; legs < 64; ++legs) {
    if (s.pause_until >= end) break;
    t = std::max(t, s.pause_until);
    const double d = distance(s.position, s.waypoint);
    if (d <= 0.0) {
      if (s.regime == Regime::Controlled && s.patrol.size() < 2) break;
      next_leg(s, terrain, params, rng);
      continue;
    }
    if (s.speed <= 0.0) break;
    const double reach = s.speed * (end - t);
    if (reach < d) {
      s.position = clamp_to(terrain, toward(s.position, s.waypoint, reach));
      break;
    }
    s.position = s.waypoint;
    t += d / s.speed;
    s.pause_until = t + s.pause_on_arrival;
    next_leg(s, terrain, params, rng);
  }
  return s;
}

Position interpolate(const MotionState& s, SimTime state_time, SimTime t) {
  const SimTime start = std::max(state_time, s.pause_until);
  if (t <= start || s.speed <= 0.0) return s.position;
  return toward(s.position, s.waypoint, s.speed * (t - start));
}

double speed_at(const MotionState& s, SimTime state_time, SimTime t) {
  if (t < s.pause_until) return 0.0;
  const SimTime start = std::max(state_time, s.pause_until);
  const double d = distance(s.position, s.waypoint);
  if (s.speed > 0.0 && d > 0.0 && s.speed * (t - start) >= d && s.pause_on_arrival > 0.0) return 0.0;
  return s.speed;
}

const char* to_string(MobilityClass c) {
  switch (c) {
    case MobilityClass::Low: return "V_L";
    case MobilityClass::Medium: return "V_M";
    case MobilityClass::High: return "V_H";
  }
  return "?";
}

MobilityClass classify_mobility(double speed, const ClassThresholds& th) {
  if (!(th.v1 >= 0.0 && th.v1 < th.v2)) {
    throw BadThresholds("mobility thresholds (" + std::to_string(th.v1) + ", " + std::to_string(th.v2) + ")");
  }
  if (speed < th.v1) return MobilityClass::Low;
  if (speed < th.v2) return MobilityClass::Medium;
  return MobilityClass::High;
}

void MobilityField::add(NodeId id, MotionState initial, engine::RandomStream rng) {
  if (id.value != states_.size()) throw InvalidArgument("node ids must be added densely in order");
  states_.push_back(std::move(initial));
  rngs_.push_back(std::move(rng));
}

void MobilityField::step_to(SimTime t) {
  const double dt = t - last_tick_;
  if (dt <= 0.0) return;
  for (std::size_t i = 0; i < states_.size(); ++i) {
    states_[i] = waypoint_step(std::move(states_[i]), last_tick_, dt, terrain_, params_, rngs_[i]);
  }
  last_tick_ = t;
}

void MobilityField::check(NodeId id) const {
  if (id.value >= states_.size()) throw UnknownNode("node " + std::to_string(id.value));
}

Position MobilityField::position_at(NodeId id, SimTime t) const {
  check(id);
  return clamp_to(terrain_, interpolate(states_[id.value], last_tick_, t));
}

double MobilityField::speed_at(NodeId id, SimTime t) const {
  check(id);
  return mobility::speed_at(states_[id.value], last_tick_, t);
}

const MotionState& MobilityField::state(NodeId id) const {
  check(id);
  return states_[id.value];
}

MobilityClass ClassSnapshot::at(NodeId id) const {
  if (id.value >= classes_.size()) throw UnknownNode("node " + std::to_string(id.value) + " not in snapshot");
  return classes_[id.value];
}

ClassSnapshot snapshot_classes(const MobilityField& field, SimTime t, const ClassThresholds& thresholds) {
  std::vector<MobilityClass> classes;
  classes.reserve(field.size());
  for (std::uint32_t i = 0; i < field.size(); ++i) {
    classes.push_back(classify_mobility(field.speed_at(NodeId{i}, t), thresholds));
  }
  return ClassSnapshot(t, std::move(classes));
}

}  // namespace wsnprio::mobility
