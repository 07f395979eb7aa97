#include <doctest.h>

#include <cmath>

#include "wsnprio/error.hpp"
#include "wsnprio/mobility.hpp"

using namespace wsnprio;
using namespace wsnprio::mobility;
using engine::Purpose;
using engine::RandomStream;

namespace {

const Terrain kTerrain{2000.0, 2000.0};

MotionState leg(Position from, Position to, double speed) {
  MotionState s;
  s.position = from;
  s.waypoint = to;
  s.speed = speed;
  s.regime = Regime::Uncontrolled;
  s.pause_on_arrival = 2.0;
  return s;
}

}  // namespace

TEST_CASE("step moves along the unit vector toward the waypoint") {
  RandomStream rng(1, Purpose::Mobility);
  const auto s = waypoint_step(leg({0, 0}, {3, 4}, 5.0), 0.0, 0.5, kTerrain, MotionParams{}, rng);
  CHECK(s.position.x == doctest::Approx(1.5).epsilon(1e-12));
  CHECK(s.position.y == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(rng.draws() == 0);
}

TEST_CASE("paused node stays put") {
  RandomStream rng(1, Purpose::Mobility);
  auto s = leg({10, 10}, {10, 10}, 5.0);
  s.pause_until = 5.0;
  const auto after = waypoint_step(s, 1.0, 0.5, kTerrain, MotionParams{}, rng);
  CHECK(after.position == Position{10, 10});
  CHECK(rng.draws() == 0);
}

TEST_CASE("arrival pauses and draws the next leg") {
  RandomStream rng(3, Purpose::Mobility);
  MotionParams params;
  const auto s = waypoint_step(leg({0, 0}, {3, 4}, 5.0), 0.0, 2.0, kTerrain, params, rng);
  CHECK(s.position == Position{3, 4});
  CHECK(s.pause_until == doctest::Approx(3.0));  // arrived at t = 1, pause 2 s
  CHECK(s.speed >= params.v_min);
  CHECK(s.speed <= params.v_max);
  CHECK(rng.draws() == 3);
}

TEST_CASE("zero or negative dt is rejected") {
  RandomStream rng(1, Purpose::Mobility);
  CHECK_THROWS_AS(waypoint_step(leg({0, 0}, {1, 1}, 1.0), 0.0, 0.0, kTerrain, MotionParams{}, rng), InvalidArgument);
}

TEST_CASE("random steps stay inside the terrain and within speed bounds") {
  RandomStream rng(11, Purpose::Mobility);
  MotionParams params;
  auto s = random_waypoint_start({1000, 1000}, kTerrain, params, rng);
  SimTime t = 0.0;
  for (int i = 0; i < 10000; ++i) {
    const double dt = 0.05 + 0.5 * rng.uniform(0.0, 1.0);
    s = waypoint_step(s, t, dt, kTerrain, params, rng);
    t += dt;
    REQUIRE(kTerrain.contains(s.position));
    REQUIRE(kTerrain.contains(s.waypoint));
    REQUIRE(s.speed >= params.v_min);
    REQUIRE(s.speed <= params.v_max);
  }
}

TEST_CASE("patrol speed is capped") {
  MotionParams params;
  CHECK_THROWS_AS(patrol_start({{0, 0}, {10, 0}}, 2.5, params), InvalidArgument);
  CHECK_THROWS_AS(patrol_start({}, 1.0, params), InvalidArgument);
  RandomStream rng(1, Purpose::Mobility);
  auto s = patrol_start({{0, 0}, {10, 0}, {10, 10}, {0, 10}}, 2.0, params);
  for (int i = 0; i < 500; ++i) {
    s = waypoint_step(s, i * 0.1, 0.1, kTerrain, params, rng);
    REQUIRE(s.speed <= params.controlled_cap);
  }
  CHECK(rng.draws() == 0);
  // 50 s at 2 m/s around a 40 m loop: 2.5 laps, ends at the far corner
  CHECK(s.position.x == doctest::Approx(10.0));
  CHECK(s.position.y == doctest::Approx(10.0));
}

TEST_CASE("interpolation is exact at the tick and linear within it") {
  const auto s = leg({0, 0}, {10, 0}, 10.0);
  CHECK(interpolate(s, 1.0, 1.0) == Position{0, 0});
  const Position mid = interpolate(s, 1.0, 1.5);
  CHECK(mid.x == doctest::Approx(5.0));
  CHECK(mid.y == 0.0);
}

TEST_CASE("interpolation holds a paused node") {
  auto s = leg({4, 4}, {100, 4}, 10.0);
  s.pause_until = 3.0;
  CHECK(interpolate(s, 1.0, 1.2) == Position{4, 4});
  CHECK(interpolate(s, 1.0, 2.9) == Position{4, 4});
  CHECK(speed_at(s, 1.0, 2.0) == 0.0);
  CHECK(speed_at(s, 1.0, 3.5) == 10.0);
}

TEST_CASE("mobility classes split at the thresholds") {
  const ClassThresholds th{5.0, 15.0};
  CHECK(classify_mobility(3.0, th) == MobilityClass::Low);
  CHECK(classify_mobility(5.0, th) == MobilityClass::Medium);
  CHECK(classify_mobility(14.999, th) == MobilityClass::Medium);
  CHECK(classify_mobility(15.0, th) == MobilityClass::High);
  CHECK(classify_mobility(20.0, th) == MobilityClass::High);
  CHECK(classify_mobility(0.0, th) == MobilityClass::Low);
  CHECK_THROWS_AS(classify_mobility(1.0, ClassThresholds{5.0, 5.0}), BadThresholds);
  CHECK_THROWS_AS(classify_mobility(1.0, ClassThresholds{6.0, 5.0}), BadThresholds);
  CHECK(std::string(to_string(MobilityClass::High)) == "V_H");
}

TEST_CASE("classification partitions every speed into one class") {
  RandomStream rng(5, Purpose::Mobility);
  for (int i = 0; i < 1000; ++i) {
    const double v1 = rng.uniform(0.0, 10.0);
    const double v2 = v1 + rng.uniform(0.001, 10.0);
    const double v = rng.uniform(0.0, 30.0);
    const auto c = classify_mobility(v, {v1, v2});
    const int expected = v < v1 ? 0 : (v < v2 ? 1 : 2);
    REQUIRE(static_cast<int>(c) == expected);
  }
}

namespace {

MobilityField scripted_field() {
  MobilityField f(kTerrain, MotionParams{});
  MotionState a = leg({100, 100}, {100, 1900}, 3.0);
  MotionState b = leg({200, 100}, {200, 1900}, 10.0);
  MotionState c = leg({300, 100}, {300, 1900}, 20.0);
  f.add(NodeId{0}, a, RandomStream(1, Purpose::Mobility, 0));
  f.add(NodeId{1}, b, RandomStream(1, Purpose::Mobility, 1));
  f.add(NodeId{2}, c, RandomStream(1, Purpose::Mobility, 2));
  return f;
}

}  // namespace

TEST_CASE("snapshot classifies each node from its speed") {
  const auto f = scripted_field();
  const auto snap = snapshot_classes(f, 0.0, ClassThresholds{5, 15});
  CHECK(snap.at(NodeId{0}) == MobilityClass::Low);
  CHECK(snap.at(NodeId{1}) == MobilityClass::Medium);
  CHECK(snap.at(NodeId{2}) == MobilityClass::High);
  CHECK_THROWS_AS(static_cast<void>(snap.at(NodeId{3})), UnknownNode);
}

TEST_CASE("all paused nodes are low mobility") {
  MobilityField f(kTerrain, MotionParams{});
  for (std::uint32_t i = 0; i < 4; ++i) {
    MotionState s = leg({100.0 * (i + 1), 50}, {1000, 1000}, 18.0);
    s.pause_until = 30.0;
    f.add(NodeId{i}, s, RandomStream(1, Purpose::Mobility, i));
  }
  const auto snap = snapshot_classes(f, 10.0, ClassThresholds{5, 15});
  for (std::uint32_t i = 0; i < 4; ++i) CHECK(snap.at(NodeId{i}) == MobilityClass::Low);
}

TEST_CASE("snapshots change only when retaken") {
  auto f = scripted_field();
  const ClassThresholds th{5, 15};
  const auto first = snapshot_classes(f, 0.0, th);
  // node 2 reaches its waypoint at t = 90 and pauses until 92
  for (int k = 1; k <= 910; ++k) f.step_to(k * 0.1);
  const auto copy = first;
  CHECK(first == copy);
  CHECK(first.at(NodeId{2}) == MobilityClass::High);
  const auto second = snapshot_classes(f, 91.0, th);
  CHECK(second.at(NodeId{2}) == MobilityClass::Low);
  CHECK_FALSE(first == second);
  CHECK(first.taken_at() == 0.0);
}

TEST_CASE("field rejects unknown nodes and sparse ids") {
  auto f = scripted_field();
  CHECK_THROWS_AS(static_cast<void>(f.position_at(NodeId{9}, 0.0)), UnknownNode);
  CHECK_THROWS_AS(static_cast<void>(f.speed_at(NodeId{9}, 0.0)), UnknownNode);
  CHECK_THROWS_AS(f.add(NodeId{7}, MotionState{}, RandomStream(1, Purpose::Mobility, 7)), InvalidArgument);
}

TEST_CASE("field positions between ticks interpolate") {
  auto f = scripted_field();
  f.step_to(1.0);
  CHECK(f.position_at(NodeId{1}, 1.0).y == doctest::Approx(110.0));
  CHECK(f.position_at(NodeId{1}, 1.05).y == doctest::Approx(110.5));
  CHECK(f.last_tick() == 1.0);
}
