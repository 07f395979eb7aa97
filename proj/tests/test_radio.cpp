#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "wsnprio/engine/random.hpp"
#include "wsnprio/error.hpp"
#include "wsnprio/radio.hpp"

using namespace wsnprio;
using namespace wsnprio::radio;

namespace {

RadioParams unit_power() {
  RadioParams p;
  p.tx_power = 1.0;
  p.wavelength = 0.328;
  return p;
}

std::vector<GraphNode> random_nodes(std::uint64_t seed, std::size_t n, double side) {
  engine::RandomStream rng(seed, engine::Purpose::Placement);
  std::vector<GraphNode> nodes;
  for (std::size_t i = 0; i < n; ++i) {
    // shuffled ids so the builder has to sort
    nodes.push_back({NodeId{static_cast<std::uint32_t>((i * 7919) % n)},
                     {rng.uniform(0.0, side), rng.uniform(0.0, side)}});
  }
  return nodes;
}

}  // namespace

TEST_CASE("crossover distance") {
  RadioParams p;
  p.wavelength = 0.328;
  CHECK(crossover_distance(p) == doctest::Approx(4.0 * std::numbers::pi * 2.25 / 0.328).epsilon(1e-12));
  CHECK(crossover_distance(p) == doctest::Approx(86.2).epsilon(1e-3));

  RadioParams unit;
  unit.antenna_height_tx = unit.antenna_height_rx = 1.0;
  unit.wavelength = 4.0 * std::numbers::pi;
  CHECK(crossover_distance(unit) == doctest::Approx(1.0).epsilon(1e-15));

  RadioParams doubled = p;
  doubled.antenna_height_tx *= 2;
  doubled.antenna_height_rx *= 2;
  CHECK(crossover_distance(doubled) == doctest::Approx(4.0 * crossover_distance(p)).epsilon(1e-15));
}

TEST_CASE("two-ray branch beyond the crossover") {
  CHECK(received_power(unit_power(), 200.0) == doctest::Approx(3.1640625e-9).epsilon(1e-12));
}

TEST_CASE("free-space branch below the crossover") {
  const double expected = 0.328 * 0.328 / std::pow(4.0 * std::numbers::pi * 10.0, 2);
  CHECK(received_power(unit_power(), 10.0) == doctest::Approx(expected).epsilon(1e-12));
  CHECK(received_power(unit_power(), 10.0) == doctest::Approx(6.814e-6).epsilon(1e-3));
}

TEST_CASE("branches agree at the crossover") {
  const RadioParams p = unit_power();
  const double dc = crossover_distance(p);
  const double friis = p.tx_power * p.wavelength * p.wavelength / std::pow(4.0 * std::numbers::pi * dc, 2);
  const double tworay = p.tx_power * std::pow(1.5, 4) / std::pow(dc, 4);
  CHECK(std::abs(friis - tworay) / tworay < 1e-9);
  CHECK(std::abs(received_power(p, dc) - received_power(p, std::nextafter(dc, 0.0))) / tworay < 1e-9);
}

TEST_CASE("power decays monotonically and scales by the path-loss exponent") {
  const RadioParams p = unit_power();
  double last = received_power(p, 0.5);
  for (double d = 1.0; d < 2000.0; d += 0.75) {
    const double now = received_power(p, d);
    REQUIRE(now < last);
    last = now;
  }
  CHECK(received_power(p, 200.0) / received_power(p, 400.0) == doctest::Approx(16.0).epsilon(1e-12));
  CHECK(received_power(p, 10.0) / received_power(p, 20.0) == doctest::Approx(4.0).epsilon(1e-12));
}

TEST_CASE("zero distance throws") {
  CHECK_THROWS_AS(received_power(unit_power(), 0.0), ZeroDistance);
  CHECK_THROWS_AS(received_power(unit_power(), -1.0), InvalidArgument);
}

TEST_CASE("threshold and range are inverse") {
  RadioParams p;
  for (double r : {20.0, 86.0, 250.0, 800.0}) {
    CHECK(range_for_threshold(p, threshold_for_range(p, r)) == doctest::Approx(r).epsilon(1e-9));
  }
}

TEST_CASE("in-range test against a 250 m threshold") {
  RadioParams p;
  p.rx_threshold = threshold_for_range(p, 250.0);
  CHECK(in_range(p, {0, 0}, {200, 0}));
  CHECK_FALSE(in_range(p, {0, 0}, {300, 0}));
  CHECK(in_range(p, {0, 0}, {0, 250}));
  CHECK(in_range(p, {5, 5}, {5, 5}));
  CHECK(in_range(p, {10, 20}, {150, 90}) == in_range(p, {150, 90}, {10, 20}));

  RadioParams zero = p;
  zero.rx_threshold = 0.0;
  CHECK(in_range(zero, {0, 0}, {1e6, 1e6}));
}

TEST_CASE("validation names the bad field") {
  RadioParams p;
  p.antenna_height_rx = 0.0;
  try {
    p.validate();
    FAIL("expected InvalidArgument");
  } catch (const InvalidArgument& e) {
    CHECK(std::string(e.what()).find("antenna_height_rx") != std::string::npos);
  }
  RadioParams lossy;
  lossy.system_loss = 0.5;
  CHECK_THROWS_AS(lossy.validate(), InvalidArgument);
}

TEST_CASE("two nodes at half range share one edge") {
  RadioParams p;
  p.rx_threshold = threshold_for_range(p, 250.0);
  const std::vector<GraphNode> nodes{{NodeId{0}, {0, 0}}, {NodeId{1}, {125, 0}}};
  const auto g = build_graph(nodes, p);
  CHECK(g.edge_count() == 1);
  CHECK(g.has_edge(NodeId{0}, NodeId{1}));
  CHECK(g.has_edge(NodeId{1}, NodeId{0}));
  CHECK(g.neighbors(NodeId{0})[0].distance == doctest::Approx(125.0));
}

TEST_CASE("distant clusters stay disconnected") {
  RadioParams p;
  p.rx_threshold = threshold_for_range(p, 250.0);
  std::vector<GraphNode> nodes;
  for (std::uint32_t i = 0; i < 3; ++i) nodes.push_back({NodeId{i}, {10.0 * i, 0}});
  for (std::uint32_t i = 3; i < 6; ++i) nodes.push_back({NodeId{i}, {1000.0 + 10.0 * i, 1000}});
  const auto g = build_graph(nodes, p);
  CHECK(g.edge_count() == 6);
  for (std::uint32_t a = 0; a < 3; ++a) {
    for (std::uint32_t b = 3; b < 6; ++b) CHECK_FALSE(g.has_edge(NodeId{a}, NodeId{b}));
  }
}

TEST_CASE("graph matches an all-pairs check") {
  RadioParams p;
  p.rx_threshold = threshold_for_range(p, 250.0);
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const auto nodes = random_nodes(seed, 22, 1000.0);
    const auto g = build_graph(nodes, p);
    for (const auto& a : nodes) {
      for (const auto& b : nodes) {
        if (a.id == b.id) continue;
        const bool expected = received_power(p, distance(a.position, b.position)) >= p.rx_threshold;
        REQUIRE(g.has_edge(a.id, b.id) == expected);
      }
    }
    CHECK(g == build_graph_reference(nodes, p));
  }
}

TEST_CASE("parallel graph build equals the serial reference on large sets") {
  RadioParams p;
  p.rx_threshold = threshold_for_range(p, 250.0);
  const auto nodes = random_nodes(99, 400, 2000.0);
  CHECK(build_graph(nodes, p) == build_graph_reference(nodes, p));
}
