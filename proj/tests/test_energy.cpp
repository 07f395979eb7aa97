#include <doctest.h>

#include "wsnprio/energy.hpp"
#include "wsnprio/engine/random.hpp"
#include "wsnprio/error.hpp"

using namespace wsnprio;
using namespace wsnprio::energy;

namespace {

BatteryState at(double level) {
  BatteryState s;
  s.level = level;
  return s;
}

}  // namespace

TEST_CASE("transmit cost is power times airtime") {
  const EnergyCosts costs;
  CHECK(airtime(costs, 1000) == doctest::Approx(0.008));
  const auto c = consume_tx(at(50.0), costs, 1000);
  CHECK(c.spent == doctest::Approx(0.0048).epsilon(1e-12));
  CHECK(c.state.level == doctest::Approx(50.0 - 0.0048).epsilon(1e-12));
  CHECK_FALSE(c.depleted_now);
  const auto r = consume_rx(at(50.0), costs, 1000);
  CHECK(r.spent == doctest::Approx(0.0024).epsilon(1e-12));
}

TEST_CASE("empty payload costs nothing") {
  const auto c = consume_tx(at(20.0), EnergyCosts{}, 0);
  CHECK(c.state.level == 20.0);
  CHECK(c.spent == 0.0);
}

TEST_CASE("charge clamps at zero and flags depletion") {
  const auto c = consume_tx(at(0.001), EnergyCosts{}, 1000);
  CHECK(c.state.level == 0.0);
  CHECK(c.spent == doctest::Approx(0.001));
  CHECK(c.depleted_now);
  CHECK(c.state.depleted());
  CHECK_THROWS_AS(consume_tx(c.state, EnergyCosts{}, 1000), Depleted);
  CHECK_THROWS_AS(consume_rx(c.state, EnergyCosts{}, 1000), Depleted);
}

TEST_CASE("idle drain uses idle power") {
  EnergyCosts costs;
  costs.idle_power = 0.01;
  CHECK(consume_idle(at(1.0), costs, 2.0).state.level == doctest::Approx(0.98));
}

TEST_CASE("cost ordering is validated") {
  EnergyCosts costs;
  costs.rx_power = 0.7;
  CHECK_THROWS_AS(costs.validate(), InvalidArgument);
  BatteryState s;
  s.hard_threshold = 50.0;
  CHECK_THROWS_AS(s.validate(), InvalidArgument);
  CHECK_NOTHROW(BatteryState{}.validate());
}

TEST_CASE("battery levels") {
  CHECK(battery_level(at(5.0)) == 0);
  CHECK(battery_level(at(10.0)) == 1);
  CHECK(battery_level(at(23.3)) == 1);
  CHECK(battery_level(at(23.34)) == 2);
  CHECK(battery_level(at(37.0)) == 3);
  CHECK(battery_level(at(50.0)) == 3);
}

TEST_CASE("battery factor examples") {
  CHECK(battery_factor(at(10.0)) == doctest::Approx(1.0));
  CHECK(battery_factor(at(5.0)) == doctest::Approx(2.0));
  CHECK(battery_factor(at(50.0)) == doctest::Approx(1.5));
  CHECK_THROWS_AS(battery_factor(at(0.0)), Depleted);
}

TEST_CASE("same level gives the same factor") {
  engine::RandomStream rng(4, engine::Purpose::Traffic);
  for (int i = 0; i < 1000; ++i) {
    const double a = rng.uniform(10.0, 50.0);
    const double b = rng.uniform(10.0, 50.0);
    if (battery_level(at(a)) == battery_level(at(b))) {
      REQUIRE(battery_factor(at(a)) == battery_factor(at(b)));
    }
  }
}

TEST_CASE("factor falls below the threshold and steps up above it") {
  engine::RandomStream rng(8, engine::Purpose::Traffic);
  for (int i = 0; i < 1000; ++i) {
    const double a = rng.uniform(0.01, 50.0);
    const double b = rng.uniform(0.01, 50.0);
    const double lo = std::min(a, b);
    const double hi = std::max(a, b);
    if (hi < 10.0 && lo < hi) REQUIRE(battery_factor(at(lo)) > battery_factor(at(hi)));
    if (lo >= 10.0) REQUIRE(battery_factor(at(lo)) <= battery_factor(at(hi)));
    REQUIRE(battery_factor(at(a)) >= battery_factor(at(10.0)));
  }
}
