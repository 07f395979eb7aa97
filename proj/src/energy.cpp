#include "wsnprio/energy.hpp"

#include <algorithm>
#include <cmath>

#include "wsnprio/error.hpp"

namespace wsnprio::energy {

void BatteryState::validate() const {
  if (!(initial > 0.0)) throw InvalidArgument("energy.initial must be > 0");
  if (!(level >= 0.0 && level <= initial)) throw InvalidArgument("energy.level must be in [0, initial]");
  if (!(hard_threshold >= 0.0 && hard_threshold < initial)) {
    throw InvalidArgument("energy.hard_threshold must be in [0, initial)");
  }
  if (levels_above < 1) throw InvalidArgument("energy.levels_above must be >= 1");
  if (!(level_penalty >= 0.0)) throw InvalidArgument("energy.level_penalty must be >= 0");
}

void EnergyCosts::validate() const {
  if (!(idle_power >= 0.0)) throw InvalidArgument("energy.idle_power must be >= 0");
  if (!(rx_power >= idle_power)) throw InvalidArgument("energy.rx_power must be >= idle_power");
  if (!(tx_power >= rx_power)) throw InvalidArgument("energy.tx_power must be >= rx_power");
  if (!(link_rate > 0.0)) throw InvalidArgument("energy.link_rate must be > 0");
}

double airtime(const EnergyCosts& costs, std::uint64_t bytes) {
  return 8.0 * static_cast<double>(bytes) / costs.link_rate;
}

namespace {

Consumption spend(const BatteryState& state, double joules, const char* what) {
  if (state.depleted()) throw Depleted(std::string(what) + " on a depleted battery");
  Consumption c{state, 0.0, false};
  c.state.level = std::max(0.0, state.level - joules);
  c.spent = state.level - c.state.level;
  c.depleted_now = c.state.level <= 0.0;
  return c;
}

}  // namespace

Consumption consume_tx(const BatteryState& state, const EnergyCosts& costs, std::uint64_t bytes) {
  return spend(state, costs.tx_power * airtime(costs, bytes), "transmit");
}

Consumption consume_rx(const BatteryState& state, const EnergyCosts& costs, std::uint64_t bytes) {
  return spend(state, costs.rx_power * airtime(costs, bytes), "receive");
}

Consumption consume_idle(const BatteryState& state, const EnergyCosts& costs, double seconds) {
  return spend(state, costs.idle_power * seconds, "idle");
}

int battery_level(const BatteryState& s) {
  if (s.level < s.hard_threshold) return 0;
  const double width = (s.initial - s.hard_threshold) / s.levels_above;
  const auto steps = static_cast<int>(std::floor((s.level - s.hard_threshold) / width));
  return std::clamp(1 + steps, 1, s.levels_above);
}

double battery_factor(const BatteryState& s) {
  if (s.depleted()) throw Depleted("battery factor of a depleted node");
  if (s.level < s.hard_threshold) return s.hard_threshold / s.level;
  return 1.0 + (battery_level(s) - 1) * s.level_penalty;
}

}  // namespace wsnprio::energy
