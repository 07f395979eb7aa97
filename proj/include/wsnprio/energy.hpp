#pragma once

#include <cstdint>

namespace wsnprio::energy {

/// Battery charge in joules plus the thresholding used for priorities.
/// Above the hard threshold the remaining span is split into `levels_above`
/// equal-width levels.
struct BatteryState {
  double level{50.0};
  double initial{50.0};
  double hard_threshold{10.0};
  int levels_above{3};
  double level_penalty{0.25};

  [[nodiscard]] bool depleted() const noexcept { return level <= 0.0; }
  /// Throws InvalidArgument naming the first bad field.
  void validate() const;
};

struct EnergyCosts {
  double tx_power{0.6};    // W
  double rx_power{0.3};    // W
  double idle_power{0.0};  // W
  double link_rate{1e6};   // bit/s

  void validate() const;
};

struct Consumption {
  BatteryState state;
  double spent{0.0};
  bool depleted_now{false};  // this charge took the level to zero
};

/// Seconds on air for a payload of `bytes`.
double airtime(const EnergyCosts& costs, std::uint64_t bytes);

/// level' = max(0, level - tx_power * airtime). Throws Depleted at level 0.
Consumption consume_tx(const BatteryState& state, const EnergyCosts& costs, std::uint64_t bytes);
Consumption consume_rx(const BatteryState& state, const EnergyCosts& costs, std::uint64_t bytes);
Consumption consume_idle(const BatteryState& state, const EnergyCosts& costs, double seconds);

/// 0 below the hard threshold; 1..levels_above at or above it.
int battery_level(const BatteryState& state);

/// Battery factor X of the MDLPS priority index.
///   level <  BP_th : X = BP_th / level        (less charge -> larger X)
///   level >= BP_th : X = 1 + (index - 1) * penalty
/// so X is smallest, exactly 1, on the first level above the threshold.
/// Throws Depleted at level 0.
double battery_factor(const BatteryState& state);

}  // namespace wsnprio::energy
