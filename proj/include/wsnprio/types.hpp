#pragma once

#include <cmath>
#include <compare>
#include <cstdint>
#include <functional>

namespace wsnprio {

/// Simulated time in seconds.
using SimTime = double;

struct NodeId {
  std::uint32_t value{};
  constexpr auto operator<=>(const NodeId&) const = default;
};

struct FlowId {
  std::uint32_t value{};
  constexpr auto operator<=>(const FlowId&) const = default;
};

struct PacketId {
  std::uint64_t value{};
  constexpr auto operator<=>(const PacketId&) const = default;
};

struct NetworkId {
  std::uint32_t value{};
  constexpr auto operator<=>(const NetworkId&) const = default;
};

enum class NodeKind { Sensor, ClusterHead, BaseStation };

struct Position {
  double x{};
  double y{};
  constexpr bool operator==(const Position&) const = default;
};

inline double distance(const Position& a, const Position& b) {
  return std::hypot(a.x - b.x, a.y - b.y);
}

struct Terrain {
  double width{2000.0};
  double height{2000.0};

  [[nodiscard]] bool contains(const Position& p) const {
    return p.x >= 0.0 && p.x <= width && p.y >= 0.0 && p.y <= height;
  }
};

}  // namespace wsnprio

template <>
struct std::hash<wsnprio::NodeId> {
  std::size_t operator()(const wsnprio::NodeId& id) const noexcept {
    return std::hash<std::uint32_t>{}(id.value);
  }
};
