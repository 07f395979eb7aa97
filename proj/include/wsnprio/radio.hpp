#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "wsnprio/types.hpp"

namespace wsnprio::radio {

inline constexpr double kSpeedOfLight = 299792458.0;

/// Two-ray ground reflection parameters. Defaults are the conventional
/// 914 MHz / 1.5 m omni-antenna setup; rx_threshold is normally derived from a
/// nominal range with threshold_for_range().
struct RadioParams {
  double tx_power{0.28183815};  // W
  double tx_gain{1.0};
  double rx_gain{1.0};
  double antenna_height_tx{1.5};  // m
  double antenna_height_rx{1.5};  // m
  double system_loss{1.0};
  double wavelength{kSpeedOfLight / 914e6};  // m
  double rx_threshold{3.652e-10};            // W

  /// Throws InvalidArgument naming the first bad field.
  void validate() const;
};

/// d_c = 4*pi*h_t*h_r / lambda.
double crossover_distance(const RadioParams& p);

/// Friis below the crossover distance, two-ray d^-4 law at and beyond it.
/// Throws ZeroDistance at d == 0.
double received_power(const RadioParams& p, double d);

/// Distance at which received power equals the threshold.
double range_for_threshold(const RadioParams& p, double threshold);
double threshold_for_range(const RadioParams& p, double range);

/// Co-located nodes are in range by convention.
bool in_range(const RadioParams& p, const Position& a, const Position& b);

struct GraphNode {
  NodeId id;
  Position position;
};

struct Neighbor {
  NodeId id;
  double distance{};
  bool operator==(const Neighbor&) const = default;
};

/// Undirected in-range graph. Adjacency lists are sorted by node id.
class ConnectivityGraph {
 public:
  ConnectivityGraph() = default;
  ConnectivityGraph(std::vector<NodeId> ids, std::vector<std::vector<Neighbor>> adjacency);

  [[nodiscard]] const std::vector<NodeId>& nodes() const noexcept { return ids_; }
  [[nodiscard]] bool contains(NodeId id) const;
  [[nodiscard]] std::span<const Neighbor> neighbors(NodeId id) const;
  [[nodiscard]] bool has_edge(NodeId a, NodeId b) const;
  [[nodiscard]] std::size_t edge_count() const;

  bool operator==(const ConnectivityGraph&) const = default;

 private:
  [[nodiscard]] std::ptrdiff_t index_of(NodeId id) const;

  std::vector<NodeId> ids_;
  std::vector<std::vector<Neighbor>> adjacency_;
};

/// OpenMP kernel: one row of the pairwise check per iteration.
ConnectivityGraph build_graph(std::span<const GraphNode> nodes, const RadioParams& params);

/// Serial all-pairs reference used by tests and the benchmark.
ConnectivityGraph build_graph_reference(std::span<const GraphNode> nodes, const RadioParams& params);

}  // namespace wsnprio::radio
