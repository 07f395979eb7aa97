#include "wsnprio/radio.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "wsnprio/error.hpp"

namespace wsnprio::radio {

void RadioParams::validate() const {
  auto positive = [](double v, const char* name) {
    if (!(v > 0.0) || !std::isfinite(v)) throw InvalidArgument(std::string("radio.") + name + " must be > 0");
  };
  positive(tx_power, "tx_power");
  positive(tx_gain, "tx_gain");
  positive(rx_gain, "rx_gain");
  positive(antenna_height_tx, "antenna_height_tx");
  positive(antenna_height_rx, "antenna_height_rx");
  positive(wavelength, "wavelength");
  positive(rx_threshold, "rx_threshold");
  if (!(system_loss >= 1.0)) throw InvalidArgument("radio.system_loss must be >= 1");
}

double crossover_distance(const RadioParams& p) {
  return 4.0 * std::numbers::pi * p.antenna_height_tx * p.antenna_height_rx / p.wavelength;
}

namespace {

double friis(const RadioParams& p, double d) {
  const double m = 4.0 * std::numbers::pi * d;
  return p.tx_power * p.tx_gain * p.rx_gain * p.wavelength * p.wavelength / (m * m * p.system_loss);
}

double two_ray(const RadioParams& p, double d) {
  const double hh = p.antenna_height_tx * p.antenna_height_tx * p.antenna_height_rx * p.antenna_height_rx;
  return p.tx_power * p.tx_gain * p.rx_gain * hh / (d * d * d * d * p.system_loss);
}

}  // namespace

double received_power(const RadioParams& p, double d) {
  if (d == 0.0) throw ZeroDistance("received_power at d = 0");
  if (!(d > 0.0)) throw InvalidArgument("received_power needs d > 0");
  return d < crossover_distance(p) ? friis(p, d) : two_ray(p, d);
}

double range_for_threshold(const RadioParams& p, double threshold) {
  if (!(threshold > 0.0)) throw InvalidArgument("threshold must be > 0");
  const double dc = crossover_distance(p);
  const double gain = p.tx_power * p.tx_gain * p.rx_gain / (threshold * p.system_loss);
  if (threshold >= two_ray(p, dc)) {
    return p.wavelength / (4.0 * std::numbers::pi) * std::sqrt(gain);
  }
  const double hh = p.antenna_height_tx * p.antenna_height_tx * p.antenna_height_rx * p.antenna_height_rx;
  return std::pow(gain * hh, 0.25);
}

double threshold_for_range(const RadioParams& p, double range) { return received_power(p, range); }

bool in_range(const RadioParams& p, const Position& a, const Position& b) {
  const double d = distance(a, b);
  if (d == 0.0) return true;
  return received_power(p, d) >= p.rx_threshold;
}

ConnectivityGraph::ConnectivityGraph(std::vector<NodeId> ids, std::vector<std::vector<Neighbor>> adjacency)
    : ids_(std::move(ids)), adjacency_(std::move(adjacency)) {}

std::ptrdiff_t ConnectivityGraph::index_of(NodeId id) const {
  const auto it = std::lower_bound(ids_.begin(), ids_.end(), id);
  if (it == ids_.end() || *it != id) return -1;
  return it - ids_.begin();
}

bool ConnectivityGraph::contains(NodeId id) const { return index_of(id) >= 0; }

std::span<const Neighbor> ConnectivityGraph::neighbors(NodeId id) const {
  const auto i = index_of(id);
  if (i < 0) return {};
  return adjacency_[static_cast<std::size_t>(i)];
}

bool ConnectivityGraph::has_edge(NodeId a, NodeId b) const {
  const auto n = neighbors(a);
  return std::binary_search(n.begin(), n.end(), Neighbor{b, 0.0},
                            [](const Neighbor& x, const Neighbor& y) { return x.id < y.id; });
}

std::size_t ConnectivityGraph::edge_count() const {
  std::size_t twice = 0;
  for (const auto& row : adjacency_) twice += row.size();
  return twice / 2;
}

namespace {

std::vector<GraphNode> sorted_by_id(std::span<const GraphNode> nodes) {
  std::vector<GraphNode> sorted(nodes.begin(), nodes.end());
  std::sort(sorted.begin(), sorted.end(), [](const GraphNode& a, const GraphNode& b) { return a.id < b.id; });
  return sorted;
}

std::vector<NodeId> ids_of(const std::vector<GraphNode>& sorted) {
  std::vector<NodeId> ids;
  ids.reserve(sorted.size());
  for (const auto& n : sorted) ids.push_back(n.id);
  return ids;
}

}  // namespace

ConnectivityGraph build_graph(std::span<const GraphNode> nodes, const RadioParams& params) {
  const std::vector<GraphNode> sorted = sorted_by_id(nodes);
  const auto n = static_cast<std::ptrdiff_t>(sorted.size());
  std::vector<std::vector<Neighbor>> adjacency(sorted.size());

#pragma omp parallel for schedule(dynamic, 16) if (n >= 128)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    auto& row = adjacency[static_cast<std::size_t>(i)];
    const Position& a = sorted[static_cast<std::size_t>(i)].position;
    for (std::ptrdiff_t j = 0; j < n; ++j) {
      if (j == i) continue;
      const auto& other = sorted[static_cast<std::size_t>(j)];
      if (in_range(params, a, other.position)) row.push_back({other.id, distance(a, other.position)});
    }
  }
  return ConnectivityGraph(ids_of(sorted), std::move(adjacency));
}

ConnectivityGraph build_graph_reference(std::span<const GraphNode> nodes, const RadioParams& params) {
  const std::vector<GraphNode> sorted = sorted_by_id(nodes);
  std::vector<std::vector<Neighbor>> adjacency(sorted.size());
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    for (std::size_t j = i + 1; j < sorted.size(); ++j) {
      const double d = distance(sorted[i].position, sorted[j].position);
      const bool linked = d == 0.0 || received_power(params, d) >= params.rx_threshold;
      if (!linked) continue;
      adjacency[i].push_back({sorted[j].id, d});
      adjacency[j].push_back({sorted[i].id, d});
    }
  }
  for (auto& row : adjacency) {
    std::sort(row.begin(), row.end(), [](const Neighbor& a, const Neighbor& b) { return a.id < b.id; });
  }
  return ConnectivityGraph(ids_of(sorted), std::move(adjacency));
}

}  // namespace wsnprio::radio
