#include "wsnprio/scheduler.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <string>

#include "wsnprio/error.hpp"

namespace wsnprio::sched {

void FlowParams::validate() const {
  if (!(desired_pdr > 0.0 && desired_pdr <= 1.0)) throw InvalidArgument("desired_pdr must be in (0, 1]");
  if (!(pdr_threshold >= 0.0 && pdr_threshold < 1.0)) throw InvalidArgument("pdr_threshold must be in [0, 1)");
  if (!(desired_pdr > pdr_threshold)) throw InvalidArgument("desired_pdr must exceed pdr_threshold");
  if (!(deadline_budget > 0.0)) throw InvalidArgument("deadline_budget must be > 0");
}

Ulb compute_ulb(SimTime deadline, SimTime now, int remaining_hops) {
  if (remaining_hops < 0) throw InvalidArgument("remaining_hops must be >= 0");
  if (now >= deadline) return {0.0, true};
  return {std::ldexp(deadline - now, -remaining_hops), false};
}

PriorityIndex pdr_gate(PriorityIndex pi, double pdr, const FlowParams& flow) {
  return pdr < flow.pdr_threshold ? PriorityIndex::sentinel() : pi;
}

PriorityIndex compute_pi_mdlps(double pdr, const FlowParams& flow, double ulb, double v, double x) {
  if (v == 0.0) throw ZeroVelocity("1/v term at v = 0");
  if (!(v > 0.0)) throw InvalidArgument("velocity must be > 0");
  if (!(x >= 1.0)) throw InvalidArgument("battery factor must be >= 1");
  if (!(pdr >= 0.0 && pdr <= 1.0)) throw InvalidArgument("pdr must be in [0, 1]");
  const PriorityIndex raw{(pdr / flow.desired_pdr) * ulb * (1.0 / v) * x};
  return pdr_gate(raw, pdr, flow);
}

std::string_view to_string(Scheme scheme) { return scheme == Scheme::Mdlps ? "mdlps" : "data"; }

std::optional<Scheme> scheme_from(std::string_view name) {
  if (name == "mdlps") return Scheme::Mdlps;
  if (name == "data") return Scheme::DataPriority;
  return std::nullopt;
}

PriorityIndex compute_pi_data(double importance) {
  if (!(importance > 0.0)) throw InvalidArgument("importance must be > 0");
  return {1.0 / importance};
}

int mobility_rank(mobility::MobilityClass c) {
  switch (c) {
    case mobility::MobilityClass::High: return 0;
    case mobility::MobilityClass::Medium: return 1;
    case mobility::MobilityClass::Low: return 2;
  }
  return 3;
}

int battery_rank(int battery_level) {
  return battery_level <= 0 ? std::numeric_limits<int>::max() : battery_level;
}

bool data_before(const DataCandidate& a, const DataCandidate& b) {
  const double pa = compute_pi_data(a.importance).value;
  const double pb = compute_pi_data(b.importance).value;
  if (pa != pb) return pa < pb;
  const int ma = mobility_rank(a.mobility);
  const int mb = mobility_rank(b.mobility);
  if (ma != mb) return ma < mb;
  const int ba = battery_rank(a.battery_level);
  const int bb = battery_rank(b.battery_level);
  if (ba != bb) return ba < bb;
  return a.node < b.node;
}

PriorityTuple priority_tuple(NodeId node, NetworkId network, const std::map<NetworkId, int>& n1_ranks,
                             const SchemeInputs& inputs) {
  const auto it = n1_ranks.find(network);
  if (it == n1_ranks.end()) throw UnknownNetwork("network " + std::to_string(network.value) + " has no rank");
  PriorityTuple t;
  t.n1 = it->second;
  t.node = node;
  if (const auto* m = std::get_if<MdlpsInputs>(&inputs)) {
    t.n2 = compute_pi_mdlps(m->pdr, m->flow, m->ulb, m->velocity, m->battery_factor);
  } else {
    const auto& d = std::get<DataInputs>(inputs);
    t.n2 = compute_pi_data(d.importance);
    t.mobility_key = mobility_rank(d.mobility);
    t.battery_key = battery_rank(d.battery_level);
  }
  return t;
}

std::vector<PriorityTuple> rank_candidates(std::span<const PriorityTuple> candidates) {
  std::vector<PriorityTuple> ranked(candidates.begin(), candidates.end());
  std::sort(ranked.begin(), ranked.end());
  return ranked;
}

NetworkRanking network_priority(std::span<const NetworkInfo> networks, const CriticalArea& area,
                                const NetworkWeights& weights) {
  if (!(area.radius > 0.0)) throw InvalidArgument("critical area radius must be > 0");
  if (!(weights.density >= 0.0 && weights.bandwidth >= 0.0) || (weights.density == 0.0 && weights.bandwidth == 0.0)) {
    throw InvalidArgument("network weights must be >= 0 and not both zero");
  }
  NetworkRanking out;
  std::vector<std::size_t> in_area(networks.size(), 0);
  std::size_t total_in_area = 0;
  double max_bw = 0.0;
  for (std::size_t i = 0; i < networks.size(); ++i) {
    for (const Position& p : networks[i].members) {
      if (distance(p, area.center) <= area.radius) ++in_area[i];
    }
    total_in_area += in_area[i];
    max_bw = std::max(max_bw, networks[i].bandwidth);
  }
  out.empty_area = total_in_area == 0;

  std::vector<std::pair<double, NetworkId>> order;
  for (std::size_t i = 0; i < networks.size(); ++i) {
    const double bw = max_bw > 0.0 ? networks[i].bandwidth / max_bw : 0.0;
    double score = 0.0;
    if (out.empty_area) {
      score = bw;
    } else {
      const double density = static_cast<double>(in_area[i]) / static_cast<double>(total_in_area);
      score = weights.density * density + weights.bandwidth * bw;
    }
    out.scores[networks[i].id] = score;
    order.emplace_back(score, networks[i].id);
  }
  std::sort(order.begin(), order.end(), [](const auto& a, const auto& b) {
    if (a.first != b.first) return a.first > b.first;
    return a.second < b.second;
  });
  for (std::size_t r = 0; r < order.size(); ++r) out.ranks[order[r].second] = static_cast<int>(r) + 1;
  return out;
}

SlotGrid::SlotGrid(int frequencies, int slots_per_frame, double frame_length)
    : frequencies_(frequencies), slots_(slots_per_frame), frame_length_(frame_length) {
  if (frequencies <= 0 || slots_per_frame <= 0) {
    throw EmptyGrid("grid " + std::to_string(frequencies) + "x" + std::to_string(slots_per_frame) + " has no positions");
  }
  if (!(frame_length > 0.0)) throw InvalidArgument("frame_length must be > 0");
  assignment_.assign(static_cast<std::size_t>(frequencies) * static_cast<std::size_t>(slots_per_frame), std::nullopt);
}

SlotGrid::Cell SlotGrid::cell(std::size_t scan_index) const {
  const auto f = static_cast<std::size_t>(frequencies_);
  return {static_cast<int>(scan_index % f), static_cast<int>(scan_index / f)};
}

std::optional<NodeId> SlotGrid::holder(int freq, int slot) const {
  if (freq < 0 || freq >= frequencies_ || slot < 0 || slot >= slots_) throw InvalidArgument("position out of grid");
  return assignment_[static_cast<std::size_t>(slot) * static_cast<std::size_t>(frequencies_) +
                     static_cast<std::size_t>(freq)];
}

bool SlotGrid::holds(NodeId node) const {
  return std::any_of(assignment_.begin(), assignment_.end(), [&](const auto& h) { return h && *h == node; });
}

SlotGrid allocate_slots(std::span<const PriorityTuple> sources, SlotGrid grid, SimTime t) {
  if (!grid.open_) throw FrozenGrid("allocation requested without an intervening critical event");
  std::vector<PriorityTuple> ranked = rank_candidates(sources);
  std::fill(grid.assignment_.begin(), grid.assignment_.end(), std::nullopt);
  std::size_t next = 0;
  std::vector<NodeId> placed;
  for (const PriorityTuple& src : ranked) {
    if (next == grid.assignment_.size()) break;
    // A node listed twice keeps only its best tuple.
    if (std::find(placed.begin(), placed.end(), src.node) != placed.end()) continue;
    grid.assignment_[next++] = src.node;
    placed.push_back(src.node);
  }
  grid.frozen_since_ = t;
  grid.open_ = false;
  return grid;
}

std::vector<Vacancy> fill_vacancies(const SlotGrid& grid, std::span<const PriorityTuple> candidates) {
  std::vector<Vacancy> out;
  std::vector<PriorityTuple> ranked = rank_candidates(candidates);
  std::size_t next = 0;
  std::vector<NodeId> used;
  for (std::size_t i = 0; i < grid.positions(); ++i) {
    if (grid.assignment()[i]) continue;
    while (next < ranked.size() &&
           (grid.holds(ranked[next].node) ||
            std::find(used.begin(), used.end(), ranked[next].node) != used.end())) {
      ++next;
    }
    if (next == ranked.size()) break;
    out.push_back({i, ranked[next].node});
    used.push_back(ranked[next].node);
    ++next;
  }
  return out;
}

ClusterAssignment assign_to_clusters(std::span<const ReportingNode> nodes, std::span<const radio::GraphNode> heads,
                                     const radio::RadioParams& params) {
  std::vector<radio::GraphNode> sorted_heads(heads.begin(), heads.end());
  std::sort(sorted_heads.begin(), sorted_heads.end(),
            [](const radio::GraphNode& a, const radio::GraphNode& b) { return a.id < b.id; });

  ClusterAssignment out;
  for (const auto& h : sorted_heads) out.reports.push_back({h.id, {}});

  for (const ReportingNode& n : nodes) {
    std::ptrdiff_t best = -1;
    double best_d = 0.0;
    for (std::size_t i = 0; i < sorted_heads.size(); ++i) {
      if (sorted_heads[i].id == n.candidate.node) {
        best = static_cast<std::ptrdiff_t>(i);
        break;
      }
      if (!radio::in_range(params, n.position, sorted_heads[i].position)) continue;
      const double d = distance(n.position, sorted_heads[i].position);
      if (best < 0 || d < best_d) {
        best = static_cast<std::ptrdiff_t>(i);
        best_d = d;
      }
    }
    if (best < 0) {
      out.orphans.push_back(n.candidate.node);
    } else {
      out.reports[static_cast<std::size_t>(best)].members.push_back(n.candidate);
    }
  }
  return out;
}

std::vector<DataCandidate> global_importance_ranking(std::span<const ClusterReport> reports) {
  std::vector<std::vector<DataCandidate>> local;
  local.reserve(reports.size());
  std::size_t total = 0;
  for (const ClusterReport& r : reports) {
    local.push_back(r.members);
    std::sort(local.back().begin(), local.back().end(), data_before);
    total += r.members.size();
  }

  // k-way merge of the per-head orders.
  struct Cursor {
    std::size_t list;
    std::size_t pos;
  };
  auto later = [&](const Cursor& a, const Cursor& b) { return data_before(local[b.list][b.pos], local[a.list][a.pos]); };
  std::priority_queue<Cursor, std::vector<Cursor>, decltype(later)> heads(later);
  for (std::size_t i = 0; i < local.size(); ++i) {
    if (!local[i].empty()) heads.push({i, 0});
  }
  std::vector<DataCandidate> merged;
  merged.reserve(total);
  while (!heads.empty()) {
    Cursor c = heads.top();
    heads.pop();
    merged.push_back(local[c.list][c.pos]);
    if (++c.pos < local[c.list].size()) heads.push(c);
  }
  return merged;
}

}  // namespace wsnprio::sched
