#include "wsnsim/harvester.hpp"

#include <algorithm>
#include <cmath>

namespace wsnsim {

double compute_budget(const std::optional<EnergyLedger>& previous, const HarvestParams& params,
                      double banked) {
  if (!previous) return std::min(std::max(0.0, banked), params.harvester_capacity);
  const double wanted = params.transfer_efficiency * previous->total + std::max(0.0, banked);
  return std::min(wanted, params.harvester_capacity);
}

namespace {

double sum_in_order(const std::map<NodeId, double>& m) {
  double s = 0.0;
  for (const auto& [_, v] : m) s += v;
  return s;
}

// Adjusts one entry until the in-order sum reproduces `target` bit for bit.
bool correct_entry(std::map<NodeId, double>& m, NodeId key, double target) {
  double& v = m[key];
  for (int i = 0; i < 8; ++i) {
    const double s = sum_in_order(m);
    if (s == target) return true;
    v = std::max(0.0, v + (target - s));
  }
  for (int i = 0; i < 64; ++i) {
    const double s = sum_in_order(m);
    if (s == target) return true;
    v = s < target ? std::nextafter(v, INFINITY) : std::max(0.0, std::nextafter(v, 0.0));
  }
  return sum_in_order(m) == target;
}

}  // namespace

std::map<NodeId, double> allocate_per_cluster(double budget, const std::optional<EnergyLedger>& previous,
                                              const ClusterAssignment& assignment) {
  std::map<NodeId, double> out;
  if (assignment.tdma.empty()) return out;

  std::map<NodeId, double> weight;
  double total_weight = 0.0;
  for (const auto& [head, slots] : assignment.tdma) {
    double w = 0.0;
    if (previous) {
      auto consumed = [&](NodeId id) {
        return id < previous->per_node.size() ? previous->per_node[id] : 0.0;
      };
      w = consumed(head);
      for (NodeId m : slots) w += consumed(m);
    }
    weight[head] = w;
    total_weight += w;
  }

  const bool equal_split = !(total_weight > 0.0);
  const double n = static_cast<double>(weight.size());
  double assigned = 0.0;
  auto last = std::prev(weight.end());
  for (auto it = weight.begin(); it != last; ++it) {
    const double share = equal_split ? 1.0 / n : it->second / total_weight;
    const double a = budget * share;
    out[it->first] = a;
    assigned += a;
  }
  out[last->first] = std::max(0.0, budget - assigned);

  if (!correct_entry(out, last->first, budget)) {
    // Rounding ties can make the tail alone unable to hit the budget; move the fix elsewhere.
    std::vector<NodeId> keys;
    for (const auto& [k, _] : out) keys.push_back(k);
    std::stable_sort(keys.begin(), keys.end(), [&](NodeId a, NodeId b) { return out[a] > out[b]; });
    for (NodeId k : keys) {
      if (k != last->first && correct_entry(out, k, budget)) break;
    }
  }
  return out;
}

std::vector<NodeGain> recharge_cluster(std::span<NodeState> nodes, std::span<const NodeId> receivers,
                                       Point source, double e_h, const HarvestParams& params,
                                       double capacity, HarvesterState& harvester) {
  std::vector<NodeGain> gains;
  if (!(e_h > 0.0)) return gains;
  gains.reserve(receivers.size());
  double delivered = 0.0;
  for (NodeId id : receivers) {
    NodeState& node = nodes[id];
    if (!node.alive() && !params.allow_revival) continue;
    const double g = recharge_gain(e_h, distance(node.position(), source), params.d_min);
    const double credited = node.credit(g, capacity);
    delivered += credited;
    gains.push_back({id, g, credited});
  }
  harvester.emitted_cumulative += e_h;
  harvester.delivered_cumulative += delivered;
  return gains;
}

VisitPlan schedule_visits(const Tour& tour, double time_budget, const HarvestParams& params) {
  VisitPlan plan;
  const double speed = params.harvester_speed;
  Point at = tour.start;
  double elapsed = 0.0;
  double traveled = 0.0;
  for (const auto& stop : tour.waypoints) {
    const double leg = distance(at, stop.position);
    const double back = distance(stop.position, tour.start);
    const double arrive_and_dwell = elapsed + leg / speed + params.dwell_time;
    if (arrive_and_dwell + back / speed <= time_budget) {
      plan.visited.push_back(stop.head);
      elapsed = arrive_and_dwell;
      traveled += leg;
      at = stop.position;
    } else {
      plan.skipped.push_back(stop.head);
    }
  }
  if (!plan.visited.empty()) {
    const double back = distance(at, tour.start);
    traveled += back;
    elapsed += back / speed;
  }
  plan.total_time = elapsed;
  plan.traveled_length = traveled;
  return plan;
}

VisitReport execute_visits(const Tour& tour, const std::map<NodeId, double>& allocations,
                           const std::map<NodeId, std::vector<NodeId>>& receivers,
                           double time_budget, const HarvestParams& params, double capacity,
                           std::span<NodeState> nodes, HarvesterState& harvester) {
  VisitReport report;
  report.plan = schedule_visits(tour, time_budget, params);

  const double emitted_before = harvester.emitted_cumulative;
  const double delivered_before = harvester.delivered_cumulative;
  for (NodeId head : report.plan.visited) {
    const auto alloc = allocations.find(head);
    if (alloc == allocations.end()) continue;
    const auto who = receivers.find(head);
    const std::span<const NodeId> targets =
        who == receivers.end() ? std::span<const NodeId>{} : std::span<const NodeId>(who->second);
    auto g = recharge_cluster(nodes, targets, nodes[head].position(), alloc->second, params,
                              capacity, harvester);
    report.gains.insert(report.gains.end(), g.begin(), g.end());
    harvester.budget -= alloc->second;
  }
  for (NodeId head : report.plan.skipped) {
    if (const auto alloc = allocations.find(head); alloc != allocations.end()) {
      report.forfeited += alloc->second;
    }
  }
  harvester.budget = std::max(0.0, harvester.budget);
  harvester.position = tour.start;
  report.emitted = harvester.emitted_cumulative - emitted_before;
  report.delivered = harvester.delivered_cumulative - delivered_before;
  return report;
}

std::map<NodeId, std::vector<NodeId>> recharge_receivers(std::span<const NodeState> nodes,
                                                         const ClusterAssignment& assignment,
                                                         bool include_dead) {
  std::map<NodeId, std::vector<NodeId>> out;
  for (const auto& [head, slots] : assignment.tdma) {
    auto& r = out[head];
    r.push_back(head);
    r.insert(r.end(), slots.begin(), slots.end());
  }
  if (include_dead && !assignment.heads.empty()) {
    for (const auto& n : nodes) {
      if (n.alive() || out.contains(n.id()) || assignment.members.contains(n.id())) continue;
      out[nearest_head(n.position(), nodes, assignment.heads)].push_back(n.id());
    }
    for (auto& [_, r] : out) std::sort(r.begin() + 1, r.end());
  }
  return out;
}

}  // namespace wsnsim
