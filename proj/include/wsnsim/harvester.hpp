#pragma once

#include <map>
#include <optional>
#include <span>
#include <vector>

#include "wsnsim/clustering.hpp"
#include "wsnsim/config.hpp"
#include "wsnsim/radio.hpp"
#include "wsnsim/tour.hpp"

namespace wsnsim {

struct HarvesterState {
  double budget = 0.0;  // joules available this round
  Point position;
  Point depot;
  double emitted_cumulative = 0.0;
  double delivered_cumulative = 0.0;
  double banked = 0.0;  // forfeited allocations kept for the next round (carry_over only)

  friend bool operator==(const HarvesterState&, const HarvesterState&) = default;
};

/// min(efficiency * previous network consumption [+ banked], capacity).
/// No previous round means a zero budget.
double compute_budget(const std::optional<EnergyLedger>& previous, const HarvestParams& params,
                      double banked = 0.0);

/// Splits `budget` across the current clusters in proportion to what their
/// current nodes consumed last round. Falls back to an equal split when that
/// information is missing or all zero. The last entry absorbs rounding so the
/// entries sum (in key order) to exactly `budget`.
std::map<NodeId, double> allocate_per_cluster(double budget, const std::optional<EnergyLedger>& previous,
                                              const ClusterAssignment& assignment);

/// Inverse-square gain at distance d, with the distance floored at d_min.
inline double recharge_gain(double e_h, double d, double d_min) noexcept {
  const double r = d < d_min ? d_min : d;
  return e_h / (r * r);
}

struct NodeGain {
  NodeId node;
  double nominal;   // e_h / max(d, d_min)^2
  double credited;  // after the battery capacity clamp

  friend bool operator==(const NodeGain&, const NodeGain&) = default;
};

/// Broadcasts `e_h` from `source`: every receiver gains per the
/// inverse-square law, clamped at `capacity`. Dead receivers are skipped
/// unless revival is allowed. Updates the harvester's emitted/delivered totals.
std::vector<NodeGain> recharge_cluster(std::span<NodeState> nodes, std::span<const NodeId> receivers,
                                       Point source, double e_h, const HarvestParams& params,
                                       double capacity, HarvesterState& harvester);

/// Which stops of a tour fit into one round.
struct VisitPlan {
  std::vector<NodeId> visited;
  std::vector<NodeId> skipped;
  double total_time = 0.0;       // s, including the trip back to the depot
  double traveled_length = 0.0;  // m

  friend bool operator==(const VisitPlan&, const VisitPlan&) = default;
};

/// Walks the tour in order. A stop is taken only if travelling there,
/// dwelling, and returning to the depot all fit within `time_budget`;
/// otherwise it is skipped and the walk continues from the current position.
VisitPlan schedule_visits(const Tour& tour, double time_budget, const HarvestParams& params);

struct VisitReport {
  VisitPlan plan;
  double emitted = 0.0;
  double delivered = 0.0;
  double forfeited = 0.0;
  std::vector<NodeGain> gains;
};

/// Schedules the tour and recharges each visited cluster with its allocation.
/// `receivers` maps head id -> nodes charged at that stop.
VisitReport execute_visits(const Tour& tour, const std::map<NodeId, double>& allocations,
                           const std::map<NodeId, std::vector<NodeId>>& receivers,
                           double time_budget, const HarvestParams& params, double capacity,
                           std::span<NodeState> nodes, HarvesterState& harvester);

/// Nodes charged at each head's stop: the head, its members, and (when
/// revival is allowed) dead nodes whose nearest current head it is.
std::map<NodeId, std::vector<NodeId>> recharge_receivers(std::span<const NodeState> nodes,
                                                         const ClusterAssignment& assignment,
                                                         bool include_dead);

}  // namespace wsnsim
