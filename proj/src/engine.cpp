#include "wsnsim/engine.hpp"

#include <algorithm>
#include <limits>

namespace wsnsim {

double total_energy(std::span<const NodeState> nodes) noexcept {
  double s = 0.0;
  for (const auto& n : nodes) s += n.energy();
  return s;
}

std::uint32_t alive_count(std::span<const NodeState> nodes) noexcept {
  return static_cast<std::uint32_t>(
      std::count_if(nodes.begin(), nodes.end(), [](const NodeState& n) { return n.alive(); }));
}

SimState initial_state(const ValidatedConfig& config) {
  SimState s;
  s.deployment = deploy(config);
  s.nodes = s.deployment.nodes;
  s.harvester.depot = config.depot_position();
  s.harvester.position = config.depot_position();
  s.election_rng = split_stream(config->rng_seed, "elect");
  return s;
}

namespace {

std::vector<Waypoint> waypoints_for(const ClusterAssignment& a, std::span<const NodeState> nodes) {
  std::vector<Waypoint> w;
  w.reserve(a.heads.size());
  for (NodeId h : a.heads) w.push_back({h, nodes[h].position()});
  return w;
}

}  // namespace

SimState step_round(SimState state, const ValidatedConfig& config) {
  const SimConfig& c = config.get();
  RoundTrace trace;
  trace.round_index = state.round_index;
  trace.energy_before = total_energy(state.nodes);

  for (auto& n : state.nodes) n.role = Role::Unassigned;

  // (1) election, (2) membership + TDMA
  std::vector<NodeId> heads;
  try {
    heads = c.fixed_ch_count
                ? elect_fixed_heads(state.nodes, state.round_index, c.ch_probability, state.election_rng)
                : elect_heads(state.nodes, state.round_index, c.ch_probability, state.election_rng);
  } catch (const NoAliveNodes&) {
    trace.network_dead = true;
    if (!state.first_dead_round) state.first_dead_round = state.round_index;
  }
  trace.assignment = assign_members(state.nodes, heads, state.round_index);
  for (NodeId h : heads) {
    state.nodes[h].role = Role::ClusterHead;
    state.nodes[h].rounds_since_ch = 0;
  }
  for (const auto& [m, _] : trace.assignment.members) state.nodes[m].role = Role::Member;

  // (3) data round, (4) the BS publishes the ledger
  trace.ledger = charge_round(state.nodes, trace.assignment, c, config.bs_position());

  // (5) budget from the previous round's report
  HarvesterState& hv = state.harvester;
  hv.budget = c.harvester_enabled ? compute_budget(state.previous_ledger, c.harvest, hv.banked) : 0.0;
  hv.banked = 0.0;
  trace.budget = hv.budget;

  // (6) allocation and tour, (7) visits
  if (c.harvester_enabled && hv.budget > 0.0 && !heads.empty()) {
    trace.allocations = allocate_per_cluster(hv.budget, state.previous_ledger, trace.assignment);
    const auto stops = waypoints_for(trace.assignment, state.nodes);
    trace.tour = c.tour_solver == TourSolver::Exact && stops.size() <= kMaxExactWaypoints
                     ? exact_tour(stops, hv.depot)
                     : plan_tour(stops, hv.depot);
    const auto receivers =
        recharge_receivers(state.nodes, trace.assignment, c.harvest.allow_revival);
    trace.visits = execute_visits(trace.tour, trace.allocations, receivers, c.round_duration,
                                  c.harvest, c.battery_capacity, state.nodes, hv);
    if (c.harvest.carry_over) hv.banked = trace.visits.forfeited;
  } else {
    trace.tour = make_tour(hv.depot, {});
    if (c.harvest.carry_over) hv.banked = hv.budget;
  }
  hv.budget = 0.0;

  // (8) metrics
  const RoundMetrics prev = state.history.empty() ? RoundMetrics{} : state.history.back();
  RoundMetrics m;
  m.round_index = state.round_index;
  m.sim_time = static_cast<double>(state.round_index + 1) * c.round_duration;
  m.alive_count = alive_count(state.nodes);
  m.consumed_cumulative = prev.consumed_cumulative + trace.ledger.total;
  m.emitted_cumulative = hv.emitted_cumulative;
  m.delivered_cumulative = hv.delivered_cumulative;
  m.data_received_cumulative = prev.data_received_cumulative + trace.ledger.bits_delivered;
  m.ch_count = static_cast<std::uint32_t>(heads.size());
  m.tour_length = trace.visits.plan.traveled_length;
  m.clusters_visited = static_cast<std::uint32_t>(trace.visits.plan.visited.size());
  state.history.push_back(m);

  for (auto& n : state.nodes) {
    if (n.rounds_since_ch < NodeState::kNeverHead) ++n.rounds_since_ch;
  }
  trace.energy_after = total_energy(state.nodes);
  state.previous_ledger = trace.ledger;
  ++state.round_index;
  state.sim_time = static_cast<double>(state.round_index) * c.round_duration;
  state.last_round = std::move(trace);
  return state;
}

std::vector<RoundMetrics> run(const ValidatedConfig& config, const RoundObserver& observer) {
  SimState state = initial_state(config);
  state.history.reserve(config->total_rounds);
  while (state.round_index < config->total_rounds) {
    state = step_round(std::move(state), config);
    if (observer) observer(state, *state.last_round);
  }
  return std::move(state.history);
}

}  // namespace wsnsim
