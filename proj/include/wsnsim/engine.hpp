#pragma once

#include <functional>
#include <map>
#include <optional>
#include <vector>

#include "wsnsim/clustering.hpp"
#include "wsnsim/config.hpp"
#include "wsnsim/harvester.hpp"
#include "wsnsim/radio.hpp"
#include "wsnsim/random.hpp"
#include "wsnsim/topology.hpp"
#include "wsnsim/tour.hpp"

namespace wsnsim {

/// Everything that happened in one round, for observers and tests.
struct RoundTrace {
  std::uint32_t round_index = 0;
  bool network_dead = false;  // no alive node at election time
  ClusterAssignment assignment;
  EnergyLedger ledger;
  double budget = 0.0;
  std::map<NodeId, double> allocations;
  Tour tour;
  VisitReport visits;
  double energy_before = 0.0;  // sum over nodes at round start
  double energy_after = 0.0;   // sum over nodes after recharge
};

struct SimState {
  std::uint32_t round_index = 0;
  double sim_time = 0.0;
  Deployment deployment;  // nodes here keep their initial state
  std::vector<NodeState> nodes;
  HarvesterState harvester;
  std::optional<EnergyLedger> previous_ledger;
  std::vector<RoundMetrics> history;
  RandomStream election_rng{0, "elect"};
  std::optional<std::uint32_t> first_dead_round;
  std::optional<RoundTrace> last_round;
};

SimState initial_state(const ValidatedConfig& config);

/// Advances one round through the fixed phase order: election, membership,
/// data round, BS report, budget, allocation and tour, visits, metrics.
SimState step_round(SimState state, const ValidatedConfig& config);

using RoundObserver = std::function<void(const SimState&, const RoundTrace&)>;

std::vector<RoundMetrics> run(const ValidatedConfig& config, const RoundObserver& observer = {});

double total_energy(std::span<const NodeState> nodes) noexcept;
std::uint32_t alive_count(std::span<const NodeState> nodes) noexcept;

}  // namespace wsnsim
