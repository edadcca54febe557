#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "wsnsim/clustering.hpp"
#include "wsnsim/config.hpp"

namespace wsnsim {

/// Fraction of the round given to the TDMA data sub-phase.
inline constexpr double kDataPhaseFraction = 0.5;

/// First-order radio transmit cost: electronics plus d^2 amplifier below the
/// crossover distance, d^4 at or above it.
double tx_energy(std::uint64_t bits, double d, const RadioParams& radio) noexcept;
double rx_energy(std::uint64_t bits, const RadioParams& radio) noexcept;
double aggregate_energy(std::uint64_t bits, std::uint64_t n_signals, const RadioParams& radio) noexcept;

/// Listening/sleeping over one round plus the per-round sensing sample.
/// Heads listen the whole round; members listen for `active_fraction` of it.
double idle_sleep_energy(Role role, double round_duration, double active_fraction,
                         const RadioParams& radio) noexcept;

/// Listening share of a member in a cluster with `slots` TDMA slots.
double member_active_fraction(std::size_t slots) noexcept;

enum class Phase : std::uint8_t { MemberTx = 1, HeadWork = 2, IdleSleep = 3 };
enum class Action : std::uint8_t { MemberTx, HeadRx, Aggregate, HeadTxToBs, IdleSleep };

/// One debit attempt in a data round.
struct PhaseEvent {
  Phase phase;
  Action action;
  NodeId node;
  double requested;  // J
  double drained;    // J, <= requested
  bool completed;    // the node paid the full cost and the action took effect

  friend bool operator==(const PhaseEvent&, const PhaseEvent&) = default;
};

/// Energy actually drained in one round.
struct EnergyLedger {
  std::vector<double> per_node;           // indexed by node id
  double total = 0.0;
  std::map<NodeId, double> per_cluster;   // head id -> head + members
  std::uint64_t bits_delivered = 0;       // bits that reached the BS
  std::vector<NodeId> heads_completed;    // heads whose BS transmission succeeded
  std::vector<PhaseEvent> log;

  friend bool operator==(const EnergyLedger&, const EnergyLedger&) = default;
};

/// Runs the data round: (1) members transmit to their head in TDMA order,
/// (2) heads receive, aggregate and forward one packet to the BS,
/// (3) every node still alive pays idle/sleep and its sample.
/// A debit the node cannot fully pay drains it to zero, kills it and the
/// action fails; a dead node does nothing further this round.
EnergyLedger charge_round(std::span<NodeState> nodes, const ClusterAssignment& assignment,
                          const SimConfig& config, Point bs_position);

}  // namespace wsnsim
