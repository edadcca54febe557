#include "wsnsim/radio.hpp"

#include <algorithm>

namespace wsnsim {

double tx_energy(std::uint64_t bits, double d, const RadioParams& radio) noexcept {
  const double b = static_cast<double>(bits);
  const double electronics = radio.e_elec * b;
  if (d < radio.crossover_distance()) return electronics + radio.eps_fs * b * d * d;
  const double d2 = d * d;
  return electronics + radio.eps_mp * b * d2 * d2;
}

double rx_energy(std::uint64_t bits, const RadioParams& radio) noexcept {
  return radio.e_elec * static_cast<double>(bits);
}

double aggregate_energy(std::uint64_t bits, std::uint64_t n_signals, const RadioParams& radio) noexcept {
  return radio.e_aggregate * static_cast<double>(bits) * static_cast<double>(n_signals);
}

double idle_sleep_energy(Role role, double round_duration, double active_fraction,
                         const RadioParams& radio) noexcept {
  if (role == Role::ClusterHead) return radio.p_listen * round_duration + radio.e_sample;
  const double a = std::clamp(active_fraction, 0.0, 1.0);
  return radio.p_listen * round_duration * a + radio.p_sleep * round_duration * (1.0 - a) +
         radio.e_sample;
}

double member_active_fraction(std::size_t slots) noexcept {
  if (slots == 0) return 0.0;
  return kDataPhaseFraction / static_cast<double>(slots);
}

namespace {

class Debiter {
 public:
  Debiter(std::span<NodeState> nodes, EnergyLedger& ledger) : nodes_(nodes), ledger_(ledger) {}

  bool debit(Phase phase, Action action, NodeId id, double joules) {
    NodeState& node = nodes_[id];
    const double drained = node.drain(joules);
    ledger_.per_node[id] += drained;
    const bool completed = drained == joules;
    ledger_.log.push_back({phase, action, id, joules, drained, completed});
    return completed;
  }

 private:
  std::span<NodeState> nodes_;
  EnergyLedger& ledger_;
};

}  // namespace

EnergyLedger charge_round(std::span<NodeState> nodes, const ClusterAssignment& assignment,
                          const SimConfig& config, Point bs_position) {
  const RadioParams& radio = config.radio;
  const std::uint64_t bits = config.packet_bits;

  EnergyLedger ledger;
  ledger.per_node.assign(nodes.size(), 0.0);
  Debiter debiter(nodes, ledger);

  // (1) members -> head, cluster by cluster in slot order.
  std::map<NodeId, std::vector<NodeId>> delivered_to_head;
  for (const auto& [head, slots] : assignment.tdma) {
    auto& inbox = delivered_to_head[head];
    for (NodeId m : slots) {
      if (!nodes[m].alive()) continue;
      const double d = distance(nodes[m].position(), nodes[head].position());
      if (debiter.debit(Phase::MemberTx, Action::MemberTx, m, tx_energy(bits, d, radio))) {
        inbox.push_back(m);
      }
    }
  }

  // (2) heads: receive, aggregate, forward.
  for (NodeId head : assignment.heads) {
    if (!nodes[head].alive()) continue;
    std::uint64_t received = 0;
    bool ok = true;
    for ([[maybe_unused]] NodeId m : delivered_to_head[head]) {
      if (!debiter.debit(Phase::HeadWork, Action::HeadRx, head, rx_energy(bits, radio))) {
        ok = false;
        break;
      }
      ++received;
      if (!nodes[head].alive()) {
        ok = false;
        break;
      }
    }
    if (!ok) continue;
    if (!debiter.debit(Phase::HeadWork, Action::Aggregate, head,
                       aggregate_energy(bits, received + 1, radio)) ||
        !nodes[head].alive()) {
      continue;
    }
    const double d_bs = distance(nodes[head].position(), bs_position);
    if (debiter.debit(Phase::HeadWork, Action::HeadTxToBs, head, tx_energy(bits, d_bs, radio))) {
      ledger.bits_delivered += bits;
      ledger.heads_completed.push_back(head);
    }
  }

  // (3) idle listening / sleeping and sensing for everyone still alive.
  for (const auto& [head, slots] : assignment.tdma) {
    if (nodes[head].alive()) {
      debiter.debit(Phase::IdleSleep, Action::IdleSleep, head,
                    idle_sleep_energy(Role::ClusterHead, config.round_duration, 1.0, radio));
    }
    const double active = member_active_fraction(slots.size());
    for (NodeId m : slots) {
      if (!nodes[m].alive()) continue;
      debiter.debit(Phase::IdleSleep, Action::IdleSleep, m,
                    idle_sleep_energy(Role::Member, config.round_duration, active, radio));
    }
  }

  for (const auto& [head, slots] : assignment.tdma) {
    double sum = ledger.per_node[head];
    for (NodeId m : slots) sum += ledger.per_node[m];
    ledger.per_cluster[head] = sum;
  }
  for (double e : ledger.per_node) ledger.total += e;
  return ledger;
}

}  // namespace wsnsim
