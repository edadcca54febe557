#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <span>
#include <stdexcept>
#include <vector>

#include "wsnsim/config.hpp"
#include "wsnsim/random.hpp"

namespace wsnsim {

/// One round's clusters. `members` maps member -> head, `tdma` maps head ->
/// members in slot order (ascending id).
struct ClusterAssignment {
  std::uint32_t round_index = 0;
  std::vector<NodeId> heads;
  std::map<NodeId, NodeId> members;
  std::map<NodeId, std::vector<NodeId>> tdma;

  friend bool operator==(const ClusterAssignment&, const ClusterAssignment&) = default;
};

class NoAliveNodes : public std::runtime_error {
 public:
  NoAliveNodes() : std::runtime_error("no alive nodes left to elect") {}
};

/// Source of uniform [0, 1) draws for the election.
using UniformDraw = std::function<double()>;

/// Rounds per LEACH epoch, ceil(1/p).
std::uint32_t epoch_length(double p) noexcept;

/// A node may self-elect if it has not headed a cluster since the start of
/// the current epoch.
bool eligible_for_head(const NodeState& node, std::uint32_t round, std::uint32_t epoch) noexcept;

/// LEACH threshold p / (1 - p * (round mod epoch)), saturated at 1.
double election_threshold(double p, std::uint32_t round) noexcept;

/// Threshold election. One draw per eligible alive node in ascending id order;
/// a draw u < T elects. If nobody is elected, the max-energy eligible node
/// (falling back to any alive node) is forced. Returns ids ascending.
std::vector<NodeId> elect_heads(std::span<const NodeState> nodes, std::uint32_t round, double p,
                                const UniformDraw& draw);
std::vector<NodeId> elect_heads(std::span<const NodeState> nodes, std::uint32_t round, double p,
                                RandomStream& rng);

/// Fixed-count reading of the head ratio: picks max(1, ceil(p * node_count))
/// heads (capped by the alive count), eligible nodes first.
std::vector<NodeId> elect_fixed_heads(std::span<const NodeState> nodes, std::uint32_t round, double p,
                                      RandomStream& rng);

/// Nearest-head join (ties to the lower head id). Dead nodes stay unassigned.
ClusterAssignment assign_members(std::span<const NodeState> nodes, std::span<const NodeId> heads,
                                 std::uint32_t round_index = 0);

/// Nearest head to `p` among `heads`, ties to the lower id. heads must be non-empty.
NodeId nearest_head(Point p, std::span<const NodeState> nodes, std::span<const NodeId> heads);

}  // namespace wsnsim
