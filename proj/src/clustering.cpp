#include "wsnsim/clustering.hpp"

#include <algorithm>
#include <cmath>

namespace wsnsim {

std::uint32_t epoch_length(double p) noexcept {
  // 1/0.05 is not exactly 20 in binary; trim the representation error before ceil.
  const double inv = 1.0 / p;
  return static_cast<std::uint32_t>(std::max(1.0, std::ceil(inv - 1e-9)));
}

bool eligible_for_head(const NodeState& node, std::uint32_t round, std::uint32_t epoch) noexcept {
  return node.rounds_since_ch > round % epoch;
}

double election_threshold(double p, std::uint32_t round) noexcept {
  const std::uint32_t epoch = epoch_length(p);
  const double denom = 1.0 - p * static_cast<double>(round % epoch);
  if (denom <= 0.0) return 1.0;
  return std::min(1.0, p / denom);
}

namespace {

// Highest energy first, lowest id on ties.
bool better_forced(const NodeState& a, const NodeState& b) {
  if (a.energy() != b.energy()) return a.energy() > b.energy();
  return a.id() < b.id();
}

NodeId forced_head(std::span<const NodeState> nodes, std::uint32_t round, std::uint32_t epoch) {
  const NodeState* best = nullptr;
  const NodeState* best_eligible = nullptr;
  for (const auto& n : nodes) {
    if (!n.alive()) continue;
    if (!best || better_forced(n, *best)) best = &n;
    if (eligible_for_head(n, round, epoch) && (!best_eligible || better_forced(n, *best_eligible))) {
      best_eligible = &n;
    }
  }
  if (!best) throw NoAliveNodes();
  return best_eligible ? best_eligible->id() : best->id();
}

}  // namespace

std::vector<NodeId> elect_heads(std::span<const NodeState> nodes, std::uint32_t round, double p,
                                const UniformDraw& draw) {
  const std::uint32_t epoch = epoch_length(p);
  const double threshold = election_threshold(p, round);

  std::vector<NodeId> heads;
  bool any_alive = false;
  for (const auto& n : nodes) {
    if (!n.alive()) continue;
    any_alive = true;
    if (!eligible_for_head(n, round, epoch)) continue;
    if (draw() < threshold) heads.push_back(n.id());
  }
  if (!any_alive) throw NoAliveNodes();
  if (heads.empty()) heads.push_back(forced_head(nodes, round, epoch));
  std::sort(heads.begin(), heads.end());
  return heads;
}

std::vector<NodeId> elect_heads(std::span<const NodeState> nodes, std::uint32_t round, double p,
                                RandomStream& rng) {
  return elect_heads(nodes, round, p, [&rng] { return rng.uniform(); });
}

std::vector<NodeId> elect_fixed_heads(std::span<const NodeState> nodes, std::uint32_t round, double p,
                                      RandomStream& rng) {
  const std::uint32_t epoch = epoch_length(p);
  std::vector<NodeId> eligible;
  std::vector<const NodeState*> others;
  for (const auto& n : nodes) {
    if (!n.alive()) continue;
    if (eligible_for_head(n, round, epoch)) {
      eligible.push_back(n.id());
    } else {
      others.push_back(&n);
    }
  }
  const std::size_t alive = eligible.size() + others.size();
  if (alive == 0) throw NoAliveNodes();

  const auto wanted = static_cast<std::size_t>(
      std::max(1.0, std::ceil(p * static_cast<double>(nodes.size()) - 1e-9)));
  const std::size_t k = std::min(wanted, alive);

  std::vector<NodeId> heads;
  // Partial Fisher-Yates over the eligible pool.
  for (std::size_t i = 0; i < eligible.size() && heads.size() < k; ++i) {
    const std::size_t j = i + static_cast<std::size_t>(rng.below(eligible.size() - i));
    std::swap(eligible[i], eligible[j]);
    heads.push_back(eligible[i]);
  }
  if (heads.size() < k) {
    std::sort(others.begin(), others.end(),
              [](const NodeState* a, const NodeState* b) { return better_forced(*a, *b); });
    for (std::size_t i = 0; heads.size() < k; ++i) heads.push_back(others[i]->id());
  }
  std::sort(heads.begin(), heads.end());
  return heads;
}

NodeId nearest_head(Point p, std::span<const NodeState> nodes, std::span<const NodeId> heads) {
  NodeId best = heads.front();
  double best_d = distance(p, nodes[best].position());
  for (NodeId h : heads) {
    const double d = distance(p, nodes[h].position());
    if (d < best_d || (d == best_d && h < best)) {
      best = h;
      best_d = d;
    }
  }
  return best;
}

ClusterAssignment assign_members(std::span<const NodeState> nodes, std::span<const NodeId> heads,
                                 std::uint32_t round_index) {
  ClusterAssignment out;
  out.round_index = round_index;
  out.heads.assign(heads.begin(), heads.end());
  std::sort(out.heads.begin(), out.heads.end());
  for (NodeId h : out.heads) out.tdma[h];

  for (const auto& n : nodes) {
    if (!n.alive() || out.tdma.contains(n.id())) continue;
    const NodeId head = nearest_head(n.position(), nodes, out.heads);
    out.members.emplace(n.id(), head);
    out.tdma[head].push_back(n.id());  // nodes are visited in ascending id order
  }
  return out;
}

}  // namespace wsnsim
