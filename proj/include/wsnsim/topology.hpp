#pragma once

#include <filesystem>
#include <vector>

#include "wsnsim/config.hpp"

namespace wsnsim {

struct Deployment {
  std::vector<NodeState> nodes;
  Point bs_position;
  Point depot_position;

  friend bool operator==(const Deployment&, const Deployment&) = default;
};

/// Uniform i.i.d. placement over the area from the "deploy" stream of rng_seed.
Deployment deploy(const ValidatedConfig& config);

/// Writes `id,x,y` rows with a header.
void write_topology_csv(const Deployment& deployment, const std::filesystem::path& path);

}  // namespace wsnsim
