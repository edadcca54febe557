#include "wsnsim/topology.hpp"

#include <fstream>

#include "wsnsim/error.hpp"
#include "wsnsim/random.hpp"

namespace wsnsim {

Deployment deploy(const ValidatedConfig& config) {
  const SimConfig& c = config.get();
  RandomStream rng = split_stream(c.rng_seed, "deploy");

  Deployment out;
  out.bs_position = config.bs_position();
  out.depot_position = config.depot_position();
  out.nodes.reserve(c.node_count);
  for (NodeId id = 0; id < c.node_count; ++id) {
    const double x = rng.uniform() * c.area_width;
    const double y = rng.uniform() * c.area_height;
    out.nodes.emplace_back(id, Point{x, y}, c.initial_energy, c.radio.death_threshold);
  }
  return out;
}

void write_topology_csv(const Deployment& deployment, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out << "id,x,y\n";
  for (const auto& n : deployment.nodes) {
    out << n.id() << ',' << format_number(n.position().x) << ',' << format_number(n.position().y)
        << '\n';
  }
  if (!out) throw IoError("failed writing " + path.string());
}

}  // namespace wsnsim
