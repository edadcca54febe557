#include "wsnsim/config.hpp"

#include <algorithm>
#include <limits>
#include <sstream>

namespace wsnsim {

double RadioParams::crossover_distance() const noexcept {
  if (eps_mp <= 0.0) return std::numeric_limits<double>::infinity();
  return std::sqrt(eps_fs / eps_mp);
}

namespace {

std::string join_violations(const std::vector<std::string>& violations) {
  std::ostringstream out;
  out << "invalid configuration:";
  for (const auto& v : violations) out << "\n  - " << v;
  return out.str();
}

class Checker {
 public:
  void require(bool ok, const std::string& message) {
    if (!ok) violations.push_back(message);
  }
  void finite(double value, const char* field) {
    require(std::isfinite(value), std::string(field) + " must be finite");
  }

  std::vector<std::string> violations;
};

bool inside_area(Point p, double w, double h) {
  return p.x >= 0.0 && p.x <= w && p.y >= 0.0 && p.y <= h;
}

}  // namespace

InvalidConfig::InvalidConfig(std::vector<std::string> violations)
    : std::runtime_error(join_violations(violations)), violations_(std::move(violations)) {}

ValidatedConfig validate_config(SimConfig config) {
  Checker c;
  c.require(config.area_width > 0.0, "area_width must be > 0");
  c.require(config.area_height > 0.0, "area_height must be > 0");
  c.require(config.node_count >= 1, "node_count must be >= 1");
  c.require(config.ch_probability > 0.0 && config.ch_probability <= 1.0,
            "ch_probability must be in (0, 1]");
  c.require(config.initial_energy > 0.0, "initial_energy must be > 0");
  c.require(config.initial_energy <= config.battery_capacity,
            "initial_energy must be <= battery_capacity");
  c.require(config.round_duration > 0.0, "round_duration must be > 0");
  c.require(config.packet_bits > 0, "packet_bits must be > 0");

  const auto& r = config.radio;
  c.require(r.e_elec >= 0.0, "radio.e_elec must be >= 0");
  c.require(r.eps_fs >= 0.0, "radio.eps_fs must be >= 0");
  c.require(r.eps_mp >= 0.0, "radio.eps_mp must be >= 0");
  c.require(r.e_aggregate >= 0.0, "radio.e_aggregate must be >= 0");
  c.require(r.p_listen >= 0.0, "radio.p_listen must be >= 0");
  c.require(r.p_sleep >= 0.0, "radio.p_sleep must be >= 0");
  c.require(r.p_sleep <= r.p_listen, "radio.p_sleep must be <= radio.p_listen");
  c.require(r.e_sample >= 0.0, "radio.e_sample must be >= 0");
  c.require(r.death_threshold >= 0.0, "radio.death_threshold must be >= 0");
  if (r.eps_mp > 0.0) {
    const double d0 = r.crossover_distance();
    c.require(std::isfinite(d0) && d0 > 0.0,
              "radio crossover distance sqrt(eps_fs / eps_mp) must be finite and > 0");
  }

  const auto& h = config.harvest;
  c.require(h.transfer_efficiency > 0.0 && h.transfer_efficiency <= 1.0,
            "harvest.transfer_efficiency must be in (0, 1]");
  c.require(h.d_min > 0.0, "harvest.d_min must be > 0");
  c.require(h.dwell_time >= 0.0, "harvest.dwell_time must be >= 0");
  c.require(h.harvester_speed > 0.0, "harvest.harvester_speed must be > 0");
  c.require(h.harvester_capacity > 0.0, "harvest.harvester_capacity must be > 0");

  for (double v : {config.area_width, config.area_height, config.ch_probability,
                   config.initial_energy, config.battery_capacity, config.round_duration,
                   r.e_elec, r.eps_fs, r.eps_mp, r.e_aggregate, r.p_listen, r.p_sleep,
                   r.e_sample, r.death_threshold, h.transfer_efficiency, h.d_min,
                   h.dwell_time, h.harvester_speed, h.harvester_capacity}) {
    if (!std::isfinite(v)) {
      c.require(false, "all numeric parameters must be finite");
      break;
    }
  }

  if (!config.bs_position) {
    config.bs_position = Point{config.area_width / 2.0, config.area_height / 2.0};
  }
  if (!config.depot_position) {
    config.depot_position = Point{-10.0, config.area_height / 2.0};
  }
  c.finite(config.bs_position->x, "bs_position.x");
  c.finite(config.bs_position->y, "bs_position.y");
  c.finite(config.depot_position->x, "depot_position.x");
  c.finite(config.depot_position->y, "depot_position.y");
  c.require(!inside_area(*config.depot_position, config.area_width, config.area_height),
            "depot_position must lie outside the deployment area");

  if (!c.violations.empty()) throw InvalidConfig(std::move(c.violations));
  return ValidatedConfig(std::move(config));
}

NodeState::NodeState(NodeId id, Point position, double energy, double death_threshold)
    : id_(id), position_(position), energy_(energy), death_threshold_(death_threshold) {
  refresh();
}

double NodeState::drain(double joules) noexcept {
  const double taken = std::clamp(joules, 0.0, energy_);
  energy_ -= taken;
  refresh();
  return taken;
}

double NodeState::credit(double joules, double capacity) noexcept {
  if (!(joules > 0.0) || energy_ >= capacity) return 0.0;
  const double before = energy_;
  energy_ = joules >= capacity - energy_ ? capacity : energy_ + joules;
  if (energy_ > capacity) energy_ = capacity;
  refresh();
  return energy_ - before;
}

}  // namespace wsnsim
