#pragma once

#include <cmath>
#include <compare>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace wsnsim {

using NodeId = std::uint32_t;

struct Point {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Point&, const Point&) = default;
};

/// Euclidean distance in meters.
inline double distance(Point a, Point b) noexcept {
  return std::hypot(a.x - b.x, a.y - b.y);
}

/// First-order radio model constants plus the idle/sleep/sample terms.
struct RadioParams {
  double e_elec = 50e-9;        // J/bit, tx and rx electronics
  double eps_fs = 10e-12;       // J/bit/m^2
  double eps_mp = 0.0013e-12;   // J/bit/m^4
  double e_aggregate = 5e-9;    // J/bit/signal
  double p_listen = 0.03;       // W
  double p_sleep = 1e-7;        // W
  double e_sample = 1e-7;       // J per sample
  double death_threshold = 0.0; // J

  /// Free-space / multipath crossover distance. Infinite when eps_mp == 0.
  double crossover_distance() const noexcept;
};

struct HarvestParams {
  double transfer_efficiency = 1.0;
  double d_min = 1.0;              // m, floor for the inverse-square denominator
  double dwell_time = 1.0;         // s per stop
  double harvester_speed = 5.0;    // m/s
  double harvester_capacity = 100.0;
  bool allow_revival = true;
  bool carry_over = false;         // bank forfeited allocations into the next round
};

enum class TourSolver { Heuristic, Exact };

struct SimConfig {
  double area_width = 100.0;
  double area_height = 100.0;
  std::uint32_t node_count = 50;
  double ch_probability = 0.05;
  double initial_energy = 2.0;
  double battery_capacity = 2.0;
  double round_duration = 20.0;
  std::uint32_t total_rounds = 50;
  std::uint32_t packet_bits = 2000;
  RadioParams radio;
  HarvestParams harvest;
  std::optional<Point> bs_position;    // defaults to the area center
  std::optional<Point> depot_position; // defaults to (-10, area_height / 2)
  std::uint64_t rng_seed = 42;
  bool harvester_enabled = true;
  bool fixed_ch_count = false;         // elect ceil(p * n) heads instead of the threshold draw
  TourSolver tour_solver = TourSolver::Heuristic;
};

class InvalidConfig : public std::runtime_error {
 public:
  explicit InvalidConfig(std::vector<std::string> violations);

  const std::vector<std::string>& violations() const noexcept { return violations_; }

 private:
  std::vector<std::string> violations_;
};

/// A SimConfig that passed validation, with default positions resolved.
class ValidatedConfig {
 public:
  const SimConfig& get() const noexcept { return config_; }
  const SimConfig* operator->() const noexcept { return &config_; }
  Point bs_position() const noexcept { return *config_.bs_position; }
  Point depot_position() const noexcept { return *config_.depot_position; }

 private:
  friend ValidatedConfig validate_config(SimConfig config);
  explicit ValidatedConfig(SimConfig config) : config_(std::move(config)) {}

  SimConfig config_;
};

/// Throws InvalidConfig listing every violated bound.
ValidatedConfig validate_config(SimConfig config);

enum class Role { Unassigned, ClusterHead, Member };

/// One sensor node. Energy mutations go through drain/credit so the alive
/// flag always equals (energy > death_threshold).
class NodeState {
 public:
  static constexpr std::uint32_t kNeverHead = 1u << 30;

  NodeState() = default;
  NodeState(NodeId id, Point position, double energy, double death_threshold);

  NodeId id() const noexcept { return id_; }
  Point position() const noexcept { return position_; }
  double energy() const noexcept { return energy_; }
  bool alive() const noexcept { return alive_; }
  double death_threshold() const noexcept { return death_threshold_; }

  /// Removes up to `joules`; returns the amount actually drained.
  double drain(double joules) noexcept;
  /// Adds `joules` up to `capacity`; returns the amount actually credited.
  double credit(double joules, double capacity) noexcept;

  Role role = Role::Unassigned;
  std::uint32_t rounds_since_ch = kNeverHead;

  friend bool operator==(const NodeState&, const NodeState&) = default;

 private:
  void refresh() noexcept { alive_ = energy_ > death_threshold_; }

  NodeId id_ = 0;
  Point position_;
  double energy_ = 0.0;
  double death_threshold_ = 0.0;
  bool alive_ = false;
};

struct RoundMetrics {
  std::uint32_t round_index = 0;
  double sim_time = 0.0;
  std::uint32_t alive_count = 0;
  double consumed_cumulative = 0.0;
  double emitted_cumulative = 0.0;
  double delivered_cumulative = 0.0;
  std::uint64_t data_received_cumulative = 0;
  std::uint32_t ch_count = 0;
  double tour_length = 0.0;
  std::uint32_t clusters_visited = 0;

  friend bool operator==(const RoundMetrics&, const RoundMetrics&) = default;
};

}  // namespace wsnsim
