#pragma once

#include <span>
#include <stdexcept>
#include <vector>

#include "wsnsim/config.hpp"

namespace wsnsim {

struct Waypoint {
  NodeId head;
  Point position;

  friend bool operator==(const Waypoint&, const Waypoint&) = default;
};

/// Closed tour depot -> waypoints... -> depot.
struct Tour {
  Point start;
  std::vector<Waypoint> waypoints;
  double total_length = 0.0;

  friend bool operator==(const Tour&, const Tour&) = default;
};

class TooManyWaypoints : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

inline constexpr std::size_t kMaxExactWaypoints = 10;

/// Length of the closed tour visiting `order` from `depot`, summed leg by leg
/// starting at the depot.
double closed_tour_length(Point depot, std::span<const Waypoint> order) noexcept;

Tour make_tour(Point depot, std::vector<Waypoint> order);

/// Greedy construction: always the nearest unvisited waypoint, ties to the lower head id.
Tour nearest_neighbor_tour(std::span<const Waypoint> heads, Point depot);

/// First-improvement 2-opt with the depot pinned, until no improving reversal exists.
Tour two_opt(Tour tour);

/// nearest_neighbor_tour followed by two_opt.
Tour plan_tour(std::span<const Waypoint> heads, Point depot);

/// Optimal closed tour by Held-Karp dynamic programming. Throws
/// TooManyWaypoints above kMaxExactWaypoints.
Tour exact_tour(std::span<const Waypoint> heads, Point depot);

}  // namespace wsnsim
