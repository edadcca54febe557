#include "wsnsim/tour.hpp"

#include <algorithm>
#include <limits>
#include <string>

namespace wsnsim {

double closed_tour_length(Point depot, std::span<const Waypoint> order) noexcept {
  if (order.empty()) return 0.0;
  double total = 0.0;
  Point at = depot;
  for (const auto& w : order) {
    total += distance(at, w.position);
    at = w.position;
  }
  return total + distance(at, depot);
}

Tour make_tour(Point depot, std::vector<Waypoint> order) {
  Tour t{depot, std::move(order), 0.0};
  t.total_length = closed_tour_length(depot, t.waypoints);
  return t;
}

Tour nearest_neighbor_tour(std::span<const Waypoint> heads, Point depot) {
  std::vector<Waypoint> remaining(heads.begin(), heads.end());
  std::vector<Waypoint> order;
  order.reserve(remaining.size());
  Point at = depot;
  while (!remaining.empty()) {
    auto best = remaining.begin();
    double best_d = distance(at, best->position);
    for (auto it = remaining.begin() + 1; it != remaining.end(); ++it) {
      const double d = distance(at, it->position);
      if (d < best_d || (d == best_d && it->head < best->head)) {
        best = it;
        best_d = d;
      }
    }
    at = best->position;
    order.push_back(*best);
    remaining.erase(best);
  }
  return make_tour(depot, std::move(order));
}

Tour two_opt(Tour tour) {
  auto& w = tour.waypoints;
  const std::size_t n = w.size();
  if (n < 2) return make_tour(tour.start, std::move(w));

  // Position k in the closed sequence: 0 and n+1 are the depot.
  auto at = [&](std::size_t k) { return (k == 0 || k == n + 1) ? tour.start : w[k - 1].position; };
  constexpr double kMinGain = 1e-12;

  bool improved = true;
  while (improved) {
    improved = false;
    for (std::size_t i = 1; i < n && !improved; ++i) {
      for (std::size_t j = i + 1; j <= n; ++j) {
        const double before = distance(at(i - 1), at(i)) + distance(at(j), at(j + 1));
        const double after = distance(at(i - 1), at(j)) + distance(at(i), at(j + 1));
        if (after < before - kMinGain) {
          std::reverse(w.begin() + static_cast<std::ptrdiff_t>(i - 1),
                       w.begin() + static_cast<std::ptrdiff_t>(j));
          improved = true;
          break;
        }
      }
    }
  }
  return make_tour(tour.start, std::move(w));
}

Tour plan_tour(std::span<const Waypoint> heads, Point depot) {
  return two_opt(nearest_neighbor_tour(heads, depot));
}

Tour exact_tour(std::span<const Waypoint> heads, Point depot) {
  const std::size_t n = heads.size();
  if (n > kMaxExactWaypoints) {
    throw TooManyWaypoints("exact tour supports at most " + std::to_string(kMaxExactWaypoints) +
                           " waypoints, got " + std::to_string(n));
  }
  if (n == 0) return make_tour(depot, {});

  // Canonical input order so the result does not depend on caller ordering.
  std::vector<Waypoint> pts(heads.begin(), heads.end());
  std::sort(pts.begin(), pts.end(), [](const Waypoint& a, const Waypoint& b) { return a.head < b.head; });

  const std::size_t full = (std::size_t{1} << n);
  constexpr double kInf = std::numeric_limits<double>::infinity();
  // cost[mask][last]: shortest depot -> ... -> last path visiting exactly mask.
  std::vector<double> cost(full * n, kInf);
  std::vector<int> parent(full * n, -1);
  auto idx = [n](std::size_t mask, std::size_t last) { return mask * n + last; };

  for (std::size_t k = 0; k < n; ++k) cost[idx(std::size_t{1} << k, k)] = distance(depot, pts[k].position);
  for (std::size_t mask = 1; mask < full; ++mask) {
    for (std::size_t last = 0; last < n; ++last) {
      const double c = cost[idx(mask, last)];
      if (!(mask & (std::size_t{1} << last)) || c == kInf) continue;
      for (std::size_t next = 0; next < n; ++next) {
        if (mask & (std::size_t{1} << next)) continue;
        const std::size_t m2 = mask | (std::size_t{1} << next);
        const double c2 = c + distance(pts[last].position, pts[next].position);
        if (c2 < cost[idx(m2, next)]) {
          cost[idx(m2, next)] = c2;
          parent[idx(m2, next)] = static_cast<int>(last);
        }
      }
    }
  }

  std::size_t best_last = 0;
  double best = kInf;
  for (std::size_t last = 0; last < n; ++last) {
    const double c = cost[idx(full - 1, last)] + distance(pts[last].position, depot);
    if (c < best) {
      best = c;
      best_last = last;
    }
  }

  std::vector<Waypoint> order;
  std::size_t mask = full - 1;
  int cur = static_cast<int>(best_last);
  while (cur >= 0) {
    order.push_back(pts[static_cast<std::size_t>(cur)]);
    const int prev = parent[idx(mask, static_cast<std::size_t>(cur))];
    mask &= ~(std::size_t{1} << cur);
    cur = prev;
  }
  std::reverse(order.begin(), order.end());

  // The optimum and its mirror image are equally short; keep whichever sums
  // smaller leg by leg so comparisons against other tours are exact.
  Tour forward = make_tour(depot, order);
  std::reverse(order.begin(), order.end());
  Tour backward = make_tour(depot, std::move(order));
  return backward.total_length < forward.total_length ? backward : forward;
}

}  // namespace wsnsim
