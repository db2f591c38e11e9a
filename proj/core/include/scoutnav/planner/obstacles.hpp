#pragma once

#include <cstddef>
#include <limits>
#include <string>
#include <string_view>
#include <vector>

#include "scoutnav/geometry.hpp"
#include "scoutnav/grid.hpp"

namespace scoutnav::planner {

/// Closed ring, counter-clockwise, last vertex not repeated.
using Polygon = std::vector<Vec2>;

struct ObstacleSet {
  std::vector<Polygon> polygons;
  double threshold = 1.0;

  bool empty() const { return polygons.empty(); }
  friend bool operator==(const ObstacleSet&, const ObstacleSet&) = default;
};

/// Polygons around the cells whose value is >= threshold.
///
/// Boundaries follow cell edges (4-connected regions, split at diagonal
/// contacts), enclosed safe pockets are filled, a ring that touches itself at
/// a corner is cut there with the notch behind the diagonal gap filled, and
/// each ring is simplified with Douglas-Peucker at 0.5 * cell_size.  A
/// simplification that would change which cell centres the ring contains,
/// or make it self-intersect, is retried at a smaller tolerance.
ObstacleSet threshold_obstacles(const ScalarRaster& risk, double threshold);

double signed_area(const Polygon& poly);
bool is_simple(const Polygon& poly);

/// Even-odd ray test; points on the boundary may go either way.
bool point_in_polygon(Vec2 p, const Polygon& poly);
bool inside_any(Vec2 p, const ObstacleSet& set);

struct ObstacleDistance {
  double distance = std::numeric_limits<double>::infinity();
  Vec2 normal;          ///< unit, pushes away from the obstacle
  bool inside = false;
  std::size_t polygon = 0;
};

/// Distance from p to the ring's boundary.  Outside, `normal` points from the
/// closest boundary point to p; inside, it points from p towards the closest
/// boundary point (the way out) and `distance` is clamped up to `d_floor`.
ObstacleDistance distance_to_polygon(Vec2 p, const Polygon& poly, double d_floor = 0.0);

/// Nearest polygon, lowest index on ties.  An empty set returns an infinite
/// distance and a zero normal.
ObstacleDistance distance_to_obstacle(Vec2 p, const ObstacleSet& set, double d_floor = 0.0);

// Text layout:
//   # scoutnav obstacles v1
//   threshold <value>
//   polygon <vertex count>
//   <x>,<y>       (one line per vertex)
std::string obstacles_to_text(const ObstacleSet& set);
ObstacleSet obstacles_from_text(std::string_view text);

}  // namespace scoutnav::planner
