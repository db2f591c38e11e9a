#include "scoutnav/planner/obstacles.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "scoutnav/errors.hpp"
#include "scoutnav/io.hpp"

namespace scoutnav::planner {
namespace {

// Corner lattice directions: E, N, W, S.
constexpr int kDx[4] = {1, 0, -1, 0};
constexpr int kDy[4] = {0, 1, 0, -1};

struct CornerLoop {
  std::vector<std::array<long, 2>> corners;
};

std::vector<CornerLoop> trace_boundaries(const std::vector<std::uint8_t>& hazard, long w, long h) {
  auto is_hazard = [&](long c, long r) {
    return c >= 0 && r >= 0 && c < w && r < h && hazard[static_cast<std::size_t>(r * w + c)] != 0;
  };
  const long cw = w + 1;
  // edge state per corner and direction: 0 none, 1 unused, 2 used
  std::vector<std::array<std::uint8_t, 4>> edges(static_cast<std::size_t>(cw * (h + 1)), {0, 0, 0, 0});
  auto corner = [&](long i, long j) -> auto& { return edges[static_cast<std::size_t>(j * cw + i)]; };

  for (long r = 0; r < h; ++r) {
    for (long c = 0; c < w; ++c) {
      if (!is_hazard(c, r)) continue;
      if (!is_hazard(c, r - 1)) corner(c, r)[0] = 1;
      if (!is_hazard(c + 1, r)) corner(c + 1, r)[1] = 1;
      if (!is_hazard(c, r + 1)) corner(c + 1, r + 1)[2] = 1;
      if (!is_hazard(c - 1, r)) corner(c, r + 1)[3] = 1;
    }
  }

  std::vector<CornerLoop> loops;
  for (long j = 0; j <= h; ++j) {
    for (long i = 0; i <= w; ++i) {
      for (int d0 = 0; d0 < 4; ++d0) {
        if (corner(i, j)[d0] != 1) continue;
        CornerLoop loop;
        long ci = i, cj = j;
        int d = d0;
        corner(ci, cj)[d] = 2;
        while (true) {
          loop.corners.push_back({ci, cj});
          ci += kDx[d];
          cj += kDy[d];
          int next = -1;
          for (int turn : {1, 0, 3}) {
            const int nd = (d + turn) % 4;
            const bool closes = ci == i && cj == j && nd == d0;
            if (closes || corner(ci, cj)[nd] == 1) {
              next = nd;
              break;
            }
          }
          if (next < 0) throw NumericalError("open obstacle boundary");
          if (ci == i && cj == j && next == d0) break;
          d = next;
          corner(ci, cj)[d] = 2;
        }
        loops.push_back(std::move(loop));
      }
    }
  }
  return loops;
}

// Cuts a loop that touches itself at a corner into loops that visit each
// corner once.  Clockwise pieces are notches behind a diagonal gap.
std::vector<CornerLoop> split_at_pinches(const CornerLoop& loop) {
  std::vector<CornerLoop> out;
  CornerLoop path;
  for (const auto& c : loop.corners) {
    auto it = std::find(path.corners.begin(), path.corners.end(), c);
    if (it != path.corners.end()) {
      CornerLoop piece;
      piece.corners.assign(it, path.corners.end());
      path.corners.erase(it, path.corners.end());
      out.push_back(std::move(piece));
    }
    path.corners.push_back(c);
  }
  out.push_back(std::move(path));
  return out;
}

// Drops vertices where the boundary runs straight on.
Polygon merge_collinear(const Polygon& ring) {
  Polygon out;
  const auto n = ring.size();
  for (std::size_t k = 0; k < n; ++k) {
    const Vec2 prev = ring[(k + n - 1) % n];
    const Vec2 next = ring[(k + 1) % n];
    if (cross(ring[k] - prev, next - ring[k]) != 0.0) out.push_back(ring[k]);
  }
  return out;
}

double segment_distance(Vec2 p, Vec2 a, Vec2 b, Vec2* closest) {
  const Vec2 ab = b - a;
  const double len2 = squared_norm(ab);
  double t = len2 > 0.0 ? dot(p - a, ab) / len2 : 0.0;
  t = std::clamp(t, 0.0, 1.0);
  *closest = a + ab * t;
  return distance(p, *closest);
}

void douglas_peucker(const Polygon& pts, std::size_t first, std::size_t last, double tol,
                     std::vector<bool>& keep) {
  if (last <= first + 1) return;
  double worst = -1.0;
  std::size_t idx = first;
  for (std::size_t k = first + 1; k < last; ++k) {
    Vec2 q;
    const double d = segment_distance(pts[k], pts[first], pts[last], &q);
    if (d > worst) {
      worst = d;
      idx = k;
    }
  }
  if (worst > tol) {
    keep[idx] = true;
    douglas_peucker(pts, first, idx, tol, keep);
    douglas_peucker(pts, idx, last, tol, keep);
  }
}

Polygon simplify_ring(const Polygon& ring, double tol) {
  const auto n = ring.size();
  if (n <= 4) return ring;
  std::size_t far = 0;
  double best = -1.0;
  for (std::size_t k = 1; k < n; ++k) {
    const double d = squared_norm(ring[k] - ring[0]);
    if (d > best) {
      best = d;
      far = k;
    }
  }
  Polygon closed = ring;
  closed.push_back(ring[0]);
  std::vector<bool> keep(closed.size(), false);
  keep[0] = keep[far] = keep[n] = true;
  douglas_peucker(closed, 0, far, tol, keep);
  douglas_peucker(closed, far, n, tol, keep);
  Polygon out;
  for (std::size_t k = 0; k < n; ++k) {
    if (keep[k]) out.push_back(closed[k]);
  }
  return out;
}

bool same_cell_membership(const Polygon& a, const Polygon& b, const GridHeader& g) {
  double lo_x = a[0].x, hi_x = a[0].x, lo_y = a[0].y, hi_y = a[0].y;
  for (const auto& v : a) {
    lo_x = std::min(lo_x, v.x);
    hi_x = std::max(hi_x, v.x);
    lo_y = std::min(lo_y, v.y);
    hi_y = std::max(hi_y, v.y);
  }
  const double cs = g.cell_size;
  const long c0 = std::max(0L, static_cast<long>(std::floor((lo_x - g.origin.x) / cs)) - 1);
  const long r0 = std::max(0L, static_cast<long>(std::floor((lo_y - g.origin.y) / cs)) - 1);
  const long c1 = std::min(static_cast<long>(g.width) - 1, static_cast<long>(std::ceil((hi_x - g.origin.x) / cs)) + 1);
  const long r1 = std::min(static_cast<long>(g.height) - 1, static_cast<long>(std::ceil((hi_y - g.origin.y) / cs)) + 1);
  for (long r = r0; r <= r1; ++r) {
    for (long c = c0; c <= c1; ++c) {
      const Vec2 p = g.cell_center({static_cast<std::size_t>(c), static_cast<std::size_t>(r)});
      if (point_in_polygon(p, a) != point_in_polygon(p, b)) return false;
    }
  }
  return true;
}

bool segments_intersect(Vec2 a, Vec2 b, Vec2 c, Vec2 d) {
  auto orient = [](Vec2 p, Vec2 q, Vec2 r) { return cross(q - p, r - p); };
  auto on_segment = [](Vec2 p, Vec2 q, Vec2 r) {
    return std::min(p.x, q.x) <= r.x && r.x <= std::max(p.x, q.x) && std::min(p.y, q.y) <= r.y &&
           r.y <= std::max(p.y, q.y);
  };
  const double d1 = orient(c, d, a), d2 = orient(c, d, b), d3 = orient(a, b, c), d4 = orient(a, b, d);
  if (((d1 > 0 && d2 < 0) || (d1 < 0 && d2 > 0)) && ((d3 > 0 && d4 < 0) || (d3 < 0 && d4 > 0))) return true;
  if (d1 == 0 && on_segment(c, d, a)) return true;
  if (d2 == 0 && on_segment(c, d, b)) return true;
  if (d3 == 0 && on_segment(a, b, c)) return true;
  if (d4 == 0 && on_segment(a, b, d)) return true;
  return false;
}

}  // namespace

double signed_area(const Polygon& poly) {
  double a = 0.0;
  for (std::size_t k = 0, n = poly.size(); k < n; ++k) a += cross(poly[k], poly[(k + 1) % n]);
  return 0.5 * a;
}

bool is_simple(const Polygon& poly) {
  const auto n = poly.size();
  if (n < 3) return false;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (j == i + 1 || (i == 0 && j == n - 1)) continue;  // adjacent edges share a vertex
      if (segments_intersect(poly[i], poly[(i + 1) % n], poly[j], poly[(j + 1) % n])) return false;
    }
  }
  return true;
}

bool point_in_polygon(Vec2 p, const Polygon& poly) {
  bool inside = false;
  for (std::size_t i = 0, n = poly.size(), j = n - 1; i < n; j = i++) {
    const Vec2 a = poly[i], b = poly[j];
    if ((a.y > p.y) != (b.y > p.y)) {
      const double x = a.x + (p.y - a.y) * (b.x - a.x) / (b.y - a.y);
      if (p.x < x) inside = !inside;
    }
  }
  return inside;
}

bool inside_any(Vec2 p, const ObstacleSet& set) {
  return std::any_of(set.polygons.begin(), set.polygons.end(),
                     [&](const Polygon& poly) { return point_in_polygon(p, poly); });
}

ObstacleSet threshold_obstacles(const ScalarRaster& risk, double threshold) {
  if (!std::isfinite(threshold)) throw InvalidInput("obstacle threshold must be finite");
  const auto& g = risk.header();
  g.validate();
  std::vector<std::uint8_t> hazard(risk.size());
  for (std::size_t k = 0; k < risk.size(); ++k) hazard[k] = risk.values()[k] >= threshold ? 1 : 0;

  ObstacleSet set;
  set.threshold = threshold;
  std::vector<CornerLoop> loops;
  for (const auto& traced : trace_boundaries(hazard, static_cast<long>(g.width), static_cast<long>(g.height))) {
    for (auto& piece : split_at_pinches(traced)) loops.push_back(std::move(piece));
  }
  for (const auto& loop : loops) {
    Polygon ring;
    ring.reserve(loop.corners.size());
    for (const auto& [i, j] : loop.corners) {
      ring.push_back(g.origin + Vec2{static_cast<double>(i) * g.cell_size, static_cast<double>(j) * g.cell_size});
    }
    ring = merge_collinear(ring);
    if (ring.size() < 3 || signed_area(ring) <= 0.0) continue;  // holes and notches are filled

    Polygon best = ring;
    double tol = 0.5 * g.cell_size;
    for (int attempt = 0; attempt < 4; ++attempt, tol *= 0.5) {
      Polygon simple = simplify_ring(ring, tol);
      if (simple.size() >= 3 && signed_area(simple) > 0.0 && is_simple(simple) &&
          same_cell_membership(ring, simple, g)) {
        best = std::move(simple);
        break;
      }
    }
    set.polygons.push_back(std::move(best));
  }
  return set;
}

ObstacleDistance distance_to_polygon(Vec2 p, const Polygon& poly, double d_floor) {
  ObstacleDistance out;
  if (poly.size() < 2) return out;
  Vec2 best_q;
  std::size_t best_edge = 0;
  for (std::size_t k = 0, n = poly.size(); k < n; ++k) {
    Vec2 q;
    const double d = segment_distance(p, poly[k], poly[(k + 1) % n], &q);
    if (d < out.distance) {
      out.distance = d;
      best_q = q;
      best_edge = k;
    }
  }
  out.inside = point_in_polygon(p, poly);
  if (out.distance > 0.0) {
    out.normal = out.inside ? (best_q - p) / out.distance : (p - best_q) / out.distance;
  } else {
    const Vec2 e = poly[(best_edge + 1) % poly.size()] - poly[best_edge];
    out.normal = Vec2{e.y, -e.x} / norm(e);
  }
  if (out.inside) out.distance = std::max(out.distance, d_floor);
  return out;
}

ObstacleDistance distance_to_obstacle(Vec2 p, const ObstacleSet& set, double d_floor) {
  ObstacleDistance best;
  for (std::size_t k = 0; k < set.polygons.size(); ++k) {
    auto d = distance_to_polygon(p, set.polygons[k], d_floor);
    if (d.distance < best.distance) {
      best = d;
      best.polygon = k;
    }
  }
  return best;
}

std::string obstacles_to_text(const ObstacleSet& set) {
  std::string out = "# scoutnav obstacles v1\nthreshold " + io::format_double(set.threshold) + '\n';
  for (const auto& poly : set.polygons) {
    out += "polygon " + std::to_string(poly.size()) + '\n';
    for (const auto& v : poly) out += io::format_double(v.x) + ',' + io::format_double(v.y) + '\n';
  }
  return out;
}

ObstacleSet obstacles_from_text(std::string_view text) {
  const auto rows = io::lines(text);
  ObstacleSet set;
  std::size_t k = 0;
  auto next_row = [&]() -> std::string_view {
    while (k < rows.size()) {
      auto row = io::trim(rows[k++]);
      if (!row.empty() && row.front() != '#') return row;
    }
    return {};
  };
  auto row = next_row();
  if (row.substr(0, 10) != "threshold ") throw InvalidInput("obstacle file must start with a threshold line");
  set.threshold = io::parse_double(io::trim(row.substr(10)));
  for (row = next_row(); !row.empty(); row = next_row()) {
    if (row.substr(0, 8) != "polygon ") throw InvalidInput("expected 'polygon <count>' at line " + std::to_string(k));
    const auto count = io::parse_integer(io::trim(row.substr(8)));
    if (count < 3) throw InvalidInput("polygon needs at least 3 vertices at line " + std::to_string(k));
    Polygon poly;
    for (long long v = 0; v < count; ++v) {
      const auto f = io::split(next_row(), ',');
      if (f.size() != 2) throw InvalidInput("malformed vertex at line " + std::to_string(k));
      poly.push_back({io::parse_double(f[0]), io::parse_double(f[1])});
    }
    set.polygons.push_back(std::move(poly));
  }
  return set;
}

}  // namespace scoutnav::planner
