#include "scoutnav/grid.hpp"

#include <cmath>

namespace scoutnav {

bool GridHeader::contains(Vec2 p) const {
  const Vec2 hi = max_corner();
  return std::isfinite(p.x) && std::isfinite(p.y) && p.x >= origin.x && p.y >= origin.y &&
         p.x <= hi.x && p.y <= hi.y;
}

std::optional<CellIndex> GridHeader::cell_of(Vec2 p) const {
  if (!contains(p)) {
    return std::nullopt;
  }
  auto index = [this](double offset, std::size_t count) {
    const auto i = static_cast<std::size_t>(std::floor(offset / cell_size));
    return i < count ? i : count - 1;
  };
  return CellIndex{index(p.x - origin.x, width), index(p.y - origin.y, height)};
}

Vec2 GridHeader::cell_center(CellIndex c) const {
  return origin + Vec2{(static_cast<double>(c.col) + 0.5) * cell_size,
                       (static_cast<double>(c.row) + 0.5) * cell_size};
}

void GridHeader::validate() const {
  if (!(cell_size > 0.0) || !std::isfinite(cell_size)) {
    throw InvalidInput("grid cell size must be positive");
  }
  if (width == 0 || height == 0) {
    throw InvalidInput("grid must have at least one cell");
  }
  if (!std::isfinite(origin.x) || !std::isfinite(origin.y)) {
    throw InvalidInput("grid origin must be finite");
  }
}

GridHeader make_grid(Vec2 origin, Vec2 extent, double cell_size) {
  if (!(cell_size > 0.0)) {
    throw InvalidInput("grid cell size must be positive");
  }
  auto count = [cell_size](double span) {
    return static_cast<std::size_t>(std::max(1.0, std::ceil(span / cell_size - 1e-9)));
  };
  GridHeader g{origin, cell_size, count(extent.x), count(extent.y)};
  g.validate();
  return g;
}

}  // namespace scoutnav
