#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "scoutnav/errors.hpp"
#include "scoutnav/geometry.hpp"

namespace scoutnav {

struct CellIndex {
  std::size_t col = 0;
  std::size_t row = 0;

  friend constexpr bool operator==(CellIndex, CellIndex) = default;
};

/// Axis-aligned raster geometry.  Row 0 is the band nearest `origin.y`;
/// values are stored row-major.
struct GridHeader {
  Vec2 origin;
  double cell_size = 1.0;
  std::size_t width = 0;
  std::size_t height = 0;

  std::size_t cell_count() const { return width * height; }
  double extent_x() const { return cell_size * static_cast<double>(width); }
  double extent_y() const { return cell_size * static_cast<double>(height); }
  Vec2 max_corner() const { return origin + Vec2{extent_x(), extent_y()}; }

  /// Closed bounds: the far edges belong to the grid.
  bool contains(Vec2 p) const;

  /// Cells own the half-open interval [lo, hi); the far edges of the grid map
  /// into the last column/row.
  std::optional<CellIndex> cell_of(Vec2 p) const;

  Vec2 cell_center(CellIndex c) const;
  std::size_t linear(CellIndex c) const { return c.row * width + c.col; }

  /// Throws InvalidInput unless cell_size > 0 and the grid is non-empty.
  void validate() const;

  friend bool operator==(const GridHeader&, const GridHeader&) = default;
};

template <typename T>
class Raster {
 public:
  Raster() = default;
  Raster(GridHeader header, T fill) : header_(header), values_(header.cell_count(), fill) {}
  Raster(GridHeader header, std::vector<T> values) : header_(header), values_(std::move(values)) {
    if (values_.size() != header_.cell_count()) {
      throw InvalidInput("raster value count does not match grid dimensions");
    }
  }

  const GridHeader& header() const { return header_; }
  std::size_t width() const { return header_.width; }
  std::size_t height() const { return header_.height; }
  std::size_t size() const { return values_.size(); }

  T& at(CellIndex c) { return values_[header_.linear(c)]; }
  const T& at(CellIndex c) const { return values_[header_.linear(c)]; }
  T& at(std::size_t col, std::size_t row) { return at(CellIndex{col, row}); }
  const T& at(std::size_t col, std::size_t row) const { return at(CellIndex{col, row}); }

  std::span<const T> values() const { return values_; }
  std::span<T> values() { return values_; }

  friend bool operator==(const Raster&, const Raster&) = default;

 private:
  GridHeader header_;
  std::vector<T> values_;
};

using ScalarRaster = Raster<double>;
using MaskRaster = Raster<std::uint8_t>;

/// Regular grid covering [origin, origin + extent] with the given cell size.
GridHeader make_grid(Vec2 origin, Vec2 extent, double cell_size);

}  // namespace scoutnav
