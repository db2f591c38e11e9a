#include "scoutnav/terrain/dem.hpp"

#include <cmath>
#include <numbers>

namespace scoutnav::terrain {

DemGrid::DemGrid(ScalarRaster elevations) : raster_(std::move(elevations)) {
  raster_.header().validate();
  for (double v : raster_.values()) {
    if (!std::isfinite(v)) throw InvalidInput("DEM elevations must be finite");
  }
}

ScalarRaster slope_degrees(const DemGrid& dem) {
  const auto& z = dem.raster();
  const std::size_t w = z.width();
  const std::size_t h = z.height();
  if (w < 2 || h < 2) {
    throw InvalidInput("slope needs a DEM of at least 2 x 2 cells");
  }
  const double cs = z.header().cell_size;

  // Central difference inside, one-sided at the two borders.
  auto derivative = [cs](std::size_t i, std::size_t n, auto&& value) {
    if (i == 0) return (value(1) - value(0)) / cs;
    if (i == n - 1) return (value(n - 1) - value(n - 2)) / cs;
    return (value(i + 1) - value(i - 1)) / (2.0 * cs);
  };

  ScalarRaster slope(z.header(), 0.0);
  for (std::size_t row = 0; row < h; ++row) {
    for (std::size_t col = 0; col < w; ++col) {
      const double dzdx = derivative(col, w, [&](std::size_t c) { return z.at(c, row); });
      const double dzdy = derivative(row, h, [&](std::size_t r) { return z.at(col, r); });
      slope.at(col, row) = std::atan(std::hypot(dzdx, dzdy)) * 180.0 / std::numbers::pi;
    }
  }
  return slope;
}

MaskRaster slope_corridor(const DemGrid& dem, double max_slope_deg) {
  const auto slope = slope_degrees(dem);
  MaskRaster mask(slope.header(), std::uint8_t{0});
  for (std::size_t i = 0; i < slope.size(); ++i) {
    mask.values()[i] = slope.values()[i] < max_slope_deg ? 1 : 0;
  }
  return mask;
}

}  // namespace scoutnav::terrain
