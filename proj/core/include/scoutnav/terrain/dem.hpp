#pragma once

#include "scoutnav/grid.hpp"

namespace scoutnav::terrain {

/// Elevation model, metres.
class DemGrid {
 public:
  /// Throws InvalidInput on non-finite elevations.
  explicit DemGrid(ScalarRaster elevations);

  const ScalarRaster& raster() const { return raster_; }
  const GridHeader& header() const { return raster_.header(); }

 private:
  ScalarRaster raster_;
};

/// Per-cell inclination in degrees from central differences, one-sided at the
/// borders.  Needs at least 2 x 2 cells.
ScalarRaster slope_degrees(const DemGrid& dem);

/// 1 where the inclination is strictly below `max_slope_deg`.
MaskRaster slope_corridor(const DemGrid& dem, double max_slope_deg);

}  // namespace scoutnav::terrain
