#pragma once

#include <cstddef>
#include <string>

#include "scoutnav/grid.hpp"

namespace scoutnav {

/// Platform-specific traversal risk on a strength raster's grid.
///
/// `score` is normalized so that 1 is the platform's hazard boundary; the
/// planner thresholds it.  `torque` is zero for platforms without a drive
/// torque model.
struct RiskLayer {
  std::string platform;
  ScalarRaster score;
  ScalarRaster slip;
  ScalarRaster torque;
  MaskRaster hazard;

  const GridHeader& header() const { return score.header(); }

  std::size_t hazard_count() const {
    std::size_t n = 0;
    for (auto v : hazard.values()) n += v != 0;
    return n;
  }

  double hazard_fraction() const {
    return hazard.size() == 0 ? 0.0
                              : static_cast<double>(hazard_count()) / static_cast<double>(hazard.size());
  }
};

}  // namespace scoutnav
