#pragma once

#include <cstddef>
#include <span>

#include "scoutnav/terrain/trace.hpp"

namespace scoutnav::proprioception {

struct ResistanceEstimate {
  double alpha_z = 0.0;      ///< N/cm^3, >= 0
  double r_squared = 0.0;    ///< clamped to [0, 1]
  std::size_t n_samples = 0;

  friend constexpr bool operator==(const ResistanceEstimate&, const ResistanceEstimate&) = default;
};

inline constexpr double kDefaultContactThreshold = 0.5;  // N

/// Penetration phase of a step.
///
/// Picks the longest run of samples with strictly increasing depth and force
/// at or above `contact_threshold` (earliest run on ties).  Touchdown is
/// then located on the strictly shallower samples leading into the run by
/// fitting a hinge f = k * max(0, z - z_b) at each candidate sample b.  The
/// earliest b whose squared error is within 2 * s^2 of the best is taken,
/// where s^2 is the best fit's residual variance over n - 2 degrees of
/// freedom.  The returned segment starts at the touchdown sample and is
/// re-zeroed so that sample sits at depth 0.
///
/// Throws EmptyPhaseError if no sample reaches the threshold or the phase is
/// shorter than two samples.
terrain::ForceDepthTrace extract_penetration_phase(const terrain::ForceDepthTrace& trace,
                                                   double contact_threshold = kDefaultContactThreshold);

/// Least-squares fit of f = A * alpha_z * z through the origin.
///
/// R^2 is taken against the mean-force baseline and clamped to [0, 1]; a
/// negative slope is clamped to zero.  Throws SingularFitError when every
/// depth is zero.
ResistanceEstimate fit_resistance(std::span<const terrain::ForceSample> segment, double area_cm2);

inline ResistanceEstimate fit_resistance(const terrain::ForceDepthTrace& segment) {
  return fit_resistance(segment.samples(), segment.probe().area_cm2);
}

}  // namespace scoutnav::proprioception
