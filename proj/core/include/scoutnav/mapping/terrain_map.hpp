#pragma once

#include <span>
#include <vector>

#include "scoutnav/grid.hpp"
#include "scoutnav/mapping/gpr.hpp"
#include "scoutnav/proprioception/step_log.hpp"

namespace scoutnav::mapping {

/// Gridded posterior of the scouted terrain.
struct TerrainMap {
  ScalarRaster mean;      ///< strength, N/cm^3
  ScalarRaster variance;  ///< strength posterior variance
  ScalarRaster fitness;   ///< predicted R^2 of the linear law
  std::size_t observation_count = 0;

  const GridHeader& header() const { return mean.header(); }
  friend bool operator==(const TerrainMap&, const TerrainMap&) = default;
};

std::vector<Observation> strength_observations(std::span<const proprioception::StepMeasurement> steps);
std::vector<Observation> fitness_observations(std::span<const proprioception::StepMeasurement> steps);

/// Keeps one strength and one fitness GP over the accumulated footsteps.
/// Each ingest refits on the full history, so ingesting steps in batches
/// gives the same maps as a single ingest of all of them.
class TerrainMapper {
 public:
  explicit TerrainMapper(KernelParams strength_params, KernelParams fitness_params = {});

  void ingest(std::span<const proprioception::StepMeasurement> steps);

  bool empty() const { return steps_.empty(); }
  std::span<const proprioception::StepMeasurement> steps() const { return steps_; }

  /// Throws InvalidInput before any step has been ingested.
  const GprModel& strength_model() const;
  const GprModel& fitness_model() const;

  TerrainMap rasterize(const GridHeader& grid) const;

 private:
  KernelParams strength_params_;
  KernelParams fitness_params_;
  std::vector<proprioception::StepMeasurement> steps_;
  std::vector<GprModel> models_;  // empty, or {strength, fitness}
};

/// Predicts both models on every cell centre of `grid`.
TerrainMap rasterize(const GprModel& strength, const GprModel& fitness, const GridHeader& grid);

/// Mean of the fine raster over each coarse cell, by cell-centre membership.
/// Coarse cells with no fine centre inside are NaN.
ScalarRaster block_average(const ScalarRaster& fine, const GridHeader& coarse);

}  // namespace scoutnav::mapping
