#include "scoutnav/mapping/terrain_map.hpp"

#include <limits>

#include "scoutnav/errors.hpp"

namespace scoutnav::mapping {

std::vector<Observation> strength_observations(std::span<const proprioception::StepMeasurement> steps) {
  std::vector<Observation> out;
  out.reserve(steps.size());
  for (const auto& s : steps) out.push_back({s.position, s.estimate.alpha_z});
  return out;
}

std::vector<Observation> fitness_observations(std::span<const proprioception::StepMeasurement> steps) {
  std::vector<Observation> out;
  out.reserve(steps.size());
  for (const auto& s : steps) out.push_back({s.position, s.estimate.r_squared});
  return out;
}

TerrainMapper::TerrainMapper(KernelParams strength_params, KernelParams fitness_params)
    : strength_params_(strength_params), fitness_params_(fitness_params) {
  strength_params_.validate();
  fitness_params_.validate();
}

void TerrainMapper::ingest(std::span<const proprioception::StepMeasurement> steps) {
  if (steps.empty()) return;
  std::vector<proprioception::StepMeasurement> all = steps_;
  all.insert(all.end(), steps.begin(), steps.end());
  std::vector<GprModel> models;
  models.push_back(GprModel::fit(strength_observations(all), strength_params_));
  models.push_back(GprModel::fit(fitness_observations(all), fitness_params_));
  steps_ = std::move(all);
  models_ = std::move(models);
}

const GprModel& TerrainMapper::strength_model() const {
  if (models_.empty()) throw InvalidInput("terrain mapper has no observations");
  return models_[0];
}

const GprModel& TerrainMapper::fitness_model() const {
  if (models_.empty()) throw InvalidInput("terrain mapper has no observations");
  return models_[1];
}

TerrainMap TerrainMapper::rasterize(const GridHeader& grid) const {
  return mapping::rasterize(strength_model(), fitness_model(), grid);
}

TerrainMap rasterize(const GprModel& strength, const GprModel& fitness, const GridHeader& grid) {
  grid.validate();
  std::vector<Vec2> centres;
  centres.reserve(grid.cell_count());
  for (std::size_t r = 0; r < grid.height; ++r) {
    for (std::size_t c = 0; c < grid.width; ++c) centres.push_back(grid.cell_center({c, r}));
  }
  const auto s = strength.predict(centres);
  const auto f = fitness.predict(centres);

  TerrainMap map{ScalarRaster(grid, 0.0), ScalarRaster(grid, 0.0), ScalarRaster(grid, 0.0),
                 strength.observations().size()};
  for (std::size_t i = 0; i < centres.size(); ++i) {
    map.mean.values()[i] = s[i].mean;
    map.variance.values()[i] = s[i].variance;
    map.fitness.values()[i] = f[i].mean;
  }
  return map;
}

ScalarRaster block_average(const ScalarRaster& fine, const GridHeader& coarse) {
  coarse.validate();
  std::vector<double> sum(coarse.cell_count(), 0.0);
  std::vector<std::size_t> count(coarse.cell_count(), 0);
  const auto& fh = fine.header();
  for (std::size_t r = 0; r < fh.height; ++r) {
    for (std::size_t c = 0; c < fh.width; ++c) {
      const auto cell = coarse.cell_of(fh.cell_center({c, r}));
      if (!cell) continue;
      sum[coarse.linear(*cell)] += fine.at(c, r);
      ++count[coarse.linear(*cell)];
    }
  }
  ScalarRaster out(coarse, std::numeric_limits<double>::quiet_NaN());
  for (std::size_t i = 0; i < sum.size(); ++i) {
    if (count[i] > 0) out.values()[i] = sum[i] / static_cast<double>(count[i]);
  }
  return out;
}

}  // namespace scoutnav::mapping
