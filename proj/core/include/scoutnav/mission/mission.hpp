#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "scoutnav/mapping/terrain_map.hpp"
#include "scoutnav/mission/config.hpp"
#include "scoutnav/planner/potential_field.hpp"
#include "scoutnav/risk.hpp"

namespace scoutnav::mission {

struct NamedRisk {
  std::string name;
  RiskLayer layer;
};

struct PlanResult {
  planner::ObstacleSet obstacles;
  std::optional<planner::Trajectory> trajectory;
  std::optional<planner::Trajectory> naive;
};

struct MissionArtifacts {
  std::vector<proprioception::StepMeasurement> steps;
  std::size_t planned_steps = 0;  ///< footsteps in the plan, including any without a usable phase
  mapping::TerrainMap map;
  std::vector<NamedRisk> risks;
  std::size_t planning_layer = 0;  ///< index into risks
  PlanResult plan;

  const RiskLayer& planning_risk() const { return risks.at(planning_layer).layer; }
};

/// Progress callbacks for live consumers.  Called on the mission thread.
class MissionObserver {
 public:
  virtual ~MissionObserver() = default;
  virtual void on_step(const proprioception::StepMeasurement& /*step*/, std::size_t /*index*/) {}
  virtual void on_map(const mapping::TerrainMap& /*map*/) {}
};

// Pipeline stages.  Module errors leave as StageError naming the stage.
mapping::TerrainMap build_map(std::span<const proprioception::StepMeasurement> steps, const MissionConfig& config);
std::vector<NamedRisk> assess_risk(const ScalarRaster& strength, const MissionConfig& config);
std::size_t planning_index(const std::vector<NamedRisk>& risks, const MissionConfig& config);
PlanResult plan_route(const ScalarRaster& planning_score, const MissionConfig& config, std::span<const Vec2> goals);

/// Scout, map (refitting every update_every steps), assess, and plan.
MissionArtifacts run_mission(const MissionConfig& config, MissionObserver* observer = nullptr);

/// Re-analysis of a recorded step log under `config`.
MissionArtifacts replay(std::span<const proprioception::StepMeasurement> steps, const MissionConfig& config);

/// RMSE of the mean raster block-averaged onto the truth cells, N/cm^3.
double map_rmse(const ScalarRaster& mean, const terrain::ResistanceField& truth);

/// Mean estimate per preparation class of the truth cell under each step.
struct TreatmentMeans {
  double tamped = 0.0, raked = 0.0, sifted = 0.0;
  std::size_t n_tamped = 0, n_raked = 0, n_sifted = 0;
};
TreatmentMeans treatment_means(std::span<const proprioception::StepMeasurement> steps,
                               const terrain::ResistanceField& truth);

/// "key = value" manifest, deterministic for fixed inputs.
std::string summary_text(const MissionArtifacts& artifacts, const MissionConfig& config);

/// Layout under `dir`:
///   log.csv, summary.txt
///   maps/{mean,variance,fitness}.{csv,bin}
///   risk/<layer>_{score,slip,torque}.csv, risk/<layer>_mask.csv
///   plan/obstacles.txt, plan/trajectory.csv, plan/naive.csv (when goals exist)
void write_artifacts(const MissionArtifacts& artifacts, const MissionConfig& config, const std::filesystem::path& dir);
void write_map_artifacts(const mapping::TerrainMap& map, const std::filesystem::path& dir);
void write_risk_artifacts(const std::vector<NamedRisk>& risks, const std::filesystem::path& dir);
void write_plan_artifacts(const PlanResult& plan, const std::filesystem::path& dir);

}  // namespace scoutnav::mission
