#include "scoutnav/mission/mission.hpp"

#include <cmath>
#include <utility>

#include "scoutnav/errors.hpp"
#include "scoutnav/io.hpp"
#include "scoutnav/mapping/gpr.hpp"
#include "scoutnav/raster_io.hpp"

namespace scoutnav::mission {
namespace {

template <typename F>
auto in_stage(const char* stage, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const StageError&) {
    throw;
  } catch (const std::exception& e) {
    throw StageError(stage, e.what());
  }
}

mapping::KernelParams strength_kernel(std::span<const proprioception::StepMeasurement> steps,
                                      const MissionConfig& config) {
  if (!config.select_hyperparameters) return config.kernel;
  return mapping::select_hyperparameters(mapping::strength_observations(steps), config.kernel);
}

void write_binary(const std::filesystem::path& path, const ScalarRaster& r) {
  const auto bytes = io::raster_to_binary(r);
  io::write_file(path, std::string_view(reinterpret_cast<const char*>(bytes.data()), bytes.size()));
}

}  // namespace

mapping::TerrainMap build_map(std::span<const proprioception::StepMeasurement> steps, const MissionConfig& config) {
  return in_stage("map", [&] {
    if (steps.empty()) throw InvalidInput("no scout steps to map");
    mapping::TerrainMapper mapper(strength_kernel(steps, config), config.fitness_kernel);
    mapper.ingest(steps);
    return mapper.rasterize(config.map_grid);
  });
}

std::vector<NamedRisk> assess_risk(const ScalarRaster& strength, const MissionConfig& config) {
  return in_stage("risk", [&] {
    std::vector<NamedRisk> out;
    if (config.rhex) {
      for (double m : config.rhex->payloads_kg) {
        out.push_back({rhex_layer_name(m),
                       rhex::rhex_risk_map(strength, rhex::RhexParams::field(m), config.rhex->slip_threshold)});
      }
      const auto planning = rhex_layer_name(config.rhex->planning_payload_kg);
      bool present = false;
      for (const auto& r : out) present |= r.name == planning;
      if (!present && config.planning_platform() == PlanningPlatform::kRhex) {
        out.push_back({planning, rhex::rhex_risk_map(strength, rhex::RhexParams::field(config.rhex->planning_payload_kg),
                                                     config.rhex->slip_threshold)});
      }
    }
    if (config.wheel) {
      out.push_back({wheel_layer_name(config.wheel->payload_kg),
                     wheel::wheel_risk_map(strength, config.wheel->params(), config.wheel->slip_threshold)});
    }
    return out;
  });
}

std::size_t planning_index(const std::vector<NamedRisk>& risks, const MissionConfig& config) {
  const auto name = config.planning_layer_name();
  for (std::size_t k = 0; k < risks.size(); ++k) {
    if (risks[k].name == name) return k;
  }
  throw StageError("risk", "planning layer " + name + " was not computed");
}

PlanResult plan_route(const ScalarRaster& planning_score, const MissionConfig& config, std::span<const Vec2> goals) {
  return in_stage("plan", [&] {
    PlanResult out;
    out.obstacles = planner::threshold_obstacles(planning_score, config.risk_threshold);
    if (!goals.empty()) {
      out.trajectory = planner::simulate_path(config.start, goals, out.obstacles, config.planner);
      out.naive = planner::naive_path(config.start, goals, config.planner);
    }
    return out;
  });
}

namespace {

MissionArtifacts analyze(std::vector<proprioception::StepMeasurement> steps, const MissionConfig& config,
                         mapping::TerrainMap map) {
  MissionArtifacts a;
  a.steps = std::move(steps);
  a.map = std::move(map);
  a.risks = assess_risk(a.map.mean, config);
  a.planning_layer = planning_index(a.risks, config);
  a.plan = plan_route(a.planning_risk().score, config, config.goals);
  return a;
}

}  // namespace

MissionArtifacts run_mission(const MissionConfig& config, MissionObserver* observer) {
  config.validate();
  const auto positions = in_stage("scout", [&] { return scout_positions(config.scout); });

  std::vector<proprioception::StepMeasurement> steps;
  std::optional<mapping::TerrainMapper> mapper;
  std::size_t pending = 0;
  auto refit = [&] {
    in_stage("map", [&] {
      if (!mapper) mapper.emplace(strength_kernel(steps, config), config.fitness_kernel);
      mapper->ingest(std::span(steps).subspan(steps.size() - pending));
      pending = 0;
      if (observer) observer->on_map(mapper->rasterize(config.map_grid));
      return 0;
    });
  };

  for (std::size_t i = 0; i < positions.size(); ++i) {
    auto m = in_stage("scout", [&] { return scout_step(config.scout, config.truth, config.seed, i); });
    if (!m) continue;
    steps.push_back(*m);
    ++pending;
    if (observer) observer->on_step(*m, steps.size() - 1);
    if (pending == config.update_every) refit();
  }
  if (steps.empty()) throw StageError("scout", "no footstep produced a usable penetration phase");
  if (pending > 0) refit();

  // With hyperparameter selection the final map is refitted with the kernel
  // chosen on the full log, as replay does.
  auto map = config.select_hyperparameters ? build_map(steps, config)
                                           : in_stage("map", [&] { return mapper->rasterize(config.map_grid); });
  auto out = analyze(std::move(steps), config, std::move(map));
  out.planned_steps = positions.size();
  return out;
}

MissionArtifacts replay(std::span<const proprioception::StepMeasurement> steps, const MissionConfig& config) {
  config.validate();
  auto out = analyze({steps.begin(), steps.end()}, config, build_map(steps, config));
  out.planned_steps = steps.size();
  return out;
}

double map_rmse(const ScalarRaster& mean, const terrain::ResistanceField& truth) {
  const auto coarse = mapping::block_average(mean, truth.header());
  double sum = 0.0;
  std::size_t n = 0;
  for (std::size_t k = 0; k < coarse.size(); ++k) {
    const double v = coarse.values()[k];
    if (std::isnan(v)) continue;
    const double d = v - truth.raster().values()[k];
    sum += d * d;
    ++n;
  }
  if (n == 0) throw InvalidInput("map does not overlap the ground truth");
  return std::sqrt(sum / static_cast<double>(n));
}

TreatmentMeans treatment_means(std::span<const proprioception::StepMeasurement> steps,
                               const terrain::ResistanceField& truth) {
  TreatmentMeans t;
  for (const auto& s : steps) {
    const double a = s.estimate.alpha_z;
    switch (terrain::classify_treatment(terrain::sample_resistance(truth, s.position))) {
      case terrain::Treatment::kTamped: t.tamped += a; ++t.n_tamped; break;
      case terrain::Treatment::kRaked: t.raked += a; ++t.n_raked; break;
      case terrain::Treatment::kSifted: t.sifted += a; ++t.n_sifted; break;
    }
  }
  if (t.n_tamped) t.tamped /= static_cast<double>(t.n_tamped);
  if (t.n_raked) t.raked /= static_cast<double>(t.n_raked);
  if (t.n_sifted) t.sifted /= static_cast<double>(t.n_sifted);
  return t;
}

std::string summary_text(const MissionArtifacts& a, const MissionConfig& config) {
  using io::format_double;
  std::string s;
  auto line = [&](const std::string& k, const std::string& v) { s += k + " = " + v + '\n'; };
  const auto& g = a.map.header();
  line("preset", config.name);
  line("seed", std::to_string(config.seed));
  line("steps", std::to_string(a.steps.size()));
  line("steps_planned", std::to_string(a.planned_steps));
  line("map.grid", std::to_string(g.width) + "x" + std::to_string(g.height) + "@" + format_double(g.cell_size));
  line("map.rmse", format_double(map_rmse(a.map.mean, config.truth.field)));
  const auto tm = treatment_means(a.steps, config.truth.field);
  if (tm.n_tamped) line("treatment.tamped.estimate_mean", format_double(tm.tamped));
  if (tm.n_raked) line("treatment.raked.estimate_mean", format_double(tm.raked));
  if (tm.n_sifted) line("treatment.sifted.estimate_mean", format_double(tm.sifted));
  for (const auto& r : a.risks) {
    line("risk." + r.name + ".hazard_cells", std::to_string(r.layer.hazard_count()));
    line("risk." + r.name + ".hazard_fraction", format_double(r.layer.hazard_fraction()));
  }
  line("risk.planning_layer", a.risks.at(a.planning_layer).name);
  line("plan.risk_threshold", format_double(config.risk_threshold));
  line("plan.obstacles", std::to_string(a.plan.obstacles.polygons.size()));
  line("plan.goals", std::to_string(config.goals.size()));
  if (a.plan.trajectory) {
    const auto& t = *a.plan.trajectory;
    std::size_t reached = 0;
    for (bool b : t.goal_reached) reached += b;
    line("plan.termination", planner::to_string(t.termination));
    line("plan.goals_reached", std::to_string(reached));
    line("plan.duration_s", format_double(t.states.back().t));
    line("plan.clear_of_obstacles",
         planner::first_state_inside(t, a.plan.obstacles) == t.states.size() ? "true" : "false");
  }
  if (a.plan.naive) {
    line("naive.enters_hazard",
         planner::first_state_inside(*a.plan.naive, a.plan.obstacles) < a.plan.naive->states.size() ? "true"
                                                                                                   : "false");
  }
  return s;
}

void write_map_artifacts(const mapping::TerrainMap& map, const std::filesystem::path& dir) {
  const std::pair<const char*, const ScalarRaster*> layers[] = {
      {"mean", &map.mean}, {"variance", &map.variance}, {"fitness", &map.fitness}};
  for (const auto& [name, r] : layers) {
    io::write_file(dir / "maps" / (std::string(name) + ".csv"), io::raster_to_csv(*r));
    write_binary(dir / "maps" / (std::string(name) + ".bin"), *r);
  }
}

void write_risk_artifacts(const std::vector<NamedRisk>& risks, const std::filesystem::path& dir) {
  for (const auto& r : risks) {
    io::write_file(dir / "risk" / (r.name + "_score.csv"), io::raster_to_csv(r.layer.score));
    io::write_file(dir / "risk" / (r.name + "_slip.csv"), io::raster_to_csv(r.layer.slip));
    io::write_file(dir / "risk" / (r.name + "_torque.csv"), io::raster_to_csv(r.layer.torque));
    io::write_file(dir / "risk" / (r.name + "_mask.csv"), io::mask_to_csv(r.layer.hazard));
  }
}

void write_plan_artifacts(const PlanResult& plan, const std::filesystem::path& dir) {
  io::write_file(dir / "plan" / "obstacles.txt", planner::obstacles_to_text(plan.obstacles));
  if (plan.trajectory) io::write_file(dir / "plan" / "trajectory.csv", planner::trajectory_to_csv(*plan.trajectory));
  if (plan.naive) io::write_file(dir / "plan" / "naive.csv", planner::trajectory_to_csv(*plan.naive));
}

void write_artifacts(const MissionArtifacts& a, const MissionConfig& config, const std::filesystem::path& dir) {
  io::write_file(dir / "log.csv", proprioception::write_step_log(a.steps));
  write_map_artifacts(a.map, dir);
  write_risk_artifacts(a.risks, dir);
  write_plan_artifacts(a.plan, dir);
  io::write_file(dir / "summary.txt", summary_text(a, config));
}

}  // namespace scoutnav::mission
