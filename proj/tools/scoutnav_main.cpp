// scoutnav: desk-scale scout/rover mission runner.
#include <CLI11.hpp>

#include <csignal>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>

#include "scoutnav/errors.hpp"
#include "scoutnav/io.hpp"
#include "scoutnav/mission/mission.hpp"
#include "scoutnav/raster_io.hpp"
#include "scoutnav/service/server.hpp"

namespace fs = std::filesystem;
using namespace scoutnav;

namespace {

constexpr int kConfigError = 2;
constexpr int kPipelineError = 3;

struct Options {
  std::string preset = "ames";
  std::optional<std::uint64_t> seed;
  std::string out = "scoutnav_out";
  std::optional<double> payload;
  std::optional<double> risk_threshold;
  std::optional<double> length_scale;
  std::optional<double> noise;
  std::optional<double> constant;
  bool select_kernel = false;
  std::string log;
  std::string host = "127.0.0.1";
  int port = 8080;
  double steps_per_second = 10.0;
  std::size_t map_every = 20;
};

mission::MissionConfig make_config(const Options& o) {
  auto c = mission::preset_by_name(o.preset);
  if (o.seed) c.seed = *o.seed;
  if (o.payload) {
    if (c.wheel) c.wheel->payload_kg = *o.payload;
    if (c.rhex) c.rhex->planning_payload_kg = *o.payload;
  }
  if (o.risk_threshold) c.risk_threshold = *o.risk_threshold;
  if (o.length_scale) c.kernel.length_scale = *o.length_scale;
  if (o.noise) c.kernel.noise_floor = *o.noise;
  if (o.constant) c.kernel.constant = *o.constant;
  c.select_hyperparameters = o.select_kernel;
  c.validate();
  return c;
}

void add_common(CLI::App* cmd, Options& o) {
  cmd->add_option("--preset", o.preset, "Mission preset (ames, whitesands)")->capture_default_str();
  cmd->add_option("--seed", o.seed, "RNG seed override");
  cmd->add_option("--out", o.out, "Artifact directory")->capture_default_str();
  cmd->add_option("--payload", o.payload, "Payload mass of the planning platform, kg");
  cmd->add_option("--risk-threshold", o.risk_threshold, "Obstacle threshold on the risk score");
  cmd->add_option("--length-scale", o.length_scale, "GPR length scale, m");
  cmd->add_option("--noise", o.noise, "GPR white-noise variance");
  cmd->add_option("--constant", o.constant, "GPR prior variance");
  cmd->add_flag("--select-kernel", o.select_kernel, "Pick length scale and prior variance by marginal likelihood");
}

ScalarRaster read_raster(const fs::path& path) {
  try {
    return io::raster_from_csv(io::read_file(path));
  } catch (const Error& e) {
    throw InvalidInput(path.string() + ": " + e.what());
  }
}

int cmd_map(const Options& o) {
  const auto c = make_config(o);
  const auto steps = [&] {
    try {
      return mission::generate_scout_steps(c.scout, c.truth, c.seed);
    } catch (const std::exception& e) {
      throw StageError("scout", e.what());
    }
  }();
  const auto map = mission::build_map(steps, c);
  io::write_file(fs::path(o.out) / "log.csv", proprioception::write_step_log(steps));
  mission::write_map_artifacts(map, o.out);
  std::cout << "steps " << steps.size() << "\nmap.rmse " << io::format_double(mission::map_rmse(map.mean, c.truth.field))
            << '\n';
  return 0;
}

int cmd_risk(const Options& o) {
  const auto c = make_config(o);
  const auto mean = read_raster(fs::path(o.out) / "maps" / "mean.csv");
  const auto risks = mission::assess_risk(mean, c);
  mission::write_risk_artifacts(risks, o.out);
  for (const auto& r : risks) {
    std::cout << r.name << " hazard_fraction " << io::format_double(r.layer.hazard_fraction()) << '\n';
  }
  return 0;
}

int cmd_plan(const Options& o) {
  const auto c = make_config(o);
  const auto score = read_raster(fs::path(o.out) / "risk" / (c.planning_layer_name() + "_score.csv"));
  const auto plan = mission::plan_route(score, c, c.goals);
  mission::write_plan_artifacts(plan, o.out);
  std::cout << "obstacles " << plan.obstacles.polygons.size() << '\n';
  if (plan.trajectory) std::cout << "termination " << planner::to_string(plan.trajectory->termination) << '\n';
  return 0;
}

int report(const mission::MissionArtifacts& a, const mission::MissionConfig& c, const Options& o) {
  mission::write_artifacts(a, c, o.out);
  std::cout << mission::summary_text(a, c);
  return 0;
}

int cmd_run(const Options& o) {
  const auto c = make_config(o);
  return report(mission::run_mission(c), c, o);
}

int cmd_replay(const Options& o) {
  const auto c = make_config(o);
  const auto steps = [&] {
    try {
      return proprioception::read_step_log(io::read_file(o.log));
    } catch (const Error& e) {
      throw InvalidInput(o.log + ": " + e.what());
    }
  }();
  return report(mission::replay(steps, c), c, o);
}

service::Server* g_server = nullptr;

int cmd_serve(const Options& o) {
  service::SessionManager sessions;
  service::Server server(sessions);
  const int port = server.bind(o.host, o.port);
  g_server = &server;
  std::signal(SIGINT, [](int) {
    if (g_server) g_server->stop();
  });
  std::cerr << "listening on http://" << o.host << ':' << port << '\n';
  server.serve();
  g_server = nullptr;
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Scout-informed terrain mapping, traversal risk, and rover path planning"};
  app.require_subcommand(1);
  Options o;

  auto* map = app.add_subcommand("map", "Scout the field and build strength, variance, and fitness maps");
  auto* risk = app.add_subcommand("risk", "Traversal risk layers from an existing map (reads <out>/maps)");
  auto* plan = app.add_subcommand("plan", "Obstacles and trajectories from an existing risk layer (reads <out>/risk)");
  auto* run = app.add_subcommand("run", "Full pipeline");
  auto* replay = app.add_subcommand("replay", "Re-analyze a recorded step log");
  auto* serve = app.add_subcommand("serve", "Live mission service over HTTP");
  for (auto* cmd : {map, risk, plan, run, replay}) add_common(cmd, o);
  replay->add_option("--log", o.log, "Step log CSV")->required();
  serve->add_option("--host", o.host)->capture_default_str();
  serve->add_option("--port", o.port, "0 picks a free port")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kConfigError;
  }

  try {
    if (*map) return cmd_map(o);
    if (*risk) return cmd_risk(o);
    if (*plan) return cmd_plan(o);
    if (*run) return cmd_run(o);
    if (*replay) return cmd_replay(o);
    if (*serve) return cmd_serve(o);
  } catch (const StageError& e) {
    std::cerr << "error: stage " << e.stage() << ": " << e.what() << '\n';
    return kPipelineError;
  } catch (const InvalidInput& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kConfigError;
  } catch (const std::exception& e) {
    std::cerr << "error: stage io: " << e.what() << '\n';
    return kPipelineError;
  }
  return 0;
}
