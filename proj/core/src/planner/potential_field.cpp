#include "scoutnav/planner/potential_field.hpp"

#include <cmath>
#include <limits>

#include "scoutnav/errors.hpp"
#include "scoutnav/io.hpp"

namespace scoutnav::planner {

void PlannerConfig::validate() const {
  const double f[] = {k_rep, k_att, v_max, a_max, dt, goal_radius, d_floor, stall_window_s, stall_speed};
  for (double v : f) {
    if (!(v > 0.0) || !std::isfinite(v)) throw InvalidInput("planner parameters must be positive");
  }
  if (max_steps == 0) throw InvalidInput("planner max steps must be positive");
}

const char* to_string(Termination t) {
  switch (t) {
    case Termination::kReachedAllGoals: return "reached_all_goals";
    case Termination::kMaxSteps: return "max_steps";
    case Termination::kStuckInLocalMinimum: return "stuck_in_local_minimum";
  }
  return "unknown";
}

double repulsion_magnitude(double distance, const PlannerConfig& config) {
  const double d = std::max(distance, config.d_floor);
  return config.k_rep / (d * d);
}

Vec2 net_force(Vec2 p, Vec2 goal, const ObstacleSet& obstacles, const PlannerConfig& config) {
  Vec2 f = (goal - p) * config.k_att;
  for (const auto& poly : obstacles.polygons) {
    const auto d = distance_to_polygon(p, poly, config.d_floor);
    f += d.normal * repulsion_magnitude(d.distance, config);
  }
  return clamp_magnitude(f, config.a_max);
}

namespace {

Trajectory rollout(Vec2 start, std::span<const Vec2> goals, const ObstacleSet& obstacles,
                   const PlannerConfig& config) {
  config.validate();
  Trajectory traj;
  traj.goal_reached.assign(goals.size(), false);
  traj.arrival_time.assign(goals.size(), std::numeric_limits<double>::quiet_NaN());

  const auto window = static_cast<std::size_t>(std::llround(config.stall_window_s / config.dt));
  std::vector<double> speeds;  // ring buffer over the stall window
  speeds.reserve(window);
  double speed_sum = 0.0;

  Vec2 p = start;
  Vec2 v;
  std::size_t goal = 0;
  std::size_t step = 0;
  auto advance_goals = [&](double t) {
    while (goal < goals.size() && distance(p, goals[goal]) <= config.goal_radius) {
      traj.goal_reached[goal] = true;
      traj.arrival_time[goal] = t;
      ++goal;
    }
  };

  advance_goals(0.0);
  traj.states.push_back({0.0, p, v, std::min(goal, goals.empty() ? 0 : goals.size() - 1)});
  while (goal < goals.size()) {
    if (step == config.max_steps) {
      traj.termination = Termination::kMaxSteps;
      return traj;
    }
    const Vec2 f = net_force(p, goals[goal], obstacles, config);
    v = clamp_magnitude(v + f * config.dt, config.v_max);
    p += v * config.dt;
    ++step;
    const double t = static_cast<double>(step) * config.dt;
    const std::size_t active = goal;
    advance_goals(t);
    traj.states.push_back({t, p, v, active});

    const double speed = norm(v);
    if (speeds.size() < window) {
      speeds.push_back(speed);
      speed_sum += speed;
    } else {
      auto& slot = speeds[(step - 1) % window];
      speed_sum += speed - slot;
      slot = speed;
    }
    if (speeds.size() == window && goal < goals.size() &&
        speed_sum / static_cast<double>(window) < config.stall_speed) {
      traj.termination = Termination::kStuckInLocalMinimum;
      return traj;
    }
  }
  traj.termination = Termination::kReachedAllGoals;
  return traj;
}

}  // namespace

Trajectory simulate_path(Vec2 start, std::span<const Vec2> goals, const ObstacleSet& obstacles,
                         const PlannerConfig& config) {
  if (inside_any(start, obstacles)) throw InvalidInput("planner start lies inside an obstacle");
  return rollout(start, goals, obstacles, config);
}

Trajectory naive_path(Vec2 start, std::span<const Vec2> goals, const PlannerConfig& config) {
  return rollout(start, goals, ObstacleSet{}, config);
}

std::size_t first_state_inside(const Trajectory& trajectory, const ObstacleSet& obstacles) {
  for (std::size_t k = 0; k < trajectory.states.size(); ++k) {
    if (inside_any(trajectory.states[k].position, obstacles)) return k;
  }
  return trajectory.states.size();
}

std::string trajectory_to_csv(const Trajectory& trajectory) {
  using io::format_double;
  std::string out = std::string(kTrajectoryHeader) + '\n';
  for (const auto& s : trajectory.states) {
    out += format_double(s.t) + ',' + format_double(s.position.x) + ',' + format_double(s.position.y) + ',' +
           format_double(s.velocity.x) + ',' + format_double(s.velocity.y) + ',' + std::to_string(s.goal_index) +
           '\n';
  }
  return out;
}

}  // namespace scoutnav::planner
