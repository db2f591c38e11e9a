#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "scoutnav/planner/obstacles.hpp"

namespace scoutnav::planner {

struct PlannerConfig {
  double k_rep = 0.1;
  double k_att = 1.0;
  double v_max = 1.0;        // m/s
  double a_max = 1.0;        // m/s^2
  double dt = 0.01;          // s
  double goal_radius = 0.25; // m
  double d_floor = 0.05;     // m
  std::size_t max_steps = 200000;
  double stall_window_s = 5.0;
  double stall_speed = 0.01;  // m/s

  /// Throws InvalidInput unless every field is positive.
  void validate() const;
};

struct TrajectoryState {
  double t = 0.0;
  Vec2 position;
  Vec2 velocity;
  std::size_t goal_index = 0;  ///< goal being pursued when this state was reached

  friend constexpr bool operator==(const TrajectoryState&, const TrajectoryState&) = default;
};

enum class Termination { kReachedAllGoals, kMaxSteps, kStuckInLocalMinimum };
const char* to_string(Termination t);

struct Trajectory {
  std::vector<TrajectoryState> states;
  std::vector<bool> goal_reached;
  std::vector<double> arrival_time;  ///< NaN for goals never reached
  Termination termination = Termination::kMaxSteps;

  bool reached_all() const { return termination == Termination::kReachedAllGoals; }
  friend bool operator==(const Trajectory&, const Trajectory&) = default;
};

/// k_rep / D^2 for D floored at d_floor.
double repulsion_magnitude(double distance, const PlannerConfig& config);

/// Attraction towards `goal` plus one repulsion term per polygon, clamped to a_max.
Vec2 net_force(Vec2 p, Vec2 goal, const ObstacleSet& obstacles, const PlannerConfig& config);

/// Explicit Euler rollout visiting `goals` in order.
///
/// Each step: v <- clamp(v + F dt, v_max), p <- p + v dt.  A goal counts as
/// reached when p is within goal_radius; the rollout stops after the last
/// goal, at max_steps, or when the mean speed over the last stall window
/// drops below stall_speed.  Throws InvalidInput if `start` lies inside an
/// obstacle.
Trajectory simulate_path(Vec2 start, std::span<const Vec2> goals, const ObstacleSet& obstacles,
                         const PlannerConfig& config);

/// Same rollout with obstacles ignored.
Trajectory naive_path(Vec2 start, std::span<const Vec2> goals, const PlannerConfig& config);

/// Index of the first state inside any polygon, or states.size() if none.
std::size_t first_state_inside(const Trajectory& trajectory, const ObstacleSet& obstacles);

inline constexpr const char* kTrajectoryHeader = "t,x,y,vx,vy,active_goal_index";
std::string trajectory_to_csv(const Trajectory& trajectory);

}  // namespace scoutnav::planner
