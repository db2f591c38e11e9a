#pragma once

#include <atomic>
#include <chrono>
#include <condition_variable>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

#include "scoutnav/mapping/terrain_map.hpp"
#include "scoutnav/mission/config.hpp"
#include "scoutnav/planner/potential_field.hpp"
#include "scoutnav/risk.hpp"

namespace scoutnav::service {

struct SessionOptions {
  double steps_per_second = 0.0;  ///< 0 runs unthrottled
  std::size_t map_every = 20;     ///< steps between map and risk refreshes
};

/// Everything a reader may combine, published together under one version.
struct Snapshot {
  std::uint64_t version = 0;
  std::size_t steps = 0;
  mapping::TerrainMap map;
  std::string risk_layer;
  RiskLayer risk;
  planner::ObstacleSet obstacles;
};

struct StreamEvent {
  std::uint64_t id = 0;  ///< 1-based, dense
  std::string type;      ///< "step", "map", "done"
  std::string data;      ///< JSON object
};

enum class SessionStatus { kRunning, kCompleted, kFailed, kCancelled };
const char* to_string(SessionStatus s);

/// Planned trajectory tagged with the snapshot it was computed against.
struct PlanReply {
  std::uint64_t version = 0;
  std::vector<Vec2> targets;
  planner::Trajectory trajectory;
};

/// One mission run fronted for live readers.
///
/// A single writer thread scouts, refits, and publishes snapshots; readers
/// take the current snapshot pointer and never wait on the writer's work.
class Session {
 public:
  Session(std::string id, mission::MissionConfig config, SessionOptions options);
  ~Session();
  Session(const Session&) = delete;
  Session& operator=(const Session&) = delete;

  void start();
  void cancel();
  /// Blocks until the writer has finished.
  void wait() const;

  const std::string& id() const { return id_; }
  const mission::MissionConfig& config() const { return config_; }
  const SessionOptions& options() const { return options_; }
  std::size_t planned_steps() const { return planned_steps_; }

  SessionStatus status() const;
  std::string error() const;
  std::size_t steps_emitted() const;

  /// Latest published snapshot, or null before the first map.
  std::shared_ptr<const Snapshot> snapshot() const;

  /// Events with id > after.  Waits up to `timeout` when none are pending;
  /// `finished` is set once the stream will never grow again.
  std::vector<StreamEvent> events_after(std::uint64_t after, std::chrono::milliseconds timeout,
                                        bool* finished = nullptr) const;

  /// Adds an operator target.  Throws OutOfBounds outside the map,
  /// HazardTargetError inside a hazard polygon of the current snapshot, and
  /// InvalidInput before any map exists.
  std::vector<Vec2> add_target(Vec2 p);
  std::vector<Vec2> targets() const;

  /// Plans from the mission start through the current targets on the current
  /// obstacles.  Throws InvalidInput with no targets or no map.
  PlanReply request_plan() const;

 private:
  void run();
  void publish(std::shared_ptr<const Snapshot> snap);
  void push_event(std::string type, std::string data);

  const std::string id_;
  const mission::MissionConfig config_;
  const SessionOptions options_;
  std::size_t planned_steps_ = 0;

  mutable std::mutex snapshot_mutex_;  // guards only the pointer swap
  std::shared_ptr<const Snapshot> snapshot_;

  mutable std::mutex events_mutex_;
  mutable std::condition_variable events_cv_;
  std::vector<StreamEvent> events_;
  bool finished_ = false;
  SessionStatus status_ = SessionStatus::kRunning;
  std::string error_;
  std::size_t steps_emitted_ = 0;

  mutable std::mutex targets_mutex_;
  std::vector<Vec2> targets_;

  std::atomic<bool> cancel_{false};
  std::thread writer_;
};

/// Owns sessions by id ("s1", "s2", ...).
class SessionManager {
 public:
  std::shared_ptr<Session> create(mission::MissionConfig config, SessionOptions options);
  std::shared_ptr<Session> find(const std::string& id) const;
  void cancel_all();

 private:
  mutable std::mutex mutex_;
  std::map<std::string, std::shared_ptr<Session>> sessions_;
  std::uint64_t next_id_ = 1;
};

}  // namespace scoutnav::service
