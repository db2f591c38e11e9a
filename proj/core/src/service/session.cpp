#include "scoutnav/service/session.hpp"

#include <json.hpp>

#include "scoutnav/errors.hpp"
#include "scoutnav/mission/scout.hpp"

namespace scoutnav::service {

using nlohmann::json;

const char* to_string(SessionStatus s) {
  switch (s) {
    case SessionStatus::kRunning: return "running";
    case SessionStatus::kCompleted: return "completed";
    case SessionStatus::kFailed: return "failed";
    case SessionStatus::kCancelled: return "cancelled";
  }
  return "unknown";
}

Session::Session(std::string id, mission::MissionConfig config, SessionOptions options)
    : id_(std::move(id)), config_(std::move(config)), options_(options) {
  config_.validate();
  if (options_.map_every == 0) throw InvalidInput("map refresh cadence must be positive");
  if (!(options_.steps_per_second >= 0.0)) throw InvalidInput("steps per second must be non-negative");
  planned_steps_ = mission::scout_positions(config_.scout).size();
}

Session::~Session() {
  cancel();
  if (writer_.joinable()) writer_.join();
}

void Session::start() {
  if (writer_.joinable()) return;
  writer_ = std::thread([this] { run(); });
}

void Session::cancel() {
  cancel_ = true;
  events_cv_.notify_all();
}

void Session::wait() const {
  std::unique_lock lock(events_mutex_);
  events_cv_.wait(lock, [&] { return finished_; });
}

SessionStatus Session::status() const {
  std::lock_guard lock(events_mutex_);
  return status_;
}

std::string Session::error() const {
  std::lock_guard lock(events_mutex_);
  return error_;
}

std::size_t Session::steps_emitted() const {
  std::lock_guard lock(events_mutex_);
  return steps_emitted_;
}

std::shared_ptr<const Snapshot> Session::snapshot() const {
  std::lock_guard lock(snapshot_mutex_);
  return snapshot_;
}

void Session::publish(std::shared_ptr<const Snapshot> snap) {
  std::lock_guard lock(snapshot_mutex_);
  snapshot_ = std::move(snap);
}

void Session::push_event(std::string type, std::string data) {
  {
    std::lock_guard lock(events_mutex_);
    if (type == "step") ++steps_emitted_;
    events_.push_back({events_.size() + 1, std::move(type), std::move(data)});
  }
  events_cv_.notify_all();
}

std::vector<StreamEvent> Session::events_after(std::uint64_t after, std::chrono::milliseconds timeout,
                                               bool* finished) const {
  std::unique_lock lock(events_mutex_);
  events_cv_.wait_for(lock, timeout, [&] { return events_.size() > after || finished_; });
  std::vector<StreamEvent> out;
  if (events_.size() > after) out.assign(events_.begin() + static_cast<std::ptrdiff_t>(after), events_.end());
  if (finished) *finished = finished_;
  return out;
}

void Session::run() {
  SessionStatus final_status = SessionStatus::kCompleted;
  std::string failure;
  try {
    const auto positions = mission::scout_positions(config_.scout);
    mapping::TerrainMapper mapper(config_.kernel, config_.fitness_kernel);
    std::vector<proprioception::StepMeasurement> batch;
    std::uint64_t version = 0;
    std::size_t emitted = 0;

    auto refresh = [&] {
      mapper.ingest(batch);
      batch.clear();
      auto snap = std::make_shared<Snapshot>();
      snap->version = ++version;
      snap->steps = mapper.steps().size();
      snap->map = mapper.rasterize(config_.map_grid);
      snap->risk_layer = config_.planning_layer_name();
      if (config_.planning_platform() == mission::PlanningPlatform::kWheel) {
        snap->risk = wheel::wheel_risk_map(snap->map.mean, config_.wheel->params(), config_.wheel->slip_threshold);
      } else {
        snap->risk = rhex::rhex_risk_map(snap->map.mean, rhex::RhexParams::field(config_.rhex->planning_payload_kg),
                                         config_.rhex->slip_threshold);
      }
      snap->obstacles = planner::threshold_obstacles(snap->risk.score, config_.risk_threshold);
      const json payload = {{"version", snap->version},
                            {"steps", snap->steps},
                            {"obstacles", snap->obstacles.polygons.size()}};
      publish(std::move(snap));
      push_event("map", payload.dump());
    };

    const auto t0 = std::chrono::steady_clock::now();
    for (std::size_t i = 0; i < positions.size(); ++i) {
      if (options_.steps_per_second > 0.0) {
        const auto due = t0 + std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                                  std::chrono::duration<double>(static_cast<double>(i) / options_.steps_per_second));
        std::unique_lock lock(events_mutex_);
        events_cv_.wait_until(lock, due, [&] { return cancel_.load(); });
      }
      if (cancel_) {
        final_status = SessionStatus::kCancelled;
        break;
      }
      auto m = mission::scout_step(config_.scout, config_.truth, config_.seed, i);
      if (!m) continue;
      batch.push_back(*m);
      const json step = {{"index", emitted++},
                         {"plan_index", i},
                         {"t", m->time_s},
                         {"x", m->position.x},
                         {"y", m->position.y},
                         {"alpha_z", m->estimate.alpha_z},
                         {"r_squared", m->estimate.r_squared},
                         {"n_samples", m->estimate.n_samples}};
      push_event("step", step.dump());
      if (batch.size() == options_.map_every) refresh();
    }
    if (!batch.empty() && final_status != SessionStatus::kCancelled) refresh();
  } catch (const std::exception& e) {
    final_status = SessionStatus::kFailed;
    failure = e.what();
  }

  {
    std::lock_guard lock(events_mutex_);
    json done = {{"status", to_string(final_status)}, {"steps", steps_emitted_}};
    if (!failure.empty()) done["error"] = failure;
    events_.push_back({events_.size() + 1, "done", done.dump()});
    status_ = final_status;
    error_ = failure;
    finished_ = true;
  }
  events_cv_.notify_all();
}

std::vector<Vec2> Session::add_target(Vec2 p) {
  const auto snap = snapshot();
  if (!snap) throw InvalidInput("no map has been published yet");
  if (!snap->map.header().contains(p)) throw OutOfBounds("target lies outside the map");
  if (planner::inside_any(p, snap->obstacles)) {
    throw HazardTargetError("target lies inside a hazard polygon of map version " + std::to_string(snap->version));
  }
  std::lock_guard lock(targets_mutex_);
  targets_.push_back(p);
  return targets_;
}

std::vector<Vec2> Session::targets() const {
  std::lock_guard lock(targets_mutex_);
  return targets_;
}

PlanReply Session::request_plan() const {
  const auto snap = snapshot();
  if (!snap) throw InvalidInput("no map has been published yet");
  PlanReply reply;
  reply.targets = targets();
  if (reply.targets.empty()) throw InvalidInput("no targets to plan to");
  reply.version = snap->version;
  reply.trajectory = planner::simulate_path(config_.start, reply.targets, snap->obstacles, config_.planner);
  return reply;
}

std::shared_ptr<Session> SessionManager::create(mission::MissionConfig config, SessionOptions options) {
  std::lock_guard lock(mutex_);
  const auto id = "s" + std::to_string(next_id_);
  auto session = std::make_shared<Session>(id, std::move(config), options);
  ++next_id_;
  sessions_[id] = session;
  session->start();
  return session;
}

std::shared_ptr<Session> SessionManager::find(const std::string& id) const {
  std::lock_guard lock(mutex_);
  const auto it = sessions_.find(id);
  return it == sessions_.end() ? nullptr : it->second;
}

void SessionManager::cancel_all() {
  std::lock_guard lock(mutex_);
  for (auto& [id, s] : sessions_) s->cancel();
}

}  // namespace scoutnav::service
