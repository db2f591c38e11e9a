#include <gtest/gtest.h>

#include <chrono>
#include <thread>

#include "scoutnav/errors.hpp"
#include "scoutnav/mission/mission.hpp"
#include "scoutnav/raster_io.hpp"
#include "scoutnav/service/server.hpp"
#include "scoutnav/service/session.hpp"

// After Eigen: httplib pulls in <resolv.h>, whose _res macro clashes with it.
#include <httplib.h>

#include <json.hpp>

namespace {

using namespace scoutnav;
using namespace scoutnav::service;
using nlohmann::json;
using namespace std::chrono_literals;

std::vector<StreamEvent> all_events(const Session& s) {
  bool finished = false;
  auto ev = s.events_after(0, 0ms, &finished);
  EXPECT_TRUE(finished);
  return ev;
}

// A hazard cell centre of the snapshot's planning layer.
std::optional<Vec2> hazard_point(const Snapshot& snap) {
  const auto& g = snap.risk.header();
  for (std::size_t r = 0; r < g.height; ++r) {
    for (std::size_t c = 0; c < g.width; ++c) {
      const Vec2 p = g.cell_center({c, r});
      if (snap.risk.hazard.at(c, r) && planner::inside_any(p, snap.obstacles)) return p;
    }
  }
  return std::nullopt;
}

TEST(Session, StreamsEveryStepAndMatchesTheBatchRun) {
  SessionManager mgr;
  SessionOptions opt;
  opt.map_every = 50;
  const auto s = mgr.create(mission::ames_preset(), opt);
  s->wait();
  EXPECT_EQ(s->status(), SessionStatus::kCompleted);
  EXPECT_EQ(s->error(), "");
  EXPECT_EQ(s->planned_steps(), 240u);
  EXPECT_EQ(s->steps_emitted(), 240u);

  const auto ev = all_events(*s);
  std::size_t steps = 0, maps = 0;
  for (std::size_t k = 0; k < ev.size(); ++k) {
    EXPECT_EQ(ev[k].id, k + 1);
    const auto data = json::parse(ev[k].data);
    if (ev[k].type == "step") {
      EXPECT_EQ(data["index"].get<std::size_t>(), steps);
      ++steps;
    } else if (ev[k].type == "map") {
      ++maps;
      EXPECT_EQ(data["version"].get<std::uint64_t>(), maps);
    }
  }
  EXPECT_EQ(steps, 240u);
  EXPECT_EQ(maps, 5u);
  EXPECT_EQ(ev.back().type, "done");
  EXPECT_EQ(json::parse(ev.back().data)["status"], "completed");

  const auto snap = s->snapshot();
  ASSERT_TRUE(snap);
  EXPECT_EQ(snap->version, 5u);
  EXPECT_EQ(snap->steps, 240u);
  const auto batch = mission::run_mission(mission::ames_preset());
  EXPECT_EQ(snap->map, batch.map);
  EXPECT_EQ(snap->risk.score, batch.planning_risk().score);
  EXPECT_EQ(snap->obstacles, batch.plan.obstacles);

  // Later readers see the same stream.
  EXPECT_EQ(s->events_after(ev.size() - 2, 0ms).size(), 2u);
  EXPECT_TRUE(s->events_after(ev.size(), 0ms).empty());
}

TEST(Session, TargetsAndPlans) {
  SessionManager mgr;
  const auto cfg = mission::whitesands_preset();
  const auto s = mgr.create(cfg, SessionOptions{});
  s->wait();
  const auto snap = s->snapshot();
  ASSERT_TRUE(snap);

  EXPECT_THROW(s->request_plan(), InvalidInput);
  EXPECT_THROW(s->add_target({50.0, 1.0}), OutOfBounds);
  const auto bad = hazard_point(*snap);
  ASSERT_TRUE(bad.has_value());
  EXPECT_THROW(s->add_target(*bad), HazardTargetError);
  EXPECT_TRUE(s->targets().empty());

  for (const auto& g : cfg.goals) s->add_target(g);
  EXPECT_EQ(s->targets(), cfg.goals);
  const auto reply = s->request_plan();
  EXPECT_EQ(reply.version, snap->version);
  const auto direct = planner::simulate_path(cfg.start, cfg.goals, snap->obstacles, cfg.planner);
  EXPECT_EQ(reply.trajectory, direct);
  EXPECT_TRUE(reply.trajectory.reached_all());
}

TEST(Session, TargetsBeforeAnyMapAreRejected) {
  SessionManager mgr;
  SessionOptions opt;
  opt.steps_per_second = 1.0;
  const auto s = mgr.create(mission::ames_preset(), opt);
  EXPECT_FALSE(s->snapshot());
  EXPECT_THROW(s->add_target({1.0, 1.0}), InvalidInput);
  EXPECT_THROW(s->request_plan(), InvalidInput);
  s->cancel();
  s->wait();
  EXPECT_EQ(s->status(), SessionStatus::kCancelled);
  EXPECT_EQ(all_events(*s).back().type, "done");
}

TEST(Session, BadOptionsAreRejected) {
  SessionOptions opt;
  opt.map_every = 0;
  EXPECT_THROW(Session("x", mission::ames_preset(), opt), InvalidInput);
  opt = {};
  opt.steps_per_second = -1.0;
  EXPECT_THROW(Session("x", mission::ames_preset(), opt), InvalidInput);
}

TEST(Config, RequestFields) {
  SessionOptions opt;
  const auto c = config_from_request(
      R"({"preset":"whitesands","seed":9,"payload_kg":30,"risk_threshold":0.8,"length_scale":1,"map_every":7})", &opt);
  EXPECT_EQ(c.name, "whitesands");
  EXPECT_EQ(c.seed, 9u);
  EXPECT_EQ(c.wheel->payload_kg, 30.0);
  EXPECT_EQ(c.risk_threshold, 0.8);
  EXPECT_EQ(c.kernel.length_scale, 1.0);
  EXPECT_EQ(opt.map_every, 7u);
  EXPECT_EQ(config_from_request("", nullptr).name, "ames");
  EXPECT_THROW(config_from_request("{", nullptr), InvalidInput);
  EXPECT_THROW(config_from_request("[]", nullptr), InvalidInput);
  EXPECT_THROW(config_from_request(R"({"preset":"mars"})", nullptr), InvalidInput);
  EXPECT_THROW(config_from_request(R"({"seed":-1})", nullptr), InvalidInput);
  EXPECT_THROW(config_from_request(R"({"length_scale":"wide"})", nullptr), InvalidInput);
  EXPECT_THROW(config_from_request(R"({"length_scale":0})", nullptr), InvalidInput);
}

class HttpTest : public ::testing::Test {
 protected:
  void SetUp() override {
    server_ = std::make_unique<Server>(sessions_);
    port_ = server_->bind("127.0.0.1", 0);
    thread_ = std::thread([this] { server_->serve(); });
    for (int i = 0; i < 500 && !server_->running(); ++i) std::this_thread::sleep_for(2ms);
    ASSERT_TRUE(server_->running());
    client_ = std::make_unique<httplib::Client>("127.0.0.1", port_);
    client_->set_read_timeout(30, 0);
  }
  void TearDown() override {
    server_->stop();
    if (thread_.joinable()) thread_.join();
  }

  json post(const std::string& path, const std::string& body, int expect) {
    auto r = client_->Post(path, body, "application/json");
    EXPECT_TRUE(r);
    if (!r) return {};
    EXPECT_EQ(r->status, expect) << path << " " << r->body;
    return json::parse(r->body);
  }
  json get(const std::string& path, int expect) {
    auto r = client_->Get(path);
    EXPECT_TRUE(r);
    if (!r) return {};
    EXPECT_EQ(r->status, expect) << path << " " << r->body;
    return json::parse(r->body);
  }

  SessionManager sessions_;
  std::unique_ptr<Server> server_;
  std::thread thread_;
  std::unique_ptr<httplib::Client> client_;
  int port_ = 0;
};

TEST_F(HttpTest, FullSessionOverHttp) {
  const auto created = post("/sessions", R"({"preset":"whitesands","map_every":40})", 201);
  const auto id = created["id"].get<std::string>();
  EXPECT_EQ(created["preset"], "whitesands");
  const auto planned = created["steps_planned"].get<std::size_t>();
  sessions_.find(id)->wait();

  const auto state = get("/sessions/" + id + "/state", 200);
  EXPECT_EQ(state["status"], "completed");
  EXPECT_EQ(state["steps"].get<std::size_t>(), sessions_.find(id)->steps_emitted());
  EXPECT_LE(state["steps"].get<std::size_t>(), planned);
  EXPECT_EQ(state["risk_layer"], "wheel_20kg");
  EXPECT_EQ(state["grid"]["width"], 20);
  EXPECT_EQ(state["grid"]["height"], 30);
  EXPECT_GE(state["obstacles"].size(), 1u);

  const auto snap = sessions_.find(id)->snapshot();
  for (const char* layer : {"mean", "variance", "fitness", "risk"}) {
    const auto m = get("/sessions/" + id + "/map/" + layer, 200);
    EXPECT_EQ(m["layer"], layer);
    EXPECT_EQ(m["values"].size(), 600u);
    EXPECT_EQ(m["version"].get<std::uint64_t>(), snap->version);
  }
  const auto mean = get("/sessions/" + id + "/map/mean", 200);
  EXPECT_EQ(mean["values"][17].get<double>(), snap->map.mean.values()[17]);
  const auto risk = get("/sessions/" + id + "/map/risk", 200);
  EXPECT_EQ(risk["hazard"].size(), 600u);
  auto bin = client_->Get("/sessions/" + id + "/map/variance?format=bin");
  ASSERT_TRUE(bin);
  EXPECT_EQ(bin->status, 200);
  const auto expected = io::raster_to_binary(snap->map.variance);
  EXPECT_EQ(bin->body, std::string(expected.begin(), expected.end()));
  EXPECT_EQ(bin->get_header_value("X-Map-Version"), std::to_string(snap->version));
  EXPECT_EQ(get("/sessions/" + id + "/map/slope", 404)["kind"], "unknown_layer");

  // Targets: hazard, outside, malformed, then the two mission goals.
  const auto bad = hazard_point(*snap);
  ASSERT_TRUE(bad.has_value());
  EXPECT_EQ(post("/sessions/" + id + "/targets", json{{"x", bad->x}, {"y", bad->y}}.dump(), 422)["kind"],
            "hazard_target");
  EXPECT_EQ(post("/sessions/" + id + "/targets", R"({"x":-4,"y":1})", 400)["kind"], "out_of_bounds");
  EXPECT_EQ(post("/sessions/" + id + "/targets", R"({"x":"a"})", 400)["kind"], "invalid_target");
  EXPECT_EQ(post("/sessions/" + id + "/targets", "{", 400)["kind"], "invalid_target");
  EXPECT_EQ(post("/sessions/" + id + "/plan", "", 400)["kind"], "plan_rejected");
  const auto cfg = mission::whitesands_preset();
  json targets;
  for (const auto& g : cfg.goals) targets = post("/sessions/" + id + "/targets", json{{"x", g.x}, {"y", g.y}}.dump(), 200);
  EXPECT_EQ(targets["targets"].size(), 2u);

  const auto plan = post("/sessions/" + id + "/plan", "", 200);
  const auto direct = sessions_.find(id)->request_plan();
  EXPECT_EQ(plan["termination"], "reached_all_goals");
  EXPECT_EQ(plan["version"].get<std::uint64_t>(), direct.version);
  ASSERT_EQ(plan["states"].size(), direct.trajectory.states.size());
  const auto& last = plan["states"].back();
  EXPECT_EQ(last["x"].get<double>(), direct.trajectory.states.back().position.x);
  EXPECT_EQ(last["t"].get<double>(), direct.trajectory.states.back().t);

  // The event stream replays everything and closes after "done".
  auto events = client_->Get("/sessions/" + id + "/events");
  ASSERT_TRUE(events);
  EXPECT_EQ(events->status, 200);
  std::size_t step_frames = 0, pos = 0;
  while ((pos = events->body.find("event: step\n", pos)) != std::string::npos) {
    ++step_frames;
    ++pos;
  }
  EXPECT_EQ(step_frames, state["steps"].get<std::size_t>());
  EXPECT_NE(events->body.find("event: done\n"), std::string::npos);
  // Resuming after the last id yields nothing new but "done".
  httplib::Headers resume{{"Last-Event-ID", std::to_string(all_events(*sessions_.find(id)).size() - 1)}};
  auto tail = client_->Get("/sessions/" + id + "/events", resume);
  ASSERT_TRUE(tail);
  EXPECT_EQ(tail->body.find("event: step"), std::string::npos);
  EXPECT_NE(tail->body.find("event: done"), std::string::npos);
}

TEST_F(HttpTest, ErrorsBeforeTheFirstMap) {
  const auto created = post("/sessions", R"({"preset":"ames","steps_per_second":1})", 201);
  const auto id = created["id"].get<std::string>();
  EXPECT_EQ(get("/sessions/" + id + "/map/mean", 409)["kind"], "not_ready");
  EXPECT_EQ(post("/sessions/" + id + "/targets", R"({"x":1,"y":1})", 409)["kind"], "not_ready");
  EXPECT_EQ(post("/sessions/" + id + "/plan", "", 400)["kind"], "plan_rejected");
  const auto state = get("/sessions/" + id + "/state", 200);
  EXPECT_EQ(state["map_version"], 0);
  EXPECT_FALSE(state.contains("obstacles"));
}

TEST_F(HttpTest, UnknownSessionsAndBadConfigs) {
  EXPECT_EQ(get("/sessions/s99/state", 404)["kind"], "unknown_session");
  EXPECT_EQ(get("/sessions/s99/map/mean", 404)["kind"], "unknown_session");
  EXPECT_EQ(post("/sessions/s99/targets", R"({"x":1,"y":1})", 404)["kind"], "unknown_session");
  EXPECT_EQ(post("/sessions/s99/plan", "", 404)["kind"], "unknown_session");
  EXPECT_EQ(post("/sessions", R"({"preset":"mars"})", 400)["kind"], "invalid_config");
  EXPECT_EQ(post("/sessions", "not json", 400)["kind"], "invalid_config");
}

}  // namespace
