#include "scoutnav/service/server.hpp"

#include <httplib.h>

#include <json.hpp>

#include "scoutnav/errors.hpp"
#include "scoutnav/raster_io.hpp"

namespace scoutnav::service {

using nlohmann::json;

namespace {

void reply_json(httplib::Response& res, int status, const json& body) {
  res.status = status;
  res.set_content(body.dump(), "application/json");
}

void reply_error(httplib::Response& res, int status, const std::string& kind, const std::string& message) {
  reply_json(res, status, {{"error", message}, {"kind", kind}});
}

json points_json(const std::vector<Vec2>& pts) {
  json out = json::array();
  for (const auto& p : pts) out.push_back({{"x", p.x}, {"y", p.y}});
  return out;
}

json header_json(const GridHeader& g) {
  return {{"width", g.width}, {"height", g.height}, {"cell_size", g.cell_size},
          {"origin", {{"x", g.origin.x}, {"y", g.origin.y}}}};
}

double number_or(const json& body, const char* key, double fallback) {
  if (!body.contains(key)) return fallback;
  if (!body[key].is_number()) throw InvalidInput(std::string("field '") + key + "' must be a number");
  return body[key].get<double>();
}

}  // namespace

mission::MissionConfig config_from_request(const std::string& text, SessionOptions* options) {
  json body = json::object();
  if (!text.empty()) {
    try {
      body = json::parse(text);
    } catch (const json::exception& e) {
      throw InvalidInput(std::string("malformed JSON: ") + e.what());
    }
  }
  if (!body.is_object()) throw InvalidInput("request body must be a JSON object");
  const std::string preset = body.value("preset", std::string("ames"));
  auto config = mission::preset_by_name(preset);
  if (body.contains("seed")) {
    if (!body["seed"].is_number_unsigned()) throw InvalidInput("field 'seed' must be a non-negative integer");
    config.seed = body["seed"].get<std::uint64_t>();
  }
  if (body.contains("payload_kg")) {
    const double m = number_or(body, "payload_kg", 0.0);
    if (config.wheel) config.wheel->payload_kg = m;
    if (config.rhex) config.rhex->planning_payload_kg = m;
  }
  config.risk_threshold = number_or(body, "risk_threshold", config.risk_threshold);
  config.kernel.length_scale = number_or(body, "length_scale", config.kernel.length_scale);
  config.kernel.noise_floor = number_or(body, "noise", config.kernel.noise_floor);
  config.kernel.constant = number_or(body, "constant", config.kernel.constant);
  if (options) {
    options->steps_per_second = number_or(body, "steps_per_second", options->steps_per_second);
    const double every = number_or(body, "map_every", static_cast<double>(options->map_every));
    if (!(every >= 1.0)) throw InvalidInput("field 'map_every' must be at least 1");
    options->map_every = static_cast<std::size_t>(every);
  }
  config.validate();
  return config;
}

struct Server::Impl {
  SessionManager& sessions;
  httplib::Server http;

  explicit Impl(SessionManager& s) : sessions(s) { routes(); }

  std::shared_ptr<Session> session_or_404(const httplib::Request& req, httplib::Response& res) {
    auto s = sessions.find(req.matches[1]);
    if (!s) reply_error(res, 404, "unknown_session", "no session with id '" + std::string(req.matches[1]) + "'");
    return s;
  }

  void routes() {
    http.Post("/sessions", [this](const httplib::Request& req, httplib::Response& res) {
      try {
        SessionOptions options;
        auto config = config_from_request(req.body, &options);
        auto s = sessions.create(std::move(config), options);
        reply_json(res, 201, {{"id", s->id()}, {"preset", s->config().name}, {"steps_planned", s->planned_steps()}});
      } catch (const Error& e) {
        reply_error(res, 400, "invalid_config", e.what());
      }
    });

    http.Get(R"(/sessions/([^/]+)/state)", [this](const httplib::Request& req, httplib::Response& res) {
      auto s = session_or_404(req, res);
      if (!s) return;
      const auto snap = s->snapshot();
      json body = {{"id", s->id()},
                   {"preset", s->config().name},
                   {"status", to_string(s->status())},
                   {"steps", s->steps_emitted()},
                   {"steps_planned", s->planned_steps()},
                   {"map_version", snap ? snap->version : 0},
                   {"risk_layer", s->config().planning_layer_name()},
                   {"grid", header_json(s->config().map_grid)},
                   {"start", {{"x", s->config().start.x}, {"y", s->config().start.y}}},
                   {"targets", points_json(s->targets())}};
      if (snap) {
        json polys = json::array();
        for (const auto& p : snap->obstacles.polygons) polys.push_back(points_json(p));
        body["obstacles"] = polys;
      }
      if (const auto err = s->error(); !err.empty()) body["error"] = err;
      reply_json(res, 200, body);
    });

    http.Get(R"(/sessions/([^/]+)/map/([a-z]+))", [this](const httplib::Request& req, httplib::Response& res) {
      auto s = session_or_404(req, res);
      if (!s) return;
      const std::string layer = req.matches[2];
      const auto snap = s->snapshot();
      const ScalarRaster* raster = nullptr;
      if (snap) {
        if (layer == "mean") raster = &snap->map.mean;
        else if (layer == "variance") raster = &snap->map.variance;
        else if (layer == "fitness") raster = &snap->map.fitness;
        else if (layer == "risk") raster = &snap->risk.score;
      }
      if (layer != "mean" && layer != "variance" && layer != "fitness" && layer != "risk") {
        reply_error(res, 404, "unknown_layer", "layer must be mean, variance, fitness, or risk");
        return;
      }
      if (!raster) {
        reply_error(res, 409, "not_ready", "no map has been published yet");
        return;
      }
      res.set_header("X-Map-Version", std::to_string(snap->version));
      if (req.get_param_value("format") == "bin") {
        const auto bytes = io::raster_to_binary(*raster);
        res.set_content(std::string(bytes.begin(), bytes.end()), "application/octet-stream");
        return;
      }
      json body = header_json(raster->header());
      body["layer"] = layer;
      body["version"] = snap->version;
      body["steps"] = snap->steps;
      body["values"] = std::vector<double>(raster->values().begin(), raster->values().end());
      if (layer == "risk") {
        body["risk_layer"] = snap->risk_layer;
        body["hazard"] = std::vector<int>(snap->risk.hazard.values().begin(), snap->risk.hazard.values().end());
      }
      reply_json(res, 200, body);
    });

    http.Get(R"(/sessions/([^/]+)/events)", [this](const httplib::Request& req, httplib::Response& res) {
      auto s = session_or_404(req, res);
      if (!s) return;
      std::uint64_t cursor = 0;
      if (req.has_header("Last-Event-ID")) {
        try {
          cursor = std::stoull(req.get_header_value("Last-Event-ID"));
        } catch (const std::exception&) {
          cursor = 0;
        }
      }
      res.set_header("Cache-Control", "no-cache");
      res.set_chunked_content_provider(
          "text/event-stream", [s, cursor](std::size_t, httplib::DataSink& sink) mutable {
            bool finished = false;
            const auto events = s->events_after(cursor, std::chrono::milliseconds(250), &finished);
            for (const auto& e : events) {
              const std::string frame =
                  "id: " + std::to_string(e.id) + "\nevent: " + e.type + "\ndata: " + e.data + "\n\n";
              if (!sink.write(frame.data(), frame.size())) return false;
              cursor = e.id;
            }
            if (finished && events.empty()) sink.done();
            return true;
          });
    });

    http.Post(R"(/sessions/([^/]+)/targets)", [this](const httplib::Request& req, httplib::Response& res) {
      auto s = session_or_404(req, res);
      if (!s) return;
      const auto body = json::parse(req.body, nullptr, false);
      if (body.is_discarded()) {
        reply_error(res, 400, "invalid_target", "malformed JSON");
        return;
      }
      if (!body.is_object() || !body.contains("x") || !body.contains("y") || !body["x"].is_number() ||
          !body["y"].is_number()) {
        reply_error(res, 400, "invalid_target", "target must be an object with numeric x and y");
        return;
      }
      try {
        const auto targets = s->add_target({body["x"].get<double>(), body["y"].get<double>()});
        reply_json(res, 200, {{"targets", points_json(targets)}});
      } catch (const HazardTargetError& e) {
        reply_error(res, 422, "hazard_target", e.what());
      } catch (const OutOfBounds& e) {
        reply_error(res, 400, "out_of_bounds", e.what());
      } catch (const InvalidInput& e) {
        reply_error(res, 409, "not_ready", e.what());
      }
    });

    http.Post(R"(/sessions/([^/]+)/plan)", [this](const httplib::Request& req, httplib::Response& res) {
      auto s = session_or_404(req, res);
      if (!s) return;
      try {
        const auto reply = s->request_plan();
        json states = json::array();
        for (const auto& st : reply.trajectory.states) {
          states.push_back({{"t", st.t}, {"x", st.position.x}, {"y", st.position.y},
                            {"vx", st.velocity.x}, {"vy", st.velocity.y}, {"goal", st.goal_index}});
        }
        json reached = json::array();
        for (bool b : reply.trajectory.goal_reached) reached.push_back(b);
        reply_json(res, 200, {{"version", reply.version},
                              {"targets", points_json(reply.targets)},
                              {"termination", planner::to_string(reply.trajectory.termination)},
                              {"goal_reached", reached},
                              {"states", states}});
      } catch (const Error& e) {
        reply_error(res, 400, "plan_rejected", e.what());
      }
    });
  }
};

Server::Server(SessionManager& sessions) : impl_(std::make_unique<Impl>(sessions)) {}
Server::~Server() { stop(); }

int Server::bind(const std::string& host, int port) {
  const int bound = port == 0 ? impl_->http.bind_to_any_port(host) : (impl_->http.bind_to_port(host, port) ? port : -1);
  if (bound <= 0) throw Error("could not bind " + host + ":" + std::to_string(port));
  return bound;
}

void Server::serve() { impl_->http.listen_after_bind(); }
void Server::stop() {
  impl_->sessions.cancel_all();
  impl_->http.stop();
}
bool Server::running() const { return impl_->http.is_running(); }

}  // namespace scoutnav::service
