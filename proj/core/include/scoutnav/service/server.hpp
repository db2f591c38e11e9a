#pragma once

#include <memory>
#include <string>

#include "scoutnav/service/session.hpp"

namespace scoutnav::service {

/// HTTP front end over a SessionManager.
///
///   POST /sessions                      start a run
///   GET  /sessions/{id}/state           summary
///   GET  /sessions/{id}/map/{layer}     mean | variance | fitness | risk; ?format=bin for binary
///   GET  /sessions/{id}/events          server-sent step and map events
///   POST /sessions/{id}/targets         add an operator target
///   POST /sessions/{id}/plan            plan through the current targets
class Server {
 public:
  explicit Server(SessionManager& sessions);
  ~Server();
  Server(const Server&) = delete;
  Server& operator=(const Server&) = delete;

  /// Binds; port 0 picks a free port.  Returns the bound port, throws Error on failure.
  int bind(const std::string& host, int port);
  /// Serves until stop(); call after bind().
  void serve();
  void stop();
  /// True once serve() is accepting connections.
  bool running() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

/// Mission configuration for a POST /sessions body (preset, seed,
/// payload_kg, risk_threshold, length_scale, noise, constant).
mission::MissionConfig config_from_request(const std::string& body, SessionOptions* options);

}  // namespace scoutnav::service
