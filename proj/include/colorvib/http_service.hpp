#pragma once

// HTTP surface consumed by the browser stimulus UI.
//
//   GET  /api/session    config and schedule metadata
//   GET  /api/trial/{i}  colors to alternate for trial i
//   POST /api/response   {trial_index, detected, response_ms[, achieved_hz]} -> 204
//   GET  /api/report     analysis JSON once every trial is answered
//
// Errors are 4xx with {"error", "detail"}.

#include <memory>
#include <mutex>
#include <optional>
#include <string>

#include <json.hpp>

#include "colorvib/session.hpp"
#include "colorvib/session_store.hpp"

namespace httplib {
class Server;
}

namespace colorvib {

struct ApiResponse {
  int status = 200;
  nlohmann::json body;  // null for 204
};

struct ServiceOptions {
  double px_per_cm = 96.0 / 2.54;
  double suspect_threshold = kDefaultSuspectThreshold;
  std::string log_path;  // empty = in-memory only
};

// Owns one session. Mutations are serialized by a mutex so responses append
// atomically; reads work on snapshots.
class ExperimentService {
 public:
  ExperimentService(Schedule schedule, SessionRecord record, ServiceOptions options);

  ApiResponse get_session() const;
  ApiResponse get_trial(std::size_t index) const;
  ApiResponse post_response(const std::string& body);
  ApiResponse get_report() const;

  SessionRecord snapshot() const;
  const Schedule& schedule() const { return schedule_; }

 private:
  const Schedule schedule_;
  const ServiceOptions options_;
  mutable std::mutex mutex_;
  SessionRecord record_;
  std::unique_ptr<SessionLog> log_;
};

ApiResponse error_response(int status, const std::string& error, const std::string& detail);

// Routes the API onto `server`; static_dir, when non-empty, is mounted at "/".
void mount_api(httplib::Server& server, ExperimentService& service, const std::string& static_dir);

}  // namespace colorvib
