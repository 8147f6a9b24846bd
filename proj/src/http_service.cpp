#include "colorvib/http_service.hpp"

#include <httplib.h>

#include <algorithm>
#include <vector>

#include "colorvib/config.hpp"
#include "colorvib/serialize.hpp"

namespace colorvib {

using nlohmann::json;

ApiResponse error_response(int status, const std::string& error, const std::string& detail) {
  return {status, json{{"error", error}, {"detail", detail}}};
}

namespace {

int status_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::kIndexOutOfRange: return 404;
    case ErrorCode::kDuplicateResponse:
    case ErrorCode::kIncompleteSession: return 409;
    case ErrorCode::kIo: return 500;
    default: return 400;
  }
}

ApiResponse from_error(const Error& e) {
  return error_response(status_for(e.code()), error_name(e.code()), e.what());
}

}  // namespace

ExperimentService::ExperimentService(Schedule schedule, SessionRecord record, ServiceOptions options)
    : schedule_(std::move(schedule)), options_(std::move(options)), record_(std::move(record)) {
  if (record_.trial_count != schedule_.trials.size() ||
      record_.schedule_ref.schedule_hash != schedule_hash(schedule_)) {
    throw Error(ErrorCode::kInvalidArgument, "session record does not match the schedule");
  }
  if (!options_.log_path.empty()) {
    log_ = std::make_unique<SessionLog>();
    record_ = log_->open(options_.log_path, record_);
  }
}

SessionRecord ExperimentService::snapshot() const {
  std::lock_guard lock(mutex_);
  return record_;
}

ApiResponse ExperimentService::get_session() const {
  const SessionRecord rec = snapshot();
  std::vector<bool> answered(rec.trial_count, false);
  for (const auto& r : rec.responses) answered[r.trial_index] = true;
  const auto next = std::find(answered.begin(), answered.end(), false);
  const auto& p = schedule_.presentation;
  return {200, json{{"schema_version", kSchemaVersion},
                    {"schedule_hash", rec.schedule_ref.schedule_hash},
                    {"participant_label", rec.participant_label},
                    {"trial_count", rec.trial_count},
                    {"answered", rec.responses.size()},
                    {"completed", rec.completed},
                    {"next_trial", next == answered.end()
                                       ? json(nullptr)
                                       : json(static_cast<std::size_t>(next - answered.begin()))},
                    {"alternation_hz", p.alternation_hz},
                    {"square_cm", p.square_cm},
                    {"distance_cm", p.distance_cm},
                    {"px_per_cm", options_.px_per_cm},
                    {"square_px", square_px(p, options_.px_per_cm)}}};
}

ApiResponse ExperimentService::get_trial(std::size_t index) const {
  if (index >= schedule_.trials.size()) {
    return error_response(404, error_name(ErrorCode::kIndexOutOfRange),
                          "no trial " + std::to_string(index));
  }
  const Trial& t = schedule_.trials[index];
  EncodedSRGB plus, minus;
  if (const auto* pair = std::get_if<ColorVibrationPair>(&t.stimulus)) {
    plus = pair->plus_srgb;
    minus = pair->minus_srgb;
  } else {
    plus = minus = std::get<EncodedSRGB>(t.stimulus);
  }
  return {200, json{{"trial_index", t.index},
                    {"trial_count", schedule_.trials.size()},
                    {"catch", t.kind() == TrialKind::kCatch},
                    {"plus", plus},
                    {"minus", minus},
                    {"break_after", t.break_after},
                    {"alternation_hz", schedule_.presentation.alternation_hz},
                    {"square_px", square_px(schedule_.presentation, options_.px_per_cm)}}};
}

ApiResponse ExperimentService::post_response(const std::string& body) {
  Response response;
  try {
    const json j = json::parse(body);
    if (!j.is_object()) return error_response(400, "BadRequest", "body must be a JSON object");
    response = j.get<Response>();
  } catch (const json::exception& e) {
    return error_response(400, "BadRequest", e.what());
  }
  try {
    std::lock_guard lock(mutex_);
    SessionRecord next = record_response(record_, response);
    if (log_) log_->append(response);
    record_ = std::move(next);
  } catch (const Error& e) {
    return from_error(e);
  }
  return {204, nullptr};
}

ApiResponse ExperimentService::get_report() const {
  const SessionRecord rec = snapshot();
  try {
    return {200, report_to_json(analyze_session(rec, schedule_, options_.suspect_threshold))};
  } catch (const Error& e) {
    return from_error(e);
  }
}

namespace {

void send(httplib::Response& res, const ApiResponse& api) {
  res.status = api.status;
  if (api.status != 204) res.set_content(api.body.dump(), "application/json");
}

}  // namespace

void mount_api(httplib::Server& server, ExperimentService& service, const std::string& static_dir) {
  server.Get("/api/session", [&service](const httplib::Request&, httplib::Response& res) {
    send(res, service.get_session());
  });
  server.Get(R"(/api/trial/(\d+))", [&service](const httplib::Request& req, httplib::Response& res) {
    std::size_t index = 0;
    try {
      index = std::stoull(req.matches[1].str());
    } catch (const std::exception&) {
      send(res, error_response(404, error_name(ErrorCode::kIndexOutOfRange), "bad trial index"));
      return;
    }
    send(res, service.get_trial(index));
  });
  server.Post("/api/response", [&service](const httplib::Request& req, httplib::Response& res) {
    send(res, service.post_response(req.body));
  });
  server.Get("/api/report", [&service](const httplib::Request&, httplib::Response& res) {
    send(res, service.get_report());
  });
  if (!static_dir.empty()) server.set_mount_point("/", static_dir);
}

}  // namespace colorvib
