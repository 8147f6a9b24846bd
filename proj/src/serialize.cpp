#include "colorvib/serialize.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

namespace colorvib {

using nlohmann::json;

void to_json(json& j, const Chromaticity& c) { j = json::array({c.x, c.y}); }
void from_json(const json& j, Chromaticity& c) {
  if (!j.is_array() || j.size() != 2) throw Error(ErrorCode::kFormat, "chromaticity must be [x, y]");
  c = {j[0].get<double>(), j[1].get<double>()};
}

void to_json(json& j, const EncodedSRGB& e) { j = json::array({e.r, e.g, e.b}); }
void from_json(const json& j, EncodedSRGB& e) {
  if (!j.is_array() || j.size() != 3) throw Error(ErrorCode::kFormat, "color must be [r, g, b]");
  std::uint8_t v[3];
  for (int i = 0; i < 3; ++i) {
    const int code = j[static_cast<std::size_t>(i)].get<int>();
    if (code < 0 || code > 255) throw Error(ErrorCode::kFormat, "color code outside [0, 255]");
    v[i] = static_cast<std::uint8_t>(code);
  }
  e = {v[0], v[1], v[2]};
}

void to_json(json& j, const ColorVibrationPair& p) {
  j = json{{"source_id", p.source_id}, {"r", p.r},
           {"Y", p.Y},                 {"plus_xy", p.plus_xy},
           {"minus_xy", p.minus_xy},   {"plus_srgb", p.plus_srgb},
           {"minus_srgb", p.minus_srgb}, {"fused_srgb", p.fused_srgb}};
}
void from_json(const json& j, ColorVibrationPair& p) {
  p.source_id = j.at("source_id").get<int>();
  p.r = j.at("r").get<double>();
  p.Y = j.at("Y").get<double>();
  p.plus_xy = j.at("plus_xy").get<Chromaticity>();
  p.minus_xy = j.at("minus_xy").get<Chromaticity>();
  p.plus_srgb = j.at("plus_srgb").get<EncodedSRGB>();
  p.minus_srgb = j.at("minus_srgb").get<EncodedSRGB>();
  p.fused_srgb = j.at("fused_srgb").get<EncodedSRGB>();
}

void to_json(json& j, const RejectedPair& p) {
  j = json{{"source_id", p.source_id}, {"r", p.r}, {"reason", p.reason}, {"detail", p.detail}};
}
void from_json(const json& j, RejectedPair& p) {
  p.source_id = j.at("source_id").get<int>();
  p.r = j.at("r").get<double>();
  p.reason = j.at("reason").get<std::string>();
  p.detail = j.value("detail", std::string{});
}

void to_json(json& j, const Trial& t) {
  j = json{{"index", t.index}, {"kind", kind_name(t.kind())}, {"break_after", t.break_after}};
  if (const auto* pair = std::get_if<ColorVibrationPair>(&t.stimulus)) {
    j["pair"] = *pair;
  } else {
    j["color"] = std::get<EncodedSRGB>(t.stimulus);
  }
}
void from_json(const json& j, Trial& t) {
  t.index = j.at("index").get<std::size_t>();
  t.break_after = j.at("break_after").get<bool>();
  const auto kind = j.at("kind").get<std::string>();
  if (kind == "vibration") {
    t.stimulus = j.at("pair").get<ColorVibrationPair>();
  } else if (kind == "catch") {
    t.stimulus = j.at("color").get<EncodedSRGB>();
  } else {
    throw Error(ErrorCode::kFormat, "unknown trial kind '" + kind + "'");
  }
}

void to_json(json& j, const Response& r) {
  j = json{{"trial_index", r.trial_index}, {"detected", r.detected}, {"response_ms", r.response_ms}};
  if (r.achieved_hz) j["achieved_hz"] = *r.achieved_hz;
}
void from_json(const json& j, Response& r) {
  r.trial_index = j.at("trial_index").get<std::size_t>();
  r.detected = j.at("detected").get<bool>();
  r.response_ms = j.value("response_ms", std::int64_t{0});
  r.achieved_hz.reset();
  if (j.contains("achieved_hz") && !j["achieved_hz"].is_null()) {
    r.achieved_hz = j["achieved_hz"].get<double>();
  }
}

namespace {

void check_schema(const json& j, const char* what) {
  if (!j.is_object()) throw Error(ErrorCode::kFormat, std::string(what) + " must be a JSON object");
  const int version = j.value("schema_version", 0);
  if (version != kSchemaVersion) {
    throw Error(ErrorCode::kFormat, std::string(what) + ": unsupported schema_version " +
                                        std::to_string(version));
  }
}

template <typename F>
auto rethrow_format(const char* what, F&& f) {
  try {
    return f();
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kFormat, std::string(what) + ": " + e.what());
  }
}

json number_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

}  // namespace

json stimulus_set_to_json(const StimulusSet& set) {
  json colors = json::array();
  for (std::size_t i = 0; i < set.color_ids.size(); ++i) {
    colors.push_back({{"id", set.color_ids[i]},
                      {"r_grid", i < set.r_grid.size() ? set.r_grid[i] : std::vector<double>{}}});
  }
  return json{{"schema_version", kSchemaVersion},
              {"Y", set.Y},
              {"colors", colors},
              {"pairs", set.pairs},
              {"rejected", set.rejected}};
}

StimulusSet stimulus_set_from_json(const json& j) {
  check_schema(j, "stimulus set");
  return rethrow_format("stimulus set", [&] {
    StimulusSet set;
    set.Y = j.at("Y").get<double>();
    for (const auto& c : j.at("colors")) {
      set.color_ids.push_back(c.at("id").get<int>());
      set.r_grid.push_back(c.at("r_grid").get<std::vector<double>>());
    }
    set.pairs = j.at("pairs").get<std::vector<ColorVibrationPair>>();
    set.rejected = j.at("rejected").get<std::vector<RejectedPair>>();
    return set;
  });
}

json schedule_to_json(const Schedule& schedule) {
  return json{{"schema_version", kSchemaVersion},
              {"seed", schedule.seed},
              {"alternation_hz", schedule.presentation.alternation_hz},
              {"square_cm", schedule.presentation.square_cm},
              {"distance_cm", schedule.presentation.distance_cm},
              {"trials", schedule.trials}};
}

Schedule schedule_from_json(const json& j) {
  check_schema(j, "schedule");
  return rethrow_format("schedule", [&] {
    Schedule s;
    s.seed = j.at("seed").get<std::uint64_t>();
    s.presentation.alternation_hz = j.at("alternation_hz").get<double>();
    s.presentation.square_cm = j.at("square_cm").get<double>();
    s.presentation.distance_cm = j.at("distance_cm").get<double>();
    s.trials = j.at("trials").get<std::vector<Trial>>();
    for (std::size_t i = 0; i < s.trials.size(); ++i) {
      if (s.trials[i].index != i) throw Error(ErrorCode::kFormat, "trial indices must be 0..n-1 in order");
    }
    return s;
  });
}

std::string schedule_hash(const Schedule& schedule) {
  const std::string text = schedule_to_json(schedule).dump();
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

json report_to_json(const SessionAnalysis& a) {
  json bins = json::array();
  for (const auto& b : a.bins) {
    bins.push_back({{"r", b.r}, {"n_trials", b.n_trials}, {"n_detected", b.n_detected}});
  }
  return json{{"schema_version", kSchemaVersion},
              {"alpha", number_or_null(a.curve.alpha)},
              {"beta", number_or_null(a.curve.beta)},
              {"converged", a.curve.converged},
              {"degenerate", a.curve.degenerate},
              {"log_likelihood", number_or_null(a.curve.log_likelihood)},
              {"threshold_50", a.threshold_50 ? json(*a.threshold_50) : json(nullptr)},
              {"false_alarm_rate", a.catch_stats.n_catch ? json(a.catch_stats.false_alarm_rate)
                                                         : json(nullptr)},
              {"n_catch", a.catch_stats.n_catch},
              {"n_false_alarm", a.catch_stats.n_false_alarm},
              {"suspect", a.suspect},
              {"bins", bins}};
}

void write_curve_csv(std::ostream& os, const PsychometricCurve& curve, double r_lo, double r_hi,
                     std::size_t points) {
  os << "r,fitted_P\n";
  char line[64];
  for (double r : linspace(r_lo, r_hi, points)) {
    const double p = curve.degenerate ? std::nan("") : curve.probability(r);
    std::snprintf(line, sizeof line, "%.6f,%.9f\n", r, p);
    os << line;
  }
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::kFormat, "'" + path + "': " + e.what());
  }
}

void write_json_file(const std::string& path, const json& j) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw Error(ErrorCode::kIo, "cannot write '" + path + "'");
  out << j.dump(2) << '\n';
  if (!out) throw Error(ErrorCode::kIo, "write to '" + path + "' failed");
}

}  // namespace colorvib
