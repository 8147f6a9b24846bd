#pragma once

// JSON forms of the data model. Every top-level document carries
// schema_version.

#include <iosfwd>
#include <span>
#include <string>

#include <json.hpp>

#include "colorvib/pairgen.hpp"
#include "colorvib/psychometrics.hpp"
#include "colorvib/session.hpp"

namespace colorvib {

inline constexpr int kSchemaVersion = 1;

void to_json(nlohmann::json& j, const Chromaticity& c);
void from_json(const nlohmann::json& j, Chromaticity& c);
void to_json(nlohmann::json& j, const EncodedSRGB& e);
void from_json(const nlohmann::json& j, EncodedSRGB& e);
void to_json(nlohmann::json& j, const ColorVibrationPair& p);
void from_json(const nlohmann::json& j, ColorVibrationPair& p);
void to_json(nlohmann::json& j, const RejectedPair& p);
void from_json(const nlohmann::json& j, RejectedPair& p);
void to_json(nlohmann::json& j, const Trial& t);
void from_json(const nlohmann::json& j, Trial& t);
void to_json(nlohmann::json& j, const Response& r);
void from_json(const nlohmann::json& j, Response& r);

nlohmann::json stimulus_set_to_json(const StimulusSet& set);
StimulusSet stimulus_set_from_json(const nlohmann::json& j);

nlohmann::json schedule_to_json(const Schedule& schedule);
Schedule schedule_from_json(const nlohmann::json& j);

// FNV-1a 64 over the compact schedule document, as 16 hex digits.
std::string schedule_hash(const Schedule& schedule);

// {alpha, beta, converged, log_likelihood, threshold_50, false_alarm_rate, ...}
nlohmann::json report_to_json(const SessionAnalysis& analysis);

// "r,fitted_P" rows on an evenly spaced grid between r_lo and r_hi.
void write_curve_csv(std::ostream& os, const PsychometricCurve& curve, double r_lo, double r_hi,
                     std::size_t points = 100);

nlohmann::json read_json_file(const std::string& path);
void write_json_file(const std::string& path, const nlohmann::json& j);

}  // namespace colorvib
