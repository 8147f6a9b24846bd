#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <variant>
#include <vector>

#include "colorvib/pairgen.hpp"
#include "colorvib/psychometrics.hpp"

namespace colorvib {

// Critical color fusion frequency; alternation must stay above it.
inline constexpr double kCriticalFusionHz = 25.0;
inline constexpr std::size_t kTrialsPerBlock = 5;
inline constexpr double kDefaultSuspectThreshold = 0.2;

enum class TrialKind { kVibration, kCatch };

const char* kind_name(TrialKind kind) noexcept;

struct Trial {
  std::size_t index = 0;
  std::variant<ColorVibrationPair, EncodedSRGB> stimulus;
  bool break_after = false;

  TrialKind kind() const noexcept {
    return std::holds_alternative<ColorVibrationPair>(stimulus) ? TrialKind::kVibration
                                                                : TrialKind::kCatch;
  }
  friend bool operator==(const Trial&, const Trial&) = default;
};

struct PresentationParams {
  double alternation_hz = 30.0;
  double square_cm = 15.0;
  double distance_cm = 60.0;

  friend bool operator==(const PresentationParams&, const PresentationParams&) = default;
};

struct Schedule {
  std::vector<Trial> trials;
  std::uint64_t seed = 0;
  PresentationParams presentation;

  friend bool operator==(const Schedule&, const Schedule&) = default;
};

struct Response {
  std::size_t trial_index = 0;
  bool detected = false;
  std::int64_t response_ms = 0;
  std::optional<double> achieved_hz;  // cadence the display actually reached

  friend bool operator==(const Response&, const Response&) = default;
};

struct ScheduleRef {
  std::uint64_t seed = 0;
  std::string schedule_hash;

  friend bool operator==(const ScheduleRef&, const ScheduleRef&) = default;
};

struct SessionRecord {
  ScheduleRef schedule_ref;
  std::size_t trial_count = 0;
  std::vector<Response> responses;
  std::string participant_label;
  bool completed = false;

  friend bool operator==(const SessionRecord&, const SessionRecord&) = default;
};

struct SessionAnalysis {
  std::vector<ObservationBin> bins;
  PsychometricCurve curve;
  CatchReport catch_stats;
  std::optional<double> threshold_50;
  bool suspect = false;
};

// Vibration trials plus `catch_count` catch trials (the fused colours of the
// pairs, cycled), shuffled by a seeded Fisher-Yates. Break flags fall after
// every fifth trial except the last.
Schedule build_schedule(const StimulusSet& set, std::size_t catch_count, std::uint64_t seed,
                        const PresentationParams& presentation = {});

// Uniform integer in [0, n) by rejection sampling. The engine's output
// sequence is fixed by the standard, so this is portable where
// std::uniform_int_distribution is not.
std::uint64_t uniform_below(std::mt19937_64& engine, std::uint64_t n);

SessionRecord start_session(const Schedule& schedule, std::string participant_label);

SessionRecord record_response(SessionRecord rec, const Response& response);

SessionAnalysis analyze_session(const SessionRecord& rec, const Schedule& schedule,
                                double suspect_threshold = kDefaultSuspectThreshold);

}  // namespace colorvib
