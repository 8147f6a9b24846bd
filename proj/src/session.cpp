#include "colorvib/session.hpp"

#include <algorithm>
#include <string>

#include "colorvib/serialize.hpp"

namespace colorvib {

const char* kind_name(TrialKind kind) noexcept {
  return kind == TrialKind::kVibration ? "vibration" : "catch";
}

std::uint64_t uniform_below(std::mt19937_64& engine, std::uint64_t n) {
  if (n == 0) throw Error(ErrorCode::kInvalidArgument, "uniform_below requires n > 0");
  // Reject the low (2^64 mod n) outputs so every residue is equally likely.
  const std::uint64_t threshold = (0 - n) % n;
  for (;;) {
    const std::uint64_t x = engine();
    if (x >= threshold) return x % n;
  }
}

Schedule build_schedule(const StimulusSet& set, std::size_t catch_count, std::uint64_t seed,
                        const PresentationParams& presentation) {
  if (set.pairs.empty()) {
    throw Error(ErrorCode::kEmptyStimulusSet, "stimulus set has no displayable pairs");
  }
  if (!(presentation.alternation_hz > 0.0) || !(presentation.square_cm > 0.0) ||
      !(presentation.distance_cm > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "presentation parameters must be positive");
  }
  Schedule schedule;
  schedule.seed = seed;
  schedule.presentation = presentation;
  auto& trials = schedule.trials;
  trials.reserve(set.pairs.size() + catch_count);
  for (const auto& pair : set.pairs) trials.push_back({0, pair, false});
  for (std::size_t i = 0; i < catch_count; ++i) {
    trials.push_back({0, set.pairs[i % set.pairs.size()].fused_srgb, false});
  }

  std::mt19937_64 engine(seed);
  for (std::size_t i = trials.size(); i > 1; --i) {
    const auto j = static_cast<std::size_t>(uniform_below(engine, i));
    std::swap(trials[i - 1], trials[j]);
  }
  for (std::size_t i = 0; i < trials.size(); ++i) {
    trials[i].index = i;
    trials[i].break_after = (i + 1) % kTrialsPerBlock == 0 && i + 1 < trials.size();
  }
  return schedule;
}

SessionRecord start_session(const Schedule& schedule, std::string participant_label) {
  SessionRecord rec;
  rec.schedule_ref = {schedule.seed, schedule_hash(schedule)};
  rec.trial_count = schedule.trials.size();
  rec.participant_label = std::move(participant_label);
  rec.completed = rec.trial_count == 0;
  return rec;
}

SessionRecord record_response(SessionRecord rec, const Response& response) {
  if (response.trial_index >= rec.trial_count) {
    throw Error(ErrorCode::kIndexOutOfRange, "trial " + std::to_string(response.trial_index) +
                                                 " outside a " + std::to_string(rec.trial_count) +
                                                 "-trial session");
  }
  const bool seen = std::any_of(rec.responses.begin(), rec.responses.end(), [&](const Response& r) {
    return r.trial_index == response.trial_index;
  });
  if (seen) {
    throw Error(ErrorCode::kDuplicateResponse,
                "trial " + std::to_string(response.trial_index) + " already answered");
  }
  rec.responses.push_back(response);
  rec.completed = rec.responses.size() == rec.trial_count;
  return rec;
}

SessionAnalysis analyze_session(const SessionRecord& rec, const Schedule& schedule,
                                double suspect_threshold) {
  if (!rec.completed) {
    throw Error(ErrorCode::kIncompleteSession,
                std::to_string(rec.responses.size()) + " of " + std::to_string(rec.trial_count) +
                    " trials answered");
  }
  if (rec.trial_count != schedule.trials.size() ||
      rec.schedule_ref.schedule_hash != schedule_hash(schedule)) {
    throw Error(ErrorCode::kInvalidArgument, "session record belongs to a different schedule");
  }

  std::vector<std::pair<double, bool>> observations;
  std::vector<TrialOutcome> outcomes;
  outcomes.reserve(rec.responses.size());
  for (const auto& response : rec.responses) {
    const Trial& trial = schedule.trials[response.trial_index];
    if (const auto* pair = std::get_if<ColorVibrationPair>(&trial.stimulus)) {
      observations.emplace_back(pair->r, response.detected);
      outcomes.push_back({false, response.detected});
    } else {
      outcomes.push_back({true, response.detected});
    }
  }

  SessionAnalysis analysis;
  analysis.bins = bin_by_r(observations);
  analysis.curve = fit_sigmoid(analysis.bins);
  if (analysis.curve.converged) analysis.threshold_50 = threshold_at(analysis.curve, 0.5);
  const bool has_catch = std::any_of(outcomes.begin(), outcomes.end(),
                                     [](const TrialOutcome& o) { return o.is_catch; });
  if (has_catch) {
    analysis.catch_stats = catch_report(outcomes);
    analysis.suspect = analysis.catch_stats.false_alarm_rate > suspect_threshold;
  }
  return analysis;
}

}  // namespace colorvib
