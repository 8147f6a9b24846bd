#include "colorvib/simulate.hpp"

#include <cmath>

namespace colorvib {

namespace {

double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace

Observer step_observer(double threshold) {
  return [threshold](const Trial& t, std::mt19937_64&) {
    const auto* pair = std::get_if<ColorVibrationPair>(&t.stimulus);
    return pair != nullptr && pair->r > threshold;
  };
}

Observer logistic_observer(double alpha, double beta, double false_alarm_p) {
  return [=](const Trial& t, std::mt19937_64& rng) {
    const auto* pair = std::get_if<ColorVibrationPair>(&t.stimulus);
    const double p = pair ? 1.0 / (1.0 + std::exp(-beta * (pair->r - alpha))) : false_alarm_p;
    return uniform01(rng) < p;
  };
}

Observer coin_observer() {
  return [](const Trial&, std::mt19937_64& rng) { return (rng() >> 63) != 0; };
}

SessionRecord simulate_session(const Schedule& schedule, const std::string& participant_label,
                               const Observer& observer, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  SessionRecord rec = start_session(schedule, participant_label);
  for (const Trial& t : schedule.trials) {
    const bool detected = observer(t, rng);
    const auto response_ms = static_cast<std::int64_t>(400 + rng() % 800);
    rec = record_response(std::move(rec), {t.index, detected, response_ms, std::nullopt});
  }
  return rec;
}

}  // namespace colorvib
