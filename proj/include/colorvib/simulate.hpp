#pragma once

// Synthetic observers for driving a session without a person.

#include <cstdint>
#include <functional>
#include <random>
#include <string>

#include "colorvib/session.hpp"

namespace colorvib {

using Observer = std::function<bool(const Trial&, std::mt19937_64&)>;

// Reports flicker iff r > threshold; never on catch trials.
Observer step_observer(double threshold);

// Detects with the logistic probability at the trial's r; catch trials are
// reported with probability false_alarm_p.
Observer logistic_observer(double alpha, double beta, double false_alarm_p = 0.0);

// Answers every trial, catch or not, with a fair coin.
Observer coin_observer();

// Answers every trial of `schedule` in presentation order.
SessionRecord simulate_session(const Schedule& schedule, const std::string& participant_label,
                               const Observer& observer, std::uint64_t seed);

}  // namespace colorvib
