#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "colorvib/error.hpp"

namespace colorvib {

struct ObservationBin {
  double r = 0.0;
  std::size_t n_trials = 0;
  std::size_t n_detected = 0;

  friend bool operator==(const ObservationBin&, const ObservationBin&) = default;
};

// P(r) = 1 / (1 + exp(-beta * (r - alpha))).
struct PsychometricCurve {
  double alpha = 0.0;
  double beta = 1.0;
  bool converged = false;
  bool degenerate = false;  // all responses identical; alpha is NaN
  double log_likelihood = 0.0;
  int iterations = 0;

  double probability(double r) const noexcept;
};

struct CatchReport {
  std::size_t n_catch = 0;
  std::size_t n_false_alarm = 0;
  double false_alarm_rate = 0.0;
};

struct TrialOutcome {
  bool is_catch = false;
  bool detected = false;
};

struct FitGrid {
  std::size_t alpha_steps = 81;
  std::size_t log_beta_steps = 61;
  double log_beta_lo = -4.0;
  double log_beta_hi = 2.0;
};

inline constexpr double kGradientTolerance = 1e-8;

// Binomial log-likelihood without the combinatorial constant, so splitting a
// bin into two with the same totals leaves it unchanged.
double log_likelihood(std::span<const ObservationBin> bins, double alpha, double beta) noexcept;

struct GridOptimum {
  double alpha = 0.0;
  double log_beta = 0.0;
  double log_likelihood = 0.0;
};

// Exhaustive log-likelihood scan over alpha in [min r, max r] x log beta.
// The OpenMP kernel and the serial reference pick the same cell.
GridOptimum coarse_grid_search(std::span<const ObservationBin> bins, const FitGrid& grid);
GridOptimum coarse_grid_search_serial(std::span<const ObservationBin> bins, const FitGrid& grid);

// Maximum-likelihood two-parameter logistic: coarse grid, then damped Newton.
// converged requires gradient norm < kGradientTolerance and data that straddle
// a detection proportion of 0.5. All-identical responses yield degenerate.
PsychometricCurve fit_sigmoid(std::span<const ObservationBin> bins, const FitGrid& grid = {});

// alpha + logit(p) / beta; throws kNotConverged for unconverged curves.
double threshold_at(const PsychometricCurve& curve, double p);

CatchReport catch_report(std::span<const TrialOutcome> trials);

// Groups (r, detected) observations by exact r, ascending.
std::vector<ObservationBin> bin_by_r(std::span<const std::pair<double, bool>> observations);

}  // namespace colorvib
