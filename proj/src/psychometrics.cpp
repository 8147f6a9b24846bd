#include "colorvib/psychometrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <string>

namespace colorvib {

namespace {

// log(1 + exp(t)) without overflow.
double softplus(double t) noexcept {
  return t > 0.0 ? t + std::log1p(std::exp(-t)) : std::log1p(std::exp(t));
}

double sigmoid(double z) noexcept {
  if (z >= 0.0) return 1.0 / (1.0 + std::exp(-z));
  const double e = std::exp(z);
  return e / (1.0 + e);
}

struct Derivatives {
  double ll = 0.0;
  double g_alpha = 0.0, g_beta = 0.0;
  double h_aa = 0.0, h_ab = 0.0, h_bb = 0.0;
};

Derivatives derivatives(std::span<const ObservationBin> bins, double alpha, double beta) {
  Derivatives d;
  for (const auto& bin : bins) {
    const double n = static_cast<double>(bin.n_trials);
    const double k = static_cast<double>(bin.n_detected);
    const double dr = bin.r - alpha;
    const double z = beta * dr;
    const double p = sigmoid(z);
    d.ll += -k * softplus(-z) - (n - k) * softplus(z);
    const double resid = k - n * p;  // dLL/dz
    const double w = n * p * (1.0 - p);
    d.g_alpha += -resid * beta;
    d.g_beta += resid * dr;
    d.h_aa += -w * beta * beta;
    d.h_bb += -w * dr * dr;
    d.h_ab += w * beta * dr - resid;
  }
  return d;
}

void validate(std::span<const ObservationBin> bins) {
  for (const auto& bin : bins) {
    if (bin.n_trials == 0 || bin.n_detected > bin.n_trials || !std::isfinite(bin.r)) {
      throw Error(ErrorCode::kInvalidArgument,
                  "observation bin at r=" + std::to_string(bin.r) + " is inconsistent");
    }
  }
}

double grid_alpha(const FitGrid& g, double lo, double hi, std::size_t i) {
  return g.alpha_steps < 2 ? lo : lo + (hi - lo) * static_cast<double>(i) /
                                           static_cast<double>(g.alpha_steps - 1);
}

double grid_log_beta(const FitGrid& g, std::size_t j) {
  return g.log_beta_steps < 2
             ? g.log_beta_lo
             : g.log_beta_lo + (g.log_beta_hi - g.log_beta_lo) * static_cast<double>(j) /
                                   static_cast<double>(g.log_beta_steps - 1);
}

std::pair<double, double> r_range(std::span<const ObservationBin> bins) {
  const auto [lo, hi] = std::minmax_element(
      bins.begin(), bins.end(), [](const auto& a, const auto& b) { return a.r < b.r; });
  return {lo->r, hi->r};
}

GridOptimum pick_best(const FitGrid& grid, double lo, double hi, const std::vector<double>& ll) {
  std::size_t best = 0;
  for (std::size_t c = 1; c < ll.size(); ++c) {
    if (ll[c] > ll[best]) best = c;
  }
  const std::size_t i = best / grid.log_beta_steps, j = best % grid.log_beta_steps;
  return {grid_alpha(grid, lo, hi, i), grid_log_beta(grid, j), ll[best]};
}

}  // namespace

double PsychometricCurve::probability(double r) const noexcept { return sigmoid(beta * (r - alpha)); }

double log_likelihood(std::span<const ObservationBin> bins, double alpha, double beta) noexcept {
  double ll = 0.0;
  for (const auto& bin : bins) {
    const double z = beta * (bin.r - alpha);
    const double k = static_cast<double>(bin.n_detected);
    const double n = static_cast<double>(bin.n_trials);
    ll += -k * softplus(-z) - (n - k) * softplus(z);
  }
  return ll;
}

GridOptimum coarse_grid_search(std::span<const ObservationBin> bins, const FitGrid& grid) {
  if (bins.empty()) throw Error(ErrorCode::kInvalidArgument, "no observation bins");
  const auto [lo, hi] = r_range(bins);
  const std::size_t cells = grid.alpha_steps * grid.log_beta_steps;
  std::vector<double> ll(cells);
  const auto n = static_cast<std::ptrdiff_t>(cells);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t c = 0; c < n; ++c) {
    const auto cell = static_cast<std::size_t>(c);
    const double alpha = grid_alpha(grid, lo, hi, cell / grid.log_beta_steps);
    const double beta = std::exp(grid_log_beta(grid, cell % grid.log_beta_steps));
    ll[cell] = log_likelihood(bins, alpha, beta);
  }
  return pick_best(grid, lo, hi, ll);
}

GridOptimum coarse_grid_search_serial(std::span<const ObservationBin> bins, const FitGrid& grid) {
  if (bins.empty()) throw Error(ErrorCode::kInvalidArgument, "no observation bins");
  const auto [lo, hi] = r_range(bins);
  std::vector<double> ll;
  ll.reserve(grid.alpha_steps * grid.log_beta_steps);
  for (std::size_t i = 0; i < grid.alpha_steps; ++i) {
    for (std::size_t j = 0; j < grid.log_beta_steps; ++j) {
      ll.push_back(log_likelihood(bins, grid_alpha(grid, lo, hi, i), std::exp(grid_log_beta(grid, j))));
    }
  }
  return pick_best(grid, lo, hi, ll);
}

PsychometricCurve fit_sigmoid(std::span<const ObservationBin> bins, const FitGrid& grid) {
  validate(bins);
  PsychometricCurve curve;

  std::size_t total = 0, detected = 0;
  bool below_half = false, above_half = false;
  for (const auto& bin : bins) {
    total += bin.n_trials;
    detected += bin.n_detected;
    below_half |= 2 * bin.n_detected < bin.n_trials;
    above_half |= 2 * bin.n_detected > bin.n_trials;
  }
  const auto [r_lo, r_hi] = bins.empty() ? std::pair{0.0, 0.0} : r_range(bins);
  if (bins.empty() || detected == 0 || detected == total || !(r_hi > r_lo)) {
    curve.degenerate = true;
    curve.alpha = std::numeric_limits<double>::quiet_NaN();
    curve.log_likelihood = bins.empty() ? 0.0 : log_likelihood(bins, 0.0, 0.0);
    return curve;
  }

  const GridOptimum start = coarse_grid_search(bins, grid);

  // Damped Newton on (alpha, u = log beta); convergence is judged on the
  // gradient with respect to (alpha, beta).
  double alpha = start.alpha, u = start.log_beta;
  Derivatives d = derivatives(bins, alpha, std::exp(u));
  constexpr int kMaxIterations = 500;
  int it = 0;
  for (; it < kMaxIterations; ++it) {
    if (std::hypot(d.g_alpha, d.g_beta) < kGradientTolerance) break;
    const double beta = std::exp(u);
    const double ga = d.g_alpha, gu = d.g_beta * beta;
    // Negative Hessian in (alpha, u).
    const double a11 = -d.h_aa;
    const double a12 = -d.h_ab * beta;
    const double a22 = -(d.h_bb * beta * beta + d.g_beta * beta);
    const double scale = std::max({std::abs(a11), std::abs(a22), 1e-12});

    bool accepted = false;
    for (double lambda = 0.0; lambda < 1e12 * scale; lambda = lambda == 0.0 ? 1e-8 * scale : lambda * 10.0) {
      const double m11 = a11 + lambda, m22 = a22 + lambda;
      const double det = m11 * m22 - a12 * a12;
      if (!(m11 > 0.0 && det > 0.0)) continue;
      const double step_a = (m22 * ga - a12 * gu) / det;
      const double step_u = (m11 * gu - a12 * ga) / det;
      const double na = alpha + step_a, nu = u + step_u;
      if (!std::isfinite(na) || !std::isfinite(nu) || nu > 50.0) continue;
      const Derivatives nd = derivatives(bins, na, std::exp(nu));
      const double slack = 1e-12 * std::max(1.0, std::abs(d.ll));
      const bool better = nd.ll > d.ll;
      const bool flat_but_closer = nd.ll >= d.ll - slack &&
                                   std::hypot(nd.g_alpha, nd.g_beta) < std::hypot(d.g_alpha, d.g_beta);
      if (better || flat_but_closer) {
        alpha = na;
        u = nu;
        d = nd;
        accepted = true;
        break;
      }
    }
    if (!accepted) break;
  }

  curve.alpha = alpha;
  curve.beta = std::exp(u);
  curve.log_likelihood = d.ll;
  curve.iterations = it;
  curve.converged = std::hypot(d.g_alpha, d.g_beta) < kGradientTolerance && below_half && above_half;
  return curve;
}

double threshold_at(const PsychometricCurve& curve, double p) {
  if (!curve.converged) throw Error(ErrorCode::kNotConverged, "psychometric fit did not converge");
  if (!(p > 0.0 && p < 1.0)) throw Error(ErrorCode::kInvalidArgument, "p must lie in (0, 1)");
  return curve.alpha + std::log(p / (1.0 - p)) / curve.beta;
}

CatchReport catch_report(std::span<const TrialOutcome> trials) {
  CatchReport report;
  for (const auto& t : trials) {
    if (!t.is_catch) continue;
    ++report.n_catch;
    report.n_false_alarm += t.detected;
  }
  if (report.n_catch == 0) throw Error(ErrorCode::kNoCatchTrials, "no catch trials in session");
  report.false_alarm_rate =
      static_cast<double>(report.n_false_alarm) / static_cast<double>(report.n_catch);
  return report;
}

std::vector<ObservationBin> bin_by_r(std::span<const std::pair<double, bool>> observations) {
  std::map<double, ObservationBin> by_r;
  for (const auto& [r, detected] : observations) {
    auto& bin = by_r[r];
    bin.r = r;
    ++bin.n_trials;
    bin.n_detected += detected;
  }
  std::vector<ObservationBin> out;
  out.reserve(by_r.size());
  for (auto& [r, bin] : by_r) out.push_back(bin);
  return out;
}

}  // namespace colorvib
