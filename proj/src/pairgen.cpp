#include "colorvib/pairgen.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace colorvib {

const char* side_name(PairSide side) noexcept {
  switch (side) {
    case PairSide::kPlus: return "plus";
    case PairSide::kMinus: return "minus";
    case PairSide::kFused: return "fused";
  }
  return "?";
}

namespace {

struct PairFailure {
  ErrorCode code = ErrorCode::kOutOfGamut;
  PairSide side = PairSide::kPlus;
  int channel = -1;
  double value = 0.0;
};

using PairResult = std::variant<ColorVibrationPair, PairFailure>;

PairResult compute_pair(const MacAdamEllipse& e, double r, double Y) noexcept {
  const EndpointPair ends = endpoints_unchecked(e, r);

  const std::pair<PairSide, Chromaticity> sides[] = {
      {PairSide::kPlus, ends.plus}, {PairSide::kMinus, ends.minus}, {PairSide::kFused, e.center}};
  EncodedSRGB encoded[3];
  for (int i = 0; i < 3; ++i) {
    const auto& [side, xy] = sides[i];
    if (!is_valid_chromaticity(xy) || !(xy.y > kDegenerateEpsilon)) {
      return PairFailure{ErrorCode::kChromaticityOutOfDiagram, side, -1, 0.0};
    }
    const LinearRGB lin = linear_of(xy, Y);
    if (const int ch = first_out_of_gamut_channel(lin); ch >= 0) {
      return PairFailure{ErrorCode::kOutOfGamut, side, ch, lin.channel(ch)};
    }
    encoded[i] = linear_to_encoded(lin);
  }
  return ColorVibrationPair{e.id, r, Y, ends.plus, ends.minus, encoded[0], encoded[1], encoded[2]};
}

std::string failure_detail(const PairFailure& f) {
  std::ostringstream os;
  os << side_name(f.side);
  if (f.code == ErrorCode::kOutOfGamut) {
    os << '.' << "rgb"[f.channel] << '=' << f.value;
  }
  return os.str();
}

RejectedPair to_rejected(const MacAdamEllipse& e, double r, const PairFailure& f) {
  return {e.id, r,
          f.code == ErrorCode::kOutOfGamut ? kReasonOutOfGamut : kReasonOutOfDiagram,
          failure_detail(f)};
}

void check_arguments(double r, double Y) {
  if (!(r >= 0.0) || !std::isfinite(r)) {
    throw Error(ErrorCode::kInvalidArgument, "amplitude ratio must be finite and >= 0");
  }
  if (!(Y > 0.0 && Y <= 1.0)) {
    throw Error(ErrorCode::kInvalidArgument, "luminance Y must lie in (0, 1]");
  }
}

bool succeeds(const MacAdamEllipse& e, double r, double Y) noexcept {
  return std::holds_alternative<ColorVibrationPair>(compute_pair(e, r, Y));
}

}  // namespace

std::variant<ColorVibrationPair, RejectedPair> evaluate_pair(const MacAdamEllipse& e, double r,
                                                             double Y) noexcept {
  PairResult res = compute_pair(e, r, Y);
  if (auto* pair = std::get_if<ColorVibrationPair>(&res)) return *pair;
  return to_rejected(e, r, std::get<PairFailure>(res));
}

ColorVibrationPair make_pair(const MacAdamEllipse& e, double r, double Y) {
  check_arguments(r, Y);
  PairResult res = compute_pair(e, r, Y);
  if (auto* pair = std::get_if<ColorVibrationPair>(&res)) return *pair;
  const auto& f = std::get<PairFailure>(res);
  std::ostringstream os;
  os << "ellipse " << e.id << " at r=" << r << ", Y=" << Y << ": " << failure_detail(f);
  if (f.code == ErrorCode::kOutOfGamut) throw OutOfGamutError(f.side, f.channel, f.value, os.str());
  throw Error(f.code, os.str());
}

double max_in_gamut_r(const MacAdamEllipse& e, double Y, double r_hi) {
  check_arguments(0.0, Y);
  if (!(r_hi > 0.0) || !std::isfinite(r_hi)) {
    throw Error(ErrorCode::kInvalidArgument, "r_hi must be finite and > 0");
  }
  if (!succeeds(e, 0.0, Y)) {
    throw Error(ErrorCode::kCenterOutOfGamut,
                "centre of ellipse " + std::to_string(e.id) + " is not displayable");
  }
  if (succeeds(e, r_hi, Y)) return r_hi;
  // The displayable set at fixed Y is a convex polygon containing the centre,
  // so success along the axis is exactly an interval [0, r*].
  double lo = 0.0, hi = r_hi;
  while (hi - lo > kBisectionTolerance) {
    const double mid = 0.5 * (lo + hi);
    (succeeds(e, mid, Y) ? lo : hi) = mid;
  }
  return lo;
}

std::vector<std::uint8_t> sample_gamut(const MacAdamEllipse& e, double Y,
                                       std::span<const double> r_values) {
  check_arguments(0.0, Y);
  std::vector<std::uint8_t> flags(r_values.size(), 0);
  const auto n = static_cast<std::ptrdiff_t>(r_values.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    flags[static_cast<std::size_t>(i)] = succeeds(e, r_values[static_cast<std::size_t>(i)], Y);
  }
  return flags;
}

std::vector<std::uint8_t> sample_gamut_serial(const MacAdamEllipse& e, double Y,
                                              std::span<const double> r_values) {
  check_arguments(0.0, Y);
  std::vector<std::uint8_t> flags;
  flags.reserve(r_values.size());
  for (double r : r_values) flags.push_back(succeeds(e, r, Y));
  return flags;
}

bool is_prefix_interval(std::span<const std::uint8_t> flags) noexcept {
  const auto first_fail = std::find(flags.begin(), flags.end(), 0);
  return std::find_if(first_fail, flags.end(), [](std::uint8_t f) { return f != 0; }) ==
         flags.end();
}

namespace {

struct Task {
  const MacAdamEllipse* ellipse;
  double r;
};

std::vector<Task> plan_tasks(std::span<const MacAdamEllipse> colors,
                             std::span<const std::vector<double>> r_grid, double Y) {
  check_arguments(0.0, Y);
  if (!r_grid.empty() && r_grid.size() != colors.size()) {
    throw Error(ErrorCode::kInvalidArgument, "r_grid must have one list per color");
  }
  std::vector<Task> tasks;
  for (std::size_t i = 0; i < r_grid.size(); ++i) {
    for (double r : r_grid[i]) {
      check_arguments(r, Y);
      tasks.push_back({&colors[i], r});
    }
  }
  std::stable_sort(tasks.begin(), tasks.end(), [](const Task& a, const Task& b) {
    if (a.ellipse->id != b.ellipse->id) return a.ellipse->id < b.ellipse->id;
    return a.r < b.r;
  });
  return tasks;
}

StimulusSet assemble(std::span<const MacAdamEllipse> colors,
                     std::span<const std::vector<double>> r_grid, double Y,
                     const std::vector<Task>& tasks, std::vector<PairResult>& results) {
  StimulusSet set;
  set.Y = Y;
  for (std::size_t i = 0; i < r_grid.size(); ++i) {
    set.color_ids.push_back(colors[i].id);
    set.r_grid.push_back(r_grid[i]);
  }
  for (std::size_t i = 0; i < tasks.size(); ++i) {
    if (auto* pair = std::get_if<ColorVibrationPair>(&results[i])) {
      set.pairs.push_back(std::move(*pair));
    } else {
      set.rejected.push_back(
          to_rejected(*tasks[i].ellipse, tasks[i].r, std::get<PairFailure>(results[i])));
    }
  }
  return set;
}

}  // namespace

StimulusSet build_stimulus_set(std::span<const MacAdamEllipse> colors,
                               std::span<const std::vector<double>> r_grid, double Y) {
  const std::vector<Task> tasks = plan_tasks(colors, r_grid, Y);
  std::vector<PairResult> results(tasks.size());
  const auto n = static_cast<std::ptrdiff_t>(tasks.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    const Task& t = tasks[static_cast<std::size_t>(i)];
    results[static_cast<std::size_t>(i)] = compute_pair(*t.ellipse, t.r, Y);
  }
  return assemble(colors, r_grid, Y, tasks, results);
}

StimulusSet build_stimulus_set_serial(std::span<const MacAdamEllipse> colors,
                                      std::span<const std::vector<double>> r_grid, double Y) {
  const std::vector<Task> tasks = plan_tasks(colors, r_grid, Y);
  std::vector<PairResult> results;
  results.reserve(tasks.size());
  for (const Task& t : tasks) results.push_back(compute_pair(*t.ellipse, t.r, Y));
  return assemble(colors, r_grid, Y, tasks, results);
}

std::vector<double> linspace(double lo, double hi, std::size_t count) {
  std::vector<double> out;
  out.reserve(count);
  if (count == 1) out.push_back(lo);
  for (std::size_t i = 0; count > 1 && i < count; ++i) {
    out.push_back(i + 1 == count ? hi
                                 : lo + (hi - lo) * static_cast<double>(i) /
                                            static_cast<double>(count - 1));
  }
  return out;
}

std::vector<int> displayable_center_ids(std::span<const MacAdamEllipse> atlas, double Y) {
  check_arguments(0.0, Y);
  std::vector<int> ids;
  for (const auto& e : atlas) {
    if (succeeds(e, 0.0, Y)) ids.push_back(e.id);
  }
  std::sort(ids.begin(), ids.end());
  return ids;
}

std::vector<RankedColor> rank_displayable_colors(std::span<const MacAdamEllipse> atlas, double Y,
                                                 std::size_t count, double r_hi) {
  std::vector<RankedColor> ranked;
  for (const auto& e : atlas) {
    if (!succeeds(e, 0.0, Y)) continue;
    ranked.push_back({e, max_in_gamut_r(e, Y, r_hi)});
  }
  std::sort(ranked.begin(), ranked.end(), [](const RankedColor& a, const RankedColor& b) {
    if (a.max_r != b.max_r) return a.max_r > b.max_r;
    return a.ellipse.id < b.ellipse.id;
  });
  if (ranked.size() > count) ranked.resize(count);
  return ranked;
}

std::vector<double> gamut_capped_grid(double max_r, const GamutCappedGrid& policy) {
  const double hi = std::min(policy.r_max, policy.cap_fraction * max_r);
  return linspace(policy.r_min, hi, policy.count);
}

StimulusSet limit_pairs(StimulusSet set, std::size_t max_pairs) {
  const std::size_t n = set.pairs.size();
  if (n <= max_pairs) return set;
  std::vector<char> keep(n, 0);
  for (std::size_t i = 0; i < max_pairs; ++i) keep[i * n / max_pairs] = 1;
  std::vector<ColorVibrationPair> kept;
  kept.reserve(max_pairs);
  for (std::size_t i = 0; i < n; ++i) {
    if (keep[i]) {
      kept.push_back(std::move(set.pairs[i]));
    } else {
      set.rejected.push_back({set.pairs[i].source_id, set.pairs[i].r, kReasonOmitted,
                              "pair limit " + std::to_string(max_pairs)});
    }
  }
  set.pairs = std::move(kept);
  std::stable_sort(set.rejected.begin(), set.rejected.end(),
                   [](const RejectedPair& a, const RejectedPair& b) {
                     if (a.source_id != b.source_id) return a.source_id < b.source_id;
                     return a.r < b.r;
                   });
  return set;
}

}  // namespace colorvib
