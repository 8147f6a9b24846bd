#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "colorvib/colorimetry.hpp"
#include "colorvib/ellipse_atlas.hpp"

namespace colorvib {

inline constexpr double kDefaultLuminance = 0.4;

struct ColorVibrationPair {
  int source_id = 0;
  double r = 0.0;
  double Y = kDefaultLuminance;
  Chromaticity plus_xy;
  Chromaticity minus_xy;
  EncodedSRGB plus_srgb;
  EncodedSRGB minus_srgb;
  EncodedSRGB fused_srgb;  // xy midpoint (the ellipse centre) at the same Y

  friend bool operator==(const ColorVibrationPair&, const ColorVibrationPair&) = default;
};

enum class PairSide { kPlus, kMinus, kFused };

const char* side_name(PairSide side) noexcept;

class OutOfGamutError : public Error {
 public:
  OutOfGamutError(PairSide side, int channel, double value, const std::string& detail)
      : Error(ErrorCode::kOutOfGamut, detail), side_(side), channel_(channel), value_(value) {}

  PairSide side() const noexcept { return side_; }
  int channel() const noexcept { return channel_; }  // 0 = r, 1 = g, 2 = b
  double value() const noexcept { return value_; }

 private:
  PairSide side_;
  int channel_;
  double value_;
};

// Machine-readable reason codes for rejected (color, r) requests.
inline constexpr const char* kReasonOutOfGamut = "out_of_gamut";
inline constexpr const char* kReasonOutOfDiagram = "out_of_diagram";
inline constexpr const char* kReasonOmitted = "omitted";

struct RejectedPair {
  int source_id = 0;
  double r = 0.0;
  std::string reason;
  std::string detail;

  friend bool operator==(const RejectedPair&, const RejectedPair&) = default;
};

struct StimulusSet {
  double Y = kDefaultLuminance;
  std::vector<int> color_ids;
  std::vector<std::vector<double>> r_grid;  // aligned with color_ids
  std::vector<ColorVibrationPair> pairs;
  std::vector<RejectedPair> rejected;

  friend bool operator==(const StimulusSet&, const StimulusSet&) = default;
};

// Non-throwing core of make_pair.
std::variant<ColorVibrationPair, RejectedPair> evaluate_pair(const MacAdamEllipse& e, double r,
                                                             double Y) noexcept;

ColorVibrationPair make_pair(const MacAdamEllipse& e, double r, double Y = kDefaultLuminance);

// Largest r in [0, r_hi] for which make_pair succeeds, by bisection to 1e-6.
// Throws kCenterOutOfGamut when the centre itself is not displayable.
double max_in_gamut_r(const MacAdamEllipse& e, double Y, double r_hi);

inline constexpr double kBisectionTolerance = 1e-6;

// make_pair success flag for every r. OpenMP-parallel over r.
std::vector<std::uint8_t> sample_gamut(const MacAdamEllipse& e, double Y,
                                       std::span<const double> r_values);
std::vector<std::uint8_t> sample_gamut_serial(const MacAdamEllipse& e, double Y,
                                              std::span<const double> r_values);

// True when the flags are a run of 1s followed only by 0s.
bool is_prefix_interval(std::span<const std::uint8_t> flags) noexcept;

// Attempts every (color, r); r_grid[i] belongs to colors[i]. An empty r_grid
// requests nothing. Output is ordered by (color id, r). The OpenMP kernel and
// the serial reference return identical sets.
StimulusSet build_stimulus_set(std::span<const MacAdamEllipse> colors,
                               std::span<const std::vector<double>> r_grid, double Y);
StimulusSet build_stimulus_set_serial(std::span<const MacAdamEllipse> colors,
                                      std::span<const std::vector<double>> r_grid, double Y);

// `count` values evenly spaced on [lo, hi], both ends included.
std::vector<double> linspace(double lo, double hi, std::size_t count);

struct RankedColor {
  MacAdamEllipse ellipse;
  double max_r = 0.0;
};

// Atlas entries whose centres are displayable at Y, ranked by max_in_gamut_r
// (ties by id), truncated to `count`.
std::vector<RankedColor> rank_displayable_colors(std::span<const MacAdamEllipse> atlas, double Y,
                                                 std::size_t count, double r_hi);

// Ids of atlas centres displayable at Y, ascending.
std::vector<int> displayable_center_ids(std::span<const MacAdamEllipse> atlas, double Y);

struct GamutCappedGrid {
  std::size_t count = 8;
  double r_min = 1.0;
  double r_max = 40.0;
  double cap_fraction = 0.95;
  double search_hi = 50.0;
};

// r values from r_min to min(r_max, cap_fraction * max_r).
std::vector<double> gamut_capped_grid(double max_r, const GamutCappedGrid& policy);

// Keeps `max_pairs` evenly strided pairs and moves the rest to `rejected`
// with reason kReasonOmitted. No-op when the set is already small enough.
StimulusSet limit_pairs(StimulusSet set, std::size_t max_pairs);

}  // namespace colorvib
