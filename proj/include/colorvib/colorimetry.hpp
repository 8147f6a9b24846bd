#pragma once

// xyY <-> XYZ <-> linear sRGB <-> 8-bit sRGB conversions.
//
// Everything is expressed relative to the D65 white of the sRGB display, so
// no chromatic adaptation is applied anywhere. Luminance Y is relative to the
// display white (Y = 1 is peak white).

#include <array>
#include <cstdint>

#include "colorvib/error.hpp"

namespace colorvib {

struct Chromaticity {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Chromaticity&, const Chromaticity&) = default;
};

struct TristimulusXYZ {
  double X = 0.0;
  double Y = 0.0;
  double Z = 0.0;

  friend bool operator==(const TristimulusXYZ&, const TristimulusXYZ&) = default;
};

struct LinearRGB {
  double r = 0.0;
  double g = 0.0;
  double b = 0.0;

  double channel(int i) const { return i == 0 ? r : (i == 1 ? g : b); }
  friend bool operator==(const LinearRGB&, const LinearRGB&) = default;
};

struct EncodedSRGB {
  std::uint8_t r = 0;
  std::uint8_t g = 0;
  std::uint8_t b = 0;

  friend bool operator==(const EncodedSRGB&, const EncodedSRGB&) = default;
};

inline constexpr double kDegenerateEpsilon = 1e-10;
inline constexpr double kGamutEpsilon = 1e-9;

// XYZ -> linear sRGB for the IEC 61966-2-1 primaries and the D65 white point
// (0.3127, 0.3290), CIE 1931 2 degree observer. Derived in 40-digit precision
// from the primaries; rounds to the familiar 3.2406 / -1.5372 / -0.4986 row.
inline constexpr std::array<std::array<double, 3>, 3> kXyzToLinearSrgb = {{
    {3.2409699419045213, -1.5373831775700935, -0.49861076029300328},
    {-0.96924363628087983, 1.8759675015077207, 0.041555057407175612},
    {0.055630079696993608, -0.20397695888897656, 1.0569715142428786},
}};

inline constexpr std::array<std::array<double, 3>, 3> kLinearSrgbToXyz = {{
    {0.41239079926595948, 0.35758433938387796, 0.18048078840183429},
    {0.21263900587151036, 0.71516867876775593, 0.072192315360733715},
    {0.019330818715591851, 0.11919477979462599, 0.95053215224966058},
}};

inline constexpr Chromaticity kD65White{0.3127, 0.3290};

// True when x >= 0, y > 0 and x + y <= 1.
bool is_valid_chromaticity(Chromaticity c) noexcept;

TristimulusXYZ xyY_to_XYZ(Chromaticity c, double Y);
Chromaticity chromaticity_of(const TristimulusXYZ& t);

// No clipping: the result may leave [0, 1] for out-of-gamut colors.
LinearRGB XYZ_to_linear_sRGB(const TristimulusXYZ& t) noexcept;
TristimulusXYZ linear_sRGB_to_XYZ(const LinearRGB& l) noexcept;

bool in_gamut(const LinearRGB& l) noexcept;

// Index of the first channel outside [-kGamutEpsilon, 1 + kGamutEpsilon], or -1.
int first_out_of_gamut_channel(const LinearRGB& l) noexcept;

// Per-channel sRGB transfer curve on [0, 1].
double srgb_encode(double linear) noexcept;
double srgb_decode(double encoded) noexcept;

// Throws Error(kOutOfGamut) outside the tolerance band; values inside the
// band are clamped before encoding. Quantization rounds half up.
EncodedSRGB linear_to_encoded(const LinearRGB& l);
LinearRGB encoded_to_linear(const EncodedSRGB& e) noexcept;

// xyY straight to linear sRGB; the composition used by pair generation.
LinearRGB linear_of(Chromaticity c, double Y);

}  // namespace colorvib
