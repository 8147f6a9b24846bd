#include "colorvib/colorimetry.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace colorvib {

const char* error_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::kDegenerateChromaticity: return "DegenerateChromaticity";
    case ErrorCode::kZeroTristimulus: return "ZeroTristimulus";
    case ErrorCode::kOutOfGamut: return "OutOfGamut";
    case ErrorCode::kChromaticityOutOfDiagram: return "ChromaticityOutOfDiagram";
    case ErrorCode::kCenterOutOfGamut: return "CenterOutOfGamut";
    case ErrorCode::kNotConverged: return "NotConverged";
    case ErrorCode::kNoCatchTrials: return "NoCatchTrials";
    case ErrorCode::kEmptyStimulusSet: return "EmptyStimulusSet";
    case ErrorCode::kDuplicateResponse: return "DuplicateResponse";
    case ErrorCode::kIndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::kIncompleteSession: return "IncompleteSession";
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kFormat: return "FormatError";
    case ErrorCode::kIo: return "IoError";
  }
  return "UnknownError";
}

bool is_valid_chromaticity(Chromaticity c) noexcept {
  return std::isfinite(c.x) && std::isfinite(c.y) && c.x >= 0.0 && c.y > 0.0 &&
         c.x + c.y <= 1.0;
}

TristimulusXYZ xyY_to_XYZ(Chromaticity c, double Y) {
  if (!(c.y > kDegenerateEpsilon)) {
    std::ostringstream os;
    os << "chromaticity y=" << c.y << " too close to zero";
    throw Error(ErrorCode::kDegenerateChromaticity, os.str());
  }
  const double scale = Y / c.y;
  return {c.x * scale, Y, (1.0 - c.x - c.y) * scale};
}

Chromaticity chromaticity_of(const TristimulusXYZ& t) {
  const double sum = t.X + t.Y + t.Z;
  if (!(sum > kDegenerateEpsilon)) {
    throw Error(ErrorCode::kZeroTristimulus, "X + Y + Z must be positive");
  }
  return {t.X / sum, t.Y / sum};
}

namespace {

template <typename Out>
Out apply(const std::array<std::array<double, 3>, 3>& m, double a, double b, double c) {
  return Out{m[0][0] * a + m[0][1] * b + m[0][2] * c,
             m[1][0] * a + m[1][1] * b + m[1][2] * c,
             m[2][0] * a + m[2][1] * b + m[2][2] * c};
}

}  // namespace

LinearRGB XYZ_to_linear_sRGB(const TristimulusXYZ& t) noexcept {
  return apply<LinearRGB>(kXyzToLinearSrgb, t.X, t.Y, t.Z);
}

TristimulusXYZ linear_sRGB_to_XYZ(const LinearRGB& l) noexcept {
  return apply<TristimulusXYZ>(kLinearSrgbToXyz, l.r, l.g, l.b);
}

int first_out_of_gamut_channel(const LinearRGB& l) noexcept {
  for (int i = 0; i < 3; ++i) {
    const double v = l.channel(i);
    if (!(v >= -kGamutEpsilon && v <= 1.0 + kGamutEpsilon)) return i;
  }
  return -1;
}

bool in_gamut(const LinearRGB& l) noexcept { return first_out_of_gamut_channel(l) < 0; }

double srgb_encode(double v) noexcept {
  if (v <= 0.0031308) return 12.92 * v;
  return 1.055 * std::pow(v, 1.0 / 2.4) - 0.055;
}

double srgb_decode(double c) noexcept {
  if (c <= 0.04045) return c / 12.92;
  return std::pow((c + 0.055) / 1.055, 2.4);
}

namespace {

std::uint8_t quantize(double linear) {
  const double v = std::clamp(linear, 0.0, 1.0);
  const double code = std::floor(srgb_encode(v) * 255.0 + 0.5);
  return static_cast<std::uint8_t>(std::clamp(code, 0.0, 255.0));
}

}  // namespace

EncodedSRGB linear_to_encoded(const LinearRGB& l) {
  if (const int ch = first_out_of_gamut_channel(l); ch >= 0) {
    std::ostringstream os;
    os << "channel " << "rgb"[ch] << "=" << l.channel(ch) << " outside [0, 1]";
    throw Error(ErrorCode::kOutOfGamut, os.str());
  }
  return {quantize(l.r), quantize(l.g), quantize(l.b)};
}

LinearRGB encoded_to_linear(const EncodedSRGB& e) noexcept {
  return {srgb_decode(e.r / 255.0), srgb_decode(e.g / 255.0), srgb_decode(e.b / 255.0)};
}

LinearRGB linear_of(Chromaticity c, double Y) { return XYZ_to_linear_sRGB(xyY_to_XYZ(c, Y)); }

}  // namespace colorvib
