#include "colorvib/colorimetry.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

namespace colorvib {
namespace {

// Point-in-triangle test against the sRGB primary chromaticities; an oracle
// independent of the conversion matrix.
bool inside_srgb_triangle(Chromaticity p) {
  const Chromaticity r{0.64, 0.33}, g{0.30, 0.60}, b{0.15, 0.06};
  auto cross = [](Chromaticity o, Chromaticity a, Chromaticity q) {
    return (a.x - o.x) * (q.y - o.y) - (a.y - o.y) * (q.x - o.x);
  };
  const double d1 = cross(r, g, p), d2 = cross(g, b, p), d3 = cross(b, r, p);
  return (d1 >= 0 && d2 >= 0 && d3 >= 0) || (d1 <= 0 && d2 <= 0 && d3 <= 0);
}

TEST(XyYToXYZ, EqualEnergyPoint) {
  const auto t = xyY_to_XYZ({1.0 / 3.0, 1.0 / 3.0}, 0.4);
  EXPECT_NEAR(t.X, 0.4, 1e-15);
  EXPECT_EQ(t.Y, 0.4);
  EXPECT_NEAR(t.Z, 0.4, 1e-15);
}

TEST(XyYToXYZ, D65WhitePoint) {
  const auto t = xyY_to_XYZ(kD65White, 1.0);
  // Exact values of 0.3127/0.3290 and 0.3583/0.3290.
  EXPECT_NEAR(t.X, 0.950455927051672, 1e-14);
  EXPECT_EQ(t.Y, 1.0);
  EXPECT_NEAR(t.Z, 1.089057750759878, 1e-14);
  // The commonly quoted 0.95047 / 1.08883 comes from 5-digit xy.
  EXPECT_NEAR(t.X, 0.95047, 2e-5);
  EXPECT_NEAR(t.Z, 1.08883, 3e-4);
}

TEST(XyYToXYZ, ZeroYIsDegenerate) {
  try {
    xyY_to_XYZ({0.2, 0.0}, 0.4);
    FAIL() << "expected DegenerateChromaticity";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kDegenerateChromaticity);
  }
  EXPECT_THROW(xyY_to_XYZ({0.2, 1e-11}, 0.4), Error);
}

TEST(ChromaticityOf, SymmetryAndZero) {
  const auto c = chromaticity_of({0.4, 0.4, 0.4});
  EXPECT_NEAR(c.x, 1.0 / 3.0, 1e-15);
  EXPECT_NEAR(c.y, 1.0 / 3.0, 1e-15);
  try {
    chromaticity_of({0, 0, 0});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kZeroTristimulus);
  }
}

TEST(ChromaticityOf, RoundTripProperty) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 2000; ++i) {
    const double y = 0.01 + 0.99 * u(rng);
    const double x = (1.0 - y) * u(rng);
    const double Y = 1e-3 + (1.0 - 1e-3) * u(rng);
    const auto t = xyY_to_XYZ({x, y}, Y);
    const auto c = chromaticity_of(t);
    ASSERT_NEAR(c.x, x, 1e-12);
    ASSERT_NEAR(c.y, y, 1e-12);
    ASSERT_EQ(t.Y, Y);
  }
}

TEST(XyzToLinear, WhiteAndBlack) {
  const auto w = XYZ_to_linear_sRGB({0.95047, 1.0, 1.08883});
  EXPECT_NEAR(w.r, 1.0, 2e-3);
  EXPECT_NEAR(w.g, 1.0, 2e-3);
  EXPECT_NEAR(w.b, 1.0, 2e-3);
  // Frozen from a 30-digit evaluation of the pinned matrix.
  EXPECT_NEAR(w.r, 1.000159168982066, 1e-13);
  EXPECT_NEAR(w.g, 0.999976895688488, 1e-13);
  EXPECT_NEAR(w.b, 0.999760056813698, 1e-13);
  EXPECT_EQ(XYZ_to_linear_sRGB({0, 0, 0}), (LinearRGB{0, 0, 0}));
}

TEST(XyzToLinear, MatrixRowsMatchIecTable) {
  const double iec[3][3] = {{3.2406, -1.5372, -0.4986}, {-0.9689, 1.8758, 0.0415}, {0.0557, -0.2040, 1.0570}};
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) EXPECT_NEAR(kXyzToLinearSrgb[i][j], iec[i][j], 5e-4);
  }
  // The two pinned matrices are inverses.
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      double s = 0;
      for (int k = 0; k < 3; ++k) s += kXyzToLinearSrgb[i][k] * kLinearSrgbToXyz[k][j];
      EXPECT_NEAR(s, i == j ? 1.0 : 0.0, 1e-14);
    }
  }
}

TEST(XyzToLinear, GreenOutsideTriangleHasNegativeChannel) {
  const Chromaticity green{0.150, 0.680};
  ASSERT_FALSE(inside_srgb_triangle(green));
  const auto l = XYZ_to_linear_sRGB(xyY_to_XYZ(green, 0.4));
  EXPECT_TRUE(l.r < 0 || l.g < 0 || l.b < 0);
  EXPECT_NEAR(l.r, -0.378846411006939, 1e-12);
  EXPECT_FALSE(in_gamut(l));
}

TEST(XyzToLinear, Linearity) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 500; ++i) {
    const TristimulusXYZ t{u(rng), u(rng), u(rng)};
    const double a = 2.0 * u(rng);
    const auto base = XYZ_to_linear_sRGB(t);
    const auto scaled = XYZ_to_linear_sRGB({a * t.X, a * t.Y, a * t.Z});
    for (int c = 0; c < 3; ++c) {
      const double want = a * base.channel(c);
      ASSERT_NEAR(scaled.channel(c), want, 1e-12 * std::max(1.0, std::abs(want)));
    }
  }
}

TEST(Encoding, KnownCodes) {
  EXPECT_EQ(linear_to_encoded({0, 0, 0}), (EncodedSRGB{0, 0, 0}));
  EXPECT_EQ(linear_to_encoded({1, 1, 1}), (EncodedSRGB{255, 255, 255}));
  // 1.055 * 0.5^(1/2.4) - 0.055 = 0.735357..., x255 = 187.516 -> 188.
  EXPECT_EQ(linear_to_encoded({0.5, 0.5, 0.5}), (EncodedSRGB{188, 188, 188}));
}

TEST(Encoding, ToleranceBandIsClampedBeyondIsRejected) {
  EXPECT_EQ(linear_to_encoded({-5e-10, 1.0 + 5e-10, 0.5}), (EncodedSRGB{0, 255, 188}));
  try {
    linear_to_encoded({-0.01, 0.5, 0.5});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kOutOfGamut);
  }
  EXPECT_THROW(linear_to_encoded({0.5, 1.0 + 2e-9, 0.5}), Error);
  EXPECT_THROW(linear_to_encoded({std::nan(""), 0.5, 0.5}), Error);
}

TEST(Decoding, KnownValues) {
  EXPECT_EQ(encoded_to_linear({255, 255, 255}), (LinearRGB{1, 1, 1}));
  EXPECT_EQ(encoded_to_linear({0, 0, 0}), (LinearRGB{0, 0, 0}));
  // ((188/255 + 0.055) / 1.055)^2.4 = 0.5028864580...
  EXPECT_NEAR(encoded_to_linear({188, 188, 188}).r, 0.502886458032568, 1e-12);
}

TEST(Decoding, EveryCodeSurvivesRoundTrip) {
  for (int c = 0; c < 256; ++c) {
    const auto code = static_cast<std::uint8_t>(c);
    const EncodedSRGB gray{code, code, code};
    ASSERT_EQ(linear_to_encoded(encoded_to_linear(gray)), gray) << c;
    const EncodedSRGB mixed{code, static_cast<std::uint8_t>(255 - c), static_cast<std::uint8_t>((c * 7) % 256)};
    ASSERT_EQ(linear_to_encoded(encoded_to_linear(mixed)), mixed) << c;
  }
}

TEST(Decoding, LinearQuantizationErrorBelowHalfCodeTimesSlope) {
  // Rounding moves the encoded value by at most half a code; the decode curve
  // is steepest at 1, where its slope is 2.4 / 1.055.
  const double bound = 0.5 * (2.4 / 1.055) / 255.0;
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 5000; ++i) {
    const LinearRGB l{u(rng), u(rng), u(rng)};
    const auto back = encoded_to_linear(linear_to_encoded(l));
    for (int c = 0; c < 3; ++c) ASSERT_LE(std::abs(back.channel(c) - l.channel(c)), bound);
  }
}

TEST(InGamut, Examples) {
  EXPECT_TRUE(in_gamut({0.2, 0.9, 0.0}));
  EXPECT_FALSE(in_gamut({-0.01, 0.5, 0.5}));
  EXPECT_EQ(first_out_of_gamut_channel({0.5, 1.2, -1.0}), 1);
}

TEST(InGamut, AgreesWithPrimaryTriangleAwayFromEdges) {
  // At low Y only the triangle constraint binds; sample away from its edges.
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  int checked = 0;
  for (int i = 0; i < 4000; ++i) {
    const Chromaticity c{0.05 + 0.7 * u(rng), 0.02 + 0.8 * u(rng)};
    if (c.x + c.y > 1.0) continue;
    const auto l = linear_of(c, 0.01);
    const bool margin = std::min({l.r, l.g, l.b}) < -1e-4 || std::min({l.r, l.g, l.b}) > 1e-4;
    if (!margin) continue;
    ASSERT_EQ(in_gamut(l), inside_srgb_triangle(c)) << c.x << ", " << c.y;
    ++checked;
  }
  EXPECT_GT(checked, 1000);
}

}  // namespace
}  // namespace colorvib
