#include "colorvib/pairgen.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cstdlib>
#include <set>

namespace colorvib {
namespace {

constexpr double kY = 0.4;

TEST(MakePair, ZeroRatioIsDegenerate) {
  const auto p = make_pair(atlas_entry(13), 0.0, kY);
  EXPECT_EQ(p.plus_srgb, p.minus_srgb);
  EXPECT_EQ(p.plus_srgb, p.fused_srgb);
  EXPECT_EQ(p.plus_xy, atlas_entry(13).center);
}

TEST(MakePair, EllipseOneCenterIsNotDisplayable) {
  // Centre (0.160, 0.057) has linear g = -0.1096 at Y = 0.4.
  EXPECT_THROW(make_pair(atlas_entry(1), 0.0, kY), OutOfGamutError);
}

TEST(MakePair, GreenEllipseIsOutOfGamut) {
  try {
    make_pair(atlas_entry(4), 1.0, kY);
    FAIL() << "expected OutOfGamut";
  } catch (const OutOfGamutError& e) {
    EXPECT_EQ(e.code(), ErrorCode::kOutOfGamut);
    EXPECT_EQ(e.channel(), 0);  // red goes negative
    EXPECT_LT(e.value(), 0.0);
  }
  EXPECT_THROW(make_pair(atlas_entry(4), 0.0, kY), OutOfGamutError);
}

TEST(MakePair, NearWhiteUnitStep) {
  // Frozen from a 30-digit evaluation of the xyY -> sRGB pipeline.
  const auto p = make_pair(atlas_entry(13), 1.0, kY);
  EXPECT_EQ(p.plus_srgb, (EncodedSRGB{167, 170, 173}));
  EXPECT_EQ(p.minus_srgb, (EncodedSRGB{164, 171, 176}));
  EXPECT_EQ(p.fused_srgb, (EncodedSRGB{166, 170, 175}));
  EXPECT_LE(std::abs(p.plus_srgb.r - p.minus_srgb.r), 3);
  EXPECT_LE(std::abs(p.plus_srgb.g - p.minus_srgb.g), 3);
  EXPECT_LE(std::abs(p.plus_srgb.b - p.minus_srgb.b), 3);
}

TEST(MakePair, ArgumentChecks) {
  EXPECT_THROW(make_pair(atlas_entry(13), -0.5, kY), Error);
  EXPECT_THROW(make_pair(atlas_entry(13), 1.0, 0.0), Error);
  EXPECT_THROW(make_pair(atlas_entry(13), 1.0, 1.5), Error);
  try {
    make_pair(atlas_entry(1), 1000.0, kY);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kChromaticityOutOfDiagram);
  }
}

TEST(MakePair, LuminanceEqualityAndBetweenness) {
  for (const auto& e : builtin_atlas()) {
    for (double r = 0.0; r <= 40.0; r += 0.75) {
      const auto res = evaluate_pair(e, r, kY);
      const auto* p = std::get_if<ColorVibrationPair>(&res);
      if (!p) continue;
      EXPECT_EQ(xyY_to_XYZ(p->plus_xy, p->Y).Y, kY);
      EXPECT_EQ(xyY_to_XYZ(p->minus_xy, p->Y).Y, kY);
      EXPECT_NEAR(linear_sRGB_to_XYZ(linear_of(p->plus_xy, kY)).Y, kY, 1e-12);
      EXPECT_NEAR(linear_sRGB_to_XYZ(linear_of(p->minus_xy, kY)).Y, kY, 1e-12);
      const auto lp = linear_of(p->plus_xy, kY), lm = linear_of(p->minus_xy, kY);
      const auto lf = linear_of(e.center, kY);
      for (int c = 0; c < 3; ++c) {
        const double lo = std::min(lp.channel(c), lm.channel(c));
        const double hi = std::max(lp.channel(c), lm.channel(c));
        EXPECT_GE(lf.channel(c), lo - 2e-2);
        EXPECT_LE(lf.channel(c), hi + 2e-2);
      }
    }
  }
}

TEST(DisplayableCenters, EightAtDefaultLuminance) {
  // Independent numpy evaluation of the gamut test on the 25 centres.
  EXPECT_EQ(displayable_center_ids(builtin_atlas(), kY),
            (std::vector<int>{9, 10, 12, 13, 14, 15, 20, 23}));
}

TEST(MaxInGamutR, NearWhiteReachesUpperBound) {
  EXPECT_EQ(max_in_gamut_r(atlas_entry(13), kY, 5.0), 5.0);
}

TEST(MaxInGamutR, MatchesIndependentBisection) {
  // Frozen from an independent numpy bisection on [0, 50].
  EXPECT_NEAR(max_in_gamut_r(atlas_entry(9), kY, 50.0), 11.0511698, 2e-6);
  EXPECT_NEAR(max_in_gamut_r(atlas_entry(14), kY, 50.0), 32.2783947, 2e-6);
  EXPECT_NEAR(max_in_gamut_r(atlas_entry(10), kY, 50.0), 8.0343142, 2e-6);
  EXPECT_EQ(max_in_gamut_r(atlas_entry(20), kY, 50.0), 50.0);
}

TEST(MaxInGamutR, CenterOnBoundaryGivesZero) {
  const MacAdamEllipse e = atlas_entry(14);
  const double r_star = max_in_gamut_r(e, kY, 50.0);
  MacAdamEllipse edge = e;
  edge.center = endpoints(e, r_star).plus;
  EXPECT_NEAR(max_in_gamut_r(edge, kY, 10.0), 0.0, 1e-5);
}

TEST(MaxInGamutR, MonotoneInUpperBound) {
  for (int id : {9, 12, 14, 15, 23}) {
    double previous = 0.0;
    for (double hi = 0.5; hi <= 50.0; hi += 0.5) {
      const double r = max_in_gamut_r(atlas_entry(id), kY, hi);
      EXPECT_GE(r, previous - 1e-6);  // bisection resolution
      EXPECT_LE(r, hi);
      previous = r;
    }
  }
}

TEST(MaxInGamutR, Errors) {
  try {
    max_in_gamut_r(atlas_entry(4), kY, 10.0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kCenterOutOfGamut);
  }
  EXPECT_THROW(max_in_gamut_r(atlas_entry(13), kY, 0.0), Error);
}

TEST(GamutSampling, PrefixIntervalOnEveryEllipse) {
  const auto r = linspace(0.0, 50.0, 1000);
  for (const auto& e : builtin_atlas()) {
    const auto flags = sample_gamut(e, kY, r);
    EXPECT_TRUE(is_prefix_interval(flags)) << e.id;
    EXPECT_EQ(flags, sample_gamut_serial(e, kY, r)) << e.id;
  }
}

TEST(GamutSampling, PrefixPredicate) {
  const std::vector<std::uint8_t> ok1{1, 1, 0, 0}, ok2{0, 0}, ok3{}, bad{1, 0, 1};
  EXPECT_TRUE(is_prefix_interval(ok1));
  EXPECT_TRUE(is_prefix_interval(ok2));
  EXPECT_TRUE(is_prefix_interval(ok3));
  EXPECT_FALSE(is_prefix_interval(bad));
}

TEST(Linspace, Endpoints) {
  EXPECT_EQ(linspace(1.0, 40.0, 8).front(), 1.0);
  EXPECT_EQ(linspace(1.0, 40.0, 8).back(), 40.0);
  EXPECT_EQ(linspace(2.0, 9.0, 1), (std::vector<double>{2.0}));
  EXPECT_TRUE(linspace(0.0, 1.0, 0).empty());
}

TEST(StimulusSet, AllInGamutCounts) {
  std::vector<MacAdamEllipse> colors;
  std::vector<std::vector<double>> grid;
  for (int id : {9, 10, 12, 13, 14, 15, 20, 23}) {
    colors.push_back(atlas_entry(id));
    grid.push_back(linspace(0.5, 4.0, 8));
  }
  const auto set = build_stimulus_set(colors, grid, kY);
  EXPECT_EQ(set.pairs.size(), 64u);
  EXPECT_TRUE(set.rejected.empty());
}

TEST(StimulusSet, EmptyRequests) {
  const auto none = build_stimulus_set({}, {}, kY);
  EXPECT_TRUE(none.pairs.empty());
  EXPECT_TRUE(none.rejected.empty());
  const std::vector<MacAdamEllipse> colors{atlas_entry(13)};
  const std::vector<std::vector<double>> empty_lists{{}};
  EXPECT_TRUE(build_stimulus_set(colors, empty_lists, kY).pairs.empty());
  EXPECT_TRUE(build_stimulus_set(colors, {}, kY).pairs.empty());
  const std::vector<std::vector<double>> mismatched{{1.0}, {2.0}};
  EXPECT_THROW(build_stimulus_set(colors, mismatched, kY), Error);
}

TEST(StimulusSet, CoversEveryRequestOnceInOrder) {
  std::vector<MacAdamEllipse> colors{atlas_entry(20), atlas_entry(4), atlas_entry(9)};
  std::vector<std::vector<double>> grid{{30.0, 1.0, 60.0}, {1.0, 2.0}, {5.0, 20.0, 1.0}};
  const auto set = build_stimulus_set(colors, grid, kY);
  EXPECT_EQ(set.pairs.size() + set.rejected.size(), 8u);
  std::multiset<std::pair<int, double>> seen;
  for (const auto& p : set.pairs) seen.insert({p.source_id, p.r});
  for (const auto& p : set.rejected) seen.insert({p.source_id, p.r});
  std::multiset<std::pair<int, double>> want;
  for (std::size_t i = 0; i < colors.size(); ++i) {
    for (double r : grid[i]) want.insert({colors[i].id, r});
  }
  EXPECT_EQ(seen, want);
  for (std::size_t i = 1; i < set.pairs.size(); ++i) {
    EXPECT_LE(std::pair(set.pairs[i - 1].source_id, set.pairs[i - 1].r),
              std::pair(set.pairs[i].source_id, set.pairs[i].r));
  }
  for (const auto& rej : set.rejected) {
    EXPECT_TRUE(rej.reason == kReasonOutOfGamut || rej.reason == kReasonOutOfDiagram) << rej.reason;
    EXPECT_FALSE(rej.detail.empty());
  }
  EXPECT_EQ(set.color_ids, (std::vector<int>{20, 4, 9}));
}

TEST(StimulusSet, ParallelMatchesSerial) {
  std::vector<std::vector<double>> grid(builtin_atlas().size(), linspace(0.0, 45.0, 37));
  const auto par = build_stimulus_set(builtin_atlas(), grid, kY);
  const auto ser = build_stimulus_set_serial(builtin_atlas(), grid, kY);
  EXPECT_EQ(par, ser);
  EXPECT_EQ(par.pairs.size() + par.rejected.size(), 25u * 37u);
}

TEST(DefaultConfiguration, RankedColorsAndGrids) {
  const auto ranked = rank_displayable_colors(builtin_atlas(), kY, 8, 50.0);
  ASSERT_EQ(ranked.size(), 8u);
  EXPECT_EQ(ranked[0].ellipse.id, 13);
  EXPECT_EQ(ranked[1].ellipse.id, 20);
  EXPECT_EQ(ranked[2].ellipse.id, 14);
  for (std::size_t i = 1; i < ranked.size(); ++i) EXPECT_GE(ranked[i - 1].max_r, ranked[i].max_r);

  std::vector<MacAdamEllipse> colors;
  std::vector<std::vector<double>> grid;
  for (const auto& rc : ranked) {
    colors.push_back(rc.ellipse);
    grid.push_back(gamut_capped_grid(rc.max_r, {}));
    EXPECT_EQ(grid.back().size(), 8u);
    EXPECT_EQ(grid.back().front(), 1.0);
    EXPECT_LE(grid.back().back(), 40.0);
  }
  const auto set = build_stimulus_set(colors, grid, kY);
  EXPECT_EQ(set.pairs.size() + set.rejected.size(), 64u);
}

TEST(LimitPairs, KeepsStridedSubset) {
  std::vector<MacAdamEllipse> colors;
  std::vector<std::vector<double>> grid;
  for (int id : {9, 10, 12, 13, 14, 15, 20, 23}) {
    colors.push_back(atlas_entry(id));
    grid.push_back(linspace(1.0, 4.0, 8));
  }
  const auto full = build_stimulus_set(colors, grid, kY);
  const auto limited = limit_pairs(full, 46);
  EXPECT_EQ(limited.pairs.size(), 46u);
  EXPECT_EQ(limited.rejected.size(), 18u);
  for (const auto& r : limited.rejected) EXPECT_EQ(r.reason, kReasonOmitted);
  EXPECT_EQ(limited.pairs.front(), full.pairs.front());
  EXPECT_EQ(limit_pairs(full, 100), full);
  EXPECT_EQ(limit_pairs(full, 46), limited);
}

}  // namespace
}  // namespace colorvib
