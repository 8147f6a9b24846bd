#include "colorvib/config.hpp"

#include <gtest/gtest.h>

namespace colorvib {
namespace {

using nlohmann::json;

TEST(Config, DefaultsMatchExperiment) {
  const ExperimentConfig c = config_from_json(json::object());
  EXPECT_EQ(c.Y, 0.4);
  EXPECT_FALSE(c.color_ids.has_value());
  EXPECT_EQ(c.auto_color_count, 8u);
  EXPECT_EQ(c.presentation.alternation_hz, 30.0);
  EXPECT_GT(c.presentation.alternation_hz, kCriticalFusionHz);
  EXPECT_EQ(c.presentation.square_cm, 15.0);
  EXPECT_EQ(c.presentation.distance_cm, 60.0);
  EXPECT_EQ(c.suspect_threshold, 0.2);
  EXPECT_FALSE(c.catch_count.has_value());
}

TEST(Config, JsonRoundTrip) {
  const json doc = json::parse(R"({
    "schema_version": 1, "Y": 0.35, "colors": [13, 20, 9],
    "r_grid": {"policy": "uniform", "count": 5, "r_min": 2, "r_max": 20},
    "catch_count": 12, "max_pairs": 10, "seed": 99, "alternation_hz": 40,
    "square_cm": 10, "distance_cm": 50, "display": {"px_per_cm": 40}, "suspect_threshold": 0.3
  })");
  const ExperimentConfig c = config_from_json(doc);
  EXPECT_EQ(c.Y, 0.35);
  EXPECT_EQ(*c.color_ids, (std::vector<int>{13, 20, 9}));
  EXPECT_EQ(c.r_grid.kind, GridPolicyKind::kUniform);
  EXPECT_EQ(c.r_grid.params.count, 5u);
  EXPECT_EQ(*c.catch_count, 12u);
  EXPECT_EQ(*c.max_pairs, 10u);
  EXPECT_EQ(c.seed, 99u);
  EXPECT_EQ(c.px_per_cm, 40.0);
  const ExperimentConfig again = config_from_json(config_to_json(c));
  EXPECT_EQ(config_to_json(again), config_to_json(c));
}

TEST(Config, ExplicitGrid) {
  const auto c = config_from_json(json::parse(
      R"({"colors": [13, 4], "r_grid": {"policy": "explicit", "values": {"13": [1, 2, 3], "4": [1]}}})"));
  const auto set = stimulus_set_from_config(c);
  EXPECT_EQ(set.pairs.size(), 3u);
  EXPECT_EQ(set.rejected.size(), 1u);
  EXPECT_EQ(config_to_json(config_from_json(config_to_json(c))), config_to_json(c));
}

TEST(Config, BadDocuments) {
  EXPECT_THROW(config_from_json(json::parse(R"({"schema_version": 2})")), Error);
  EXPECT_THROW(config_from_json(json::parse(R"({"Y": 0})")), Error);
  EXPECT_THROW(config_from_json(json::parse(R"({"colors": "everything"})")), Error);
  EXPECT_THROW(config_from_json(json::parse(R"({"r_grid": {"policy": "spiral"}})")), Error);
  EXPECT_THROW(config_from_json(json::parse(R"({"r_grid": {"count": 0}})")), Error);
  EXPECT_THROW(config_from_json(json::parse(R"({"seed": "abc"})")), Error);
  EXPECT_THROW(config_from_json(json::parse(R"([1, 2])")), Error);
}

TEST(Config, DefaultStimulusSetLedger) {
  const auto set = stimulus_set_from_config(ExperimentConfig{});
  EXPECT_EQ(set.color_ids, (std::vector<int>{13, 20, 14, 15, 9, 12, 23, 10}));
  EXPECT_EQ(set.pairs.size() + set.rejected.size(), 64u);
  for (const auto& grid : set.r_grid) {
    EXPECT_EQ(grid.size(), 8u);
    EXPECT_EQ(grid.front(), 1.0);
    EXPECT_LE(grid.back(), 40.0);
  }
  // Colors 13 and 20 never leave the gamut on [0, 50], so their grid runs to 40.
  EXPECT_EQ(set.r_grid[0].back(), 40.0);
  EXPECT_EQ(set.r_grid[1].back(), 40.0);
}

TEST(Config, UniformGridRejectsOutOfGamutPairs) {
  ExperimentConfig c;
  c.r_grid.kind = GridPolicyKind::kUniform;
  const auto set = stimulus_set_from_config(c);
  EXPECT_EQ(set.pairs.size() + set.rejected.size(), 64u);
  // Independent numpy count of in-gamut pairs for 8 values on [1, 40].
  EXPECT_EQ(set.pairs.size(), 33u);
}

TEST(Config, SimulationConfigGivesNinetyTwoTrials) {
  const auto c = simulation_config();
  const auto set = stimulus_set_from_config(c);
  EXPECT_EQ(set.pairs.size(), 46u);
  EXPECT_EQ(set.pairs.size() + set.rejected.size(), 64u);
  EXPECT_EQ(schedule_from_config(c, set).trials.size(), 92u);
}

TEST(Config, OutOfGamutExplicitColorIsAccountedFor) {
  ExperimentConfig c;
  c.color_ids = std::vector<int>{4, 13};
  const auto set = stimulus_set_from_config(c);
  EXPECT_EQ(set.pairs.size() + set.rejected.size(), 16u);
  EXPECT_EQ(std::count_if(set.rejected.begin(), set.rejected.end(),
                          [](const RejectedPair& r) { return r.source_id == 4; }),
            8);
  EXPECT_THROW(
      {
        ExperimentConfig bad;
        bad.color_ids = std::vector<int>{42};
        stimulus_set_from_config(bad);
      },
      Error);
}

TEST(Config, SquarePixels) {
  EXPECT_EQ(square_px({30.0, 15.0, 60.0}, 40.0), 600);
  EXPECT_EQ(square_px({30.0, 15.0, 60.0}, 96.0 / 2.54), 567);
}

}  // namespace
}  // namespace colorvib
