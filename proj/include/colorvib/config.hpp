#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "colorvib/pairgen.hpp"
#include "colorvib/session.hpp"

namespace colorvib {

enum class GridPolicyKind {
  kGamutCapped,  // count values from r_min to min(r_max, cap_fraction * max_r)
  kUniform,      // count values from r_min to r_max for every color
  kExplicit,     // per-color lists keyed by ellipse id
};

struct GridPolicy {
  GridPolicyKind kind = GridPolicyKind::kGamutCapped;
  GamutCappedGrid params;
  std::map<int, std::vector<double>> values;  // kExplicit only
};

struct ExperimentConfig {
  double Y = kDefaultLuminance;
  std::optional<std::vector<int>> color_ids;  // nullopt = "auto8"
  std::size_t auto_color_count = 8;
  GridPolicy r_grid;
  std::optional<std::size_t> catch_count;  // nullopt = one per pair
  std::optional<std::size_t> max_pairs;
  std::uint64_t seed = 20240601;
  PresentationParams presentation;
  double px_per_cm = 96.0 / 2.54;
  double suspect_threshold = kDefaultSuspectThreshold;
};

ExperimentConfig config_from_json(const nlohmann::json& j);
nlohmann::json config_to_json(const ExperimentConfig& config);
ExperimentConfig load_config(const std::string& path);

// Defaults for `simulate`: 46 pairs shown with 46 catch
// trials, 92 presentations in total.
ExperimentConfig simulation_config();

struct ResolvedColors {
  std::vector<MacAdamEllipse> ellipses;
  std::vector<std::vector<double>> r_grid;
};

ResolvedColors resolve_colors(const ExperimentConfig& config);

StimulusSet stimulus_set_from_config(const ExperimentConfig& config);

Schedule schedule_from_config(const ExperimentConfig& config, const StimulusSet& set);

int square_px(const PresentationParams& presentation, double px_per_cm);

}  // namespace colorvib
