#include "colorvib/config.hpp"

#include <cmath>

#include "colorvib/serialize.hpp"

namespace colorvib {

using nlohmann::json;

namespace {

const char* policy_name(GridPolicyKind kind) {
  switch (kind) {
    case GridPolicyKind::kGamutCapped: return "gamut_capped";
    case GridPolicyKind::kUniform: return "uniform";
    case GridPolicyKind::kExplicit: return "explicit";
  }
  return "?";
}

GridPolicy policy_from_json(const json& j) {
  GridPolicy p;
  const auto name = j.value("policy", std::string("gamut_capped"));
  if (name == "gamut_capped") {
    p.kind = GridPolicyKind::kGamutCapped;
  } else if (name == "uniform") {
    p.kind = GridPolicyKind::kUniform;
  } else if (name == "explicit") {
    p.kind = GridPolicyKind::kExplicit;
    for (const auto& [id, values] : j.at("values").items()) {
      p.values[std::stoi(id)] = values.get<std::vector<double>>();
    }
  } else {
    throw Error(ErrorCode::kFormat, "unknown r_grid policy '" + name + "'");
  }
  p.params.count = j.value("count", p.params.count);
  p.params.r_min = j.value("r_min", p.params.r_min);
  p.params.r_max = j.value("r_max", p.params.r_max);
  p.params.cap_fraction = j.value("cap_fraction", p.params.cap_fraction);
  p.params.search_hi = j.value("search_hi", p.params.search_hi);
  if (p.params.count == 0 || !(p.params.r_min >= 0.0) || !(p.params.r_max >= p.params.r_min) ||
      !(p.params.cap_fraction > 0.0) || !(p.params.search_hi > 0.0)) {
    throw Error(ErrorCode::kFormat, "invalid r_grid parameters");
  }
  return p;
}

}  // namespace

ExperimentConfig config_from_json(const json& j) {
  if (!j.is_object()) throw Error(ErrorCode::kFormat, "config must be a JSON object");
  if (j.contains("schema_version") && j["schema_version"].get<int>() != kSchemaVersion) {
    throw Error(ErrorCode::kFormat, "unsupported config schema_version");
  }
  try {
    ExperimentConfig c;
    c.Y = j.value("Y", c.Y);
    if (j.contains("colors")) {
      const json& colors = j["colors"];
      if (colors.is_string()) {
        const auto s = colors.get<std::string>();
        if (s.rfind("auto", 0) != 0) throw Error(ErrorCode::kFormat, "colors must be ids or \"autoN\"");
        c.auto_color_count = s.size() > 4 ? std::stoul(s.substr(4)) : 8;
      } else {
        c.color_ids = colors.get<std::vector<int>>();
      }
    }
    if (j.contains("r_grid")) c.r_grid = policy_from_json(j["r_grid"]);
    if (j.contains("catch_count") && !j["catch_count"].is_string()) {
      c.catch_count = j["catch_count"].get<std::size_t>();
    }
    if (j.contains("max_pairs") && !j["max_pairs"].is_null()) {
      c.max_pairs = j["max_pairs"].get<std::size_t>();
    }
    c.seed = j.value("seed", c.seed);
    c.presentation.alternation_hz = j.value("alternation_hz", c.presentation.alternation_hz);
    c.presentation.square_cm = j.value("square_cm", c.presentation.square_cm);
    c.presentation.distance_cm = j.value("distance_cm", c.presentation.distance_cm);
    if (j.contains("display")) c.px_per_cm = j["display"].value("px_per_cm", c.px_per_cm);
    c.suspect_threshold = j.value("suspect_threshold", c.suspect_threshold);
    if (!(c.Y > 0.0 && c.Y <= 1.0)) throw Error(ErrorCode::kFormat, "Y must lie in (0, 1]");
    if (!(c.px_per_cm > 0.0)) throw Error(ErrorCode::kFormat, "display.px_per_cm must be > 0");
    return c;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kFormat, std::string("config: ") + e.what());
  } catch (const std::logic_error& e) {  // stoi / stoul
    throw Error(ErrorCode::kFormat, std::string("config: ") + e.what());
  }
}

json config_to_json(const ExperimentConfig& c) {
  json grid{{"policy", policy_name(c.r_grid.kind)},
            {"count", c.r_grid.params.count},
            {"r_min", c.r_grid.params.r_min},
            {"r_max", c.r_grid.params.r_max},
            {"cap_fraction", c.r_grid.params.cap_fraction},
            {"search_hi", c.r_grid.params.search_hi}};
  if (c.r_grid.kind == GridPolicyKind::kExplicit) {
    json values = json::object();
    for (const auto& [id, v] : c.r_grid.values) values[std::to_string(id)] = v;
    grid["values"] = values;
  }
  return json{{"schema_version", kSchemaVersion},
              {"Y", c.Y},
              {"colors", c.color_ids ? json(*c.color_ids)
                                     : json("auto" + std::to_string(c.auto_color_count))},
              {"r_grid", grid},
              {"catch_count", c.catch_count ? json(*c.catch_count) : json("match")},
              {"max_pairs", c.max_pairs ? json(*c.max_pairs) : json(nullptr)},
              {"seed", c.seed},
              {"alternation_hz", c.presentation.alternation_hz},
              {"square_cm", c.presentation.square_cm},
              {"distance_cm", c.presentation.distance_cm},
              {"display", {{"px_per_cm", c.px_per_cm}}},
              {"suspect_threshold", c.suspect_threshold}};
}

ExperimentConfig load_config(const std::string& path) { return config_from_json(read_json_file(path)); }

ExperimentConfig simulation_config() {
  ExperimentConfig c;
  c.max_pairs = 46;
  c.catch_count = 46;
  return c;
}

ResolvedColors resolve_colors(const ExperimentConfig& config) {
  ResolvedColors out;
  const auto& atlas = builtin_atlas();
  const auto& policy = config.r_grid;
  const double search_hi = policy.params.search_hi;

  auto grid_for = [&](const MacAdamEllipse& e, std::optional<double> known_max_r) {
    switch (policy.kind) {
      case GridPolicyKind::kGamutCapped: {
        if (known_max_r) return gamut_capped_grid(*known_max_r, policy.params);
        try {
          return gamut_capped_grid(max_in_gamut_r(e, config.Y, search_hi), policy.params);
        } catch (const Error& err) {
          if (err.code() != ErrorCode::kCenterOutOfGamut) throw;
          // Nothing to cap against; request the full range so every r is
          // accounted for as rejected.
          return linspace(policy.params.r_min, policy.params.r_max, policy.params.count);
        }
      }
      case GridPolicyKind::kUniform:
        return linspace(policy.params.r_min, policy.params.r_max, policy.params.count);
      case GridPolicyKind::kExplicit: {
        const auto it = policy.values.find(e.id);
        return it == policy.values.end() ? std::vector<double>{} : it->second;
      }
    }
    return std::vector<double>{};
  };

  if (config.color_ids) {
    for (int id : *config.color_ids) {
      const MacAdamEllipse& e = atlas_entry(id);
      out.ellipses.push_back(e);
      out.r_grid.push_back(grid_for(e, std::nullopt));
    }
  } else {
    for (const auto& ranked :
         rank_displayable_colors(atlas, config.Y, config.auto_color_count, search_hi)) {
      out.ellipses.push_back(ranked.ellipse);
      out.r_grid.push_back(grid_for(ranked.ellipse, ranked.max_r));
    }
  }
  return out;
}

StimulusSet stimulus_set_from_config(const ExperimentConfig& config) {
  const ResolvedColors colors = resolve_colors(config);
  StimulusSet set = build_stimulus_set(colors.ellipses, colors.r_grid, config.Y);
  if (config.max_pairs) set = limit_pairs(std::move(set), *config.max_pairs);
  return set;
}

Schedule schedule_from_config(const ExperimentConfig& config, const StimulusSet& set) {
  const std::size_t catch_count = config.catch_count.value_or(set.pairs.size());
  return build_schedule(set, catch_count, config.seed, config.presentation);
}

int square_px(const PresentationParams& presentation, double px_per_cm) {
  return static_cast<int>(std::lround(presentation.square_cm * px_per_cm));
}

}  // namespace colorvib
