#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "salvo/sim.hpp"

namespace salvo {

/// Built-in scenarios. "example1": known sinusoidal target maneuver;
/// "example2": exogenous maneuver estimated by the disturbance observer.
std::vector<std::string> preset_names();
std::optional<ScenarioConfig> preset(const std::string& name);

/// JSON text, keys mirroring ScenarioConfig field names. Angles in rad,
/// distances in km, times in s.
std::string to_json(const ScenarioConfig& cfg);
/// Throws ParseError on malformed text or missing keys, ValidationError
/// listing every violated invariant otherwise.
ScenarioConfig from_json(const std::string& text);

ScenarioConfig load_scenario(const std::filesystem::path& path);
void save_scenario(const ScenarioConfig& cfg, const std::filesystem::path& path);

/// A preset name, or else a path to a config file.
ScenarioConfig resolve_scenario(const std::string& preset_or_path);

struct Overrides {
  std::optional<double> h;
  std::optional<double> t_end;
  std::optional<double> intercept_eps;
};

/// Applies the overrides and revalidates.
ScenarioConfig apply_overrides(ScenarioConfig cfg, const Overrides& o);

}  // namespace salvo
