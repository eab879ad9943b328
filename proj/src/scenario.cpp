#include "salvo/scenario.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "salvo/errors.hpp"

namespace salvo {

using nlohmann::json;

namespace {

// Initial LOS angle, heading and range of the four attackers.
constexpr double kLambda0[4] = {-0.8851, 0.6528, -1.3135, 1.2178};
constexpr double kGamma0[4] = {0.6283, -1.0472, -1.0472, 1.5708};
constexpr double kRange0[4] = {7.1063, 10.7005, 9.8234, 10.1242};

ScenarioConfig four_attacker_base() {
  ScenarioConfig cfg;
  for (int i = 0; i < 4; ++i) cfg.attackers.push_back({0.7, kGamma0[i], kRange0[i], kLambda0[i]});
  cfg.target = {6.5, 0.5, 1.0472, 1.0, 0.0};
  cfg.graph = CommGraph::ring(4).weights();
  for (const auto& a : cfg.attackers) cfg.params.R0.push_back(a.R0);
  cfg.mu0 = 1.0;
  cfg.z0 = 0.0;
  cfg.h = 1e-3;
  cfg.intercept_eps = 0.01;
  return cfg;
}

ScenarioConfig example1() {
  ScenarioConfig cfg = four_attacker_base();
  cfg.name = "example1";
  cfg.maneuver = SinusoidManeuver{0.1, 10.0};
  cfg.params.kappa1 = 4.0;
  cfg.params.kappa2 = 4.0;
  cfg.params.c = 0.0;
  cfg.params.s = 0.0;
  cfg.mode = GuidanceMode::known_accel;
  cfg.t_end = 20.0;
  return cfg;
}

ScenarioConfig example2() {
  ScenarioConfig cfg = four_attacker_base();
  cfg.name = "example2";
  cfg.target.gamma_T = -1.0472;
  cfg.maneuver = ExogenousManeuver{0.1, -2.0};
  cfg.params.kappa1 = 5.0;
  cfg.params.kappa2 = 5.0;
  cfg.params.c = 0.0;
  cfg.params.s = -2.0;
  cfg.mode = GuidanceMode::observer;
  cfg.t_end = 25.0;
  return cfg;
}

ScenarioConfig distributed(ScenarioConfig cfg) {
  cfg.name += "_distributed";
  cfg.info = {InfoMode::distributed, {0}};
  return cfg;
}

const char* mode_name(GuidanceMode m) {
  return m == GuidanceMode::observer ? "observer" : "known_accel";
}

template <typename T>
T get(const json& j, const char* key, const std::string& where) {
  if (!j.is_object() || !j.contains(key)) throw ParseError(where + ": missing key '" + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ParseError(where + "." + key + ": " + e.what());
  }
}

template <typename T>
T get_or(const json& j, const char* key, T fallback, const std::string& where) {
  return j.contains(key) ? get<T>(j, key, where) : fallback;
}

}  // namespace

std::vector<std::string> preset_names() {
  return {"example1", "example2", "example1_distributed", "example2_distributed"};
}

std::optional<ScenarioConfig> preset(const std::string& name) {
  if (name == "example1") return example1();
  if (name == "example2") return example2();
  if (name == "example1_distributed") return distributed(example1());
  if (name == "example2_distributed") return distributed(example2());
  return std::nullopt;
}

std::string to_json(const ScenarioConfig& cfg) {
  json j;
  j["name"] = cfg.name;
  j["attackers"] = json::array();
  for (const auto& a : cfg.attackers)
    j["attackers"].push_back({{"V", a.V}, {"gamma0", a.gamma0}, {"R0", a.R0}, {"lambda0", a.lambda0}});
  j["target"] = {{"x", cfg.target.x},
                 {"y", cfg.target.y},
                 {"gamma_T", cfg.target.gamma_T},
                 {"V_T", cfg.target.V_T}};
  if (const auto* m = std::get_if<SinusoidManeuver>(&cfg.maneuver))
    j["maneuver"] = {{"profile", "sinusoid"}, {"amplitude", m->amplitude}, {"omega", m->omega}};
  else {
    const auto& e = std::get<ExogenousManeuver>(cfg.maneuver);
    j["maneuver"] = {{"profile", "exogenous"}, {"A0", e.A0}, {"s", e.s}};
  }
  j["graph"] = {{"weights", cfg.graph}};
  j["params"] = {{"kappa1", cfg.params.kappa1},
                 {"kappa2", cfg.params.kappa2},
                 {"c", cfg.params.c},
                 {"s", cfg.params.s}};
  j["mu0"] = cfg.mu0;
  j["z0"] = cfg.z0;
  j["mode"] = mode_name(cfg.mode);
  if (cfg.info.mode == InfoMode::distributed)
    j["info_mode"] = {{"mode", "distributed"}, {"observers", cfg.info.observers}};
  else
    j["info_mode"] = {{"mode", "omniscient"}};
  j["h"] = cfg.h;
  j["t_end"] = cfg.t_end;
  j["intercept_eps"] = cfg.intercept_eps;
  return j.dump(2) + "\n";
}

ScenarioConfig from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("config: ") + e.what());
  }
  if (!j.is_object()) throw ParseError("config: top level must be an object");

  ScenarioConfig cfg;
  cfg.name = get_or<std::string>(j, "name", "", "config");

  const json attackers = get<json>(j, "attackers", "config");
  if (!attackers.is_array()) throw ParseError("config.attackers: expected an array");
  for (std::size_t i = 0; i < attackers.size(); ++i) {
    const std::string where = "attackers[" + std::to_string(i) + "]";
    const json& a = attackers[i];
    cfg.attackers.push_back({get<double>(a, "V", where), get<double>(a, "gamma0", where),
                             get<double>(a, "R0", where), get<double>(a, "lambda0", where)});
    cfg.params.R0.push_back(cfg.attackers.back().R0);
  }

  const json target = get<json>(j, "target", "config");
  cfg.target = {get<double>(target, "x", "target"), get<double>(target, "y", "target"),
                get<double>(target, "gamma_T", "target"), get<double>(target, "V_T", "target"), 0.0};

  const json maneuver = get<json>(j, "maneuver", "config");
  const auto profile = get<std::string>(maneuver, "profile", "maneuver");
  try {
    cfg.maneuver = maneuver_from_name(profile);
  } catch (const std::invalid_argument& e) {
    throw ParseError(std::string("maneuver: ") + e.what());
  }
  if (auto* m = std::get_if<SinusoidManeuver>(&cfg.maneuver)) {
    m->amplitude = get_or<double>(maneuver, "amplitude", m->amplitude, "maneuver");
    m->omega = get_or<double>(maneuver, "omega", m->omega, "maneuver");
  } else {
    auto& e = std::get<ExogenousManeuver>(cfg.maneuver);
    e.A0 = get_or<double>(maneuver, "A0", e.A0, "maneuver");
    e.s = get_or<double>(maneuver, "s", e.s, "maneuver");
  }

  cfg.graph = get<std::vector<std::vector<double>>>(get<json>(j, "graph", "config"), "weights", "graph");

  const json params = get<json>(j, "params", "config");
  cfg.params.kappa1 = get<double>(params, "kappa1", "params");
  cfg.params.kappa2 = get<double>(params, "kappa2", "params");
  cfg.params.c = get<double>(params, "c", "params");
  cfg.params.s = get_or<double>(params, "s", 0.0, "params");

  cfg.mu0 = get_or<double>(j, "mu0", 1.0, "config");
  cfg.z0 = get_or<double>(j, "z0", 0.0, "config");

  const auto mode = get<std::string>(j, "mode", "config");
  if (mode == "known_accel")
    cfg.mode = GuidanceMode::known_accel;
  else if (mode == "observer")
    cfg.mode = GuidanceMode::observer;
  else
    throw ParseError("config.mode: expected 'known_accel' or 'observer', got '" + mode + "'");

  if (j.contains("info_mode")) {
    const json info = j.at("info_mode");
    const auto kind = get<std::string>(info, "mode", "info_mode");
    if (kind == "omniscient") {
      cfg.info = {};
    } else if (kind == "distributed") {
      cfg.info.mode = InfoMode::distributed;
      cfg.info.observers = get<std::vector<std::size_t>>(info, "observers", "info_mode");
    } else {
      throw ParseError("info_mode.mode: expected 'omniscient' or 'distributed', got '" + kind + "'");
    }
  }

  cfg.h = get_or<double>(j, "h", 1e-3, "config");
  cfg.t_end = get<double>(j, "t_end", "config");
  cfg.intercept_eps = get_or<double>(j, "intercept_eps", 0.01, "config");

  validate_or_throw(cfg);
  return cfg;
}

ScenarioConfig load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open config '" + path.string() + "'");
  std::ostringstream text;
  text << in.rdbuf();
  return from_json(text.str());
}

void save_scenario(const ScenarioConfig& cfg, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write config '" + path.string() + "'");
  out << to_json(cfg);
  if (!out) throw std::runtime_error("write failed for '" + path.string() + "'");
}

ScenarioConfig resolve_scenario(const std::string& preset_or_path) {
  if (auto p = preset(preset_or_path)) return *p;
  return load_scenario(preset_or_path);
}

ScenarioConfig apply_overrides(ScenarioConfig cfg, const Overrides& o) {
  if (o.h) cfg.h = *o.h;
  if (o.t_end) cfg.t_end = *o.t_end;
  if (o.intercept_eps) cfg.intercept_eps = *o.intercept_eps;
  validate_or_throw(cfg);
  return cfg;
}

}  // namespace salvo
