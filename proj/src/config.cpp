// SPDX-License-Identifier: Apache-2.0
// Copyright (C) 2026 the crsim authors

#include "crsim/config.hpp"

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#ifndef CRSIM_PRESET_DIR
#define CRSIM_PRESET_DIR "presets"
#endif

namespace crsim {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& message) {
  throw std::invalid_argument("config: " + message);
}

const std::set<std::string>& known_keys() {
  static const std::set<std::string> keys = {
      "alpha", "sigma_r2", "sigma_n2", "sigma_s2",
      "p_d", "p_f", "prior_busy",
      "m", "l_blocks", "k_pilots",
      "snr_idle", "snr_idle_db", "snr_busy", "snr_busy_db",
      "mu0", "mu1",
      "pilot_energy_idle", "pilot_energy_busy",
      "sweep_variable", "sweep_from", "sweep_to", "sweep_step",
      "trials", "inner_samples", "seed",
      "estimators", "inputs", "output_path", "idle_only",
      "m_min", "m_max", "mu_step", "workers",
  };
  return keys;
}

const std::set<std::string>& sweep_variables() {
  static const std::set<std::string> vars = {
      "p_f", "p_d", "m", "sigma_s2_over_sigma_n2", "mu0", "mu1", "snr_idle_db",
  };
  return vars;
}

double get_number(const json& j, const char* key, double fallback) {
  if (!j.contains(key)) return fallback;
  if (!j.at(key).is_number()) fail(std::string("key '") + key + "' must be a number");
  return j.at(key).get<double>();
}

int get_int(const json& j, const char* key, int fallback) {
  if (!j.contains(key)) return fallback;
  if (!j.at(key).is_number_integer()) fail(std::string("key '") + key + "' must be an integer");
  return j.at(key).get<int>();
}

std::uint64_t get_u64(const json& j, const char* key, std::uint64_t fallback) {
  if (!j.contains(key)) return fallback;
  if (!j.at(key).is_number_unsigned() && !j.at(key).is_number_integer())
    fail(std::string("key '") + key + "' must be a non-negative integer");
  const auto v = j.at(key).get<std::int64_t>();
  if (v < 0) fail(std::string("key '") + key + "' must be a non-negative integer");
  return static_cast<std::uint64_t>(v);
}

}  // namespace

ExperimentConfig parse_config(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    fail(std::string("not valid JSON: ") + e.what());
  }
  if (!j.is_object()) fail("top level must be a JSON object");

  for (const auto& item : j.items())
    if (!known_keys().contains(item.key())) fail("unknown key '" + item.key() + "'");

  ExperimentConfig cfg;
  Scenario& s = cfg.scenario;
  s.fading.alpha = get_number(j, "alpha", s.fading.alpha);
  s.fading.sigma_r2 = get_number(j, "sigma_r2", s.fading.sigma_r2);
  s.noise.sigma_n2 = get_number(j, "sigma_n2", s.noise.sigma_n2);
  s.noise.sigma_s2 = get_number(j, "sigma_s2", s.noise.sigma_s2);
  s.sensing.p_d = get_number(j, "p_d", s.sensing.p_d);
  s.sensing.p_f = get_number(j, "p_f", s.sensing.p_f);
  s.sensing.prior_busy = get_number(j, "prior_busy", s.sensing.prior_busy);
  s.frame.m = get_int(j, "m", s.frame.m);
  s.frame.l_blocks = get_int(j, "l_blocks", s.frame.l_blocks);
  s.frame.k_pilots = get_int(j, "k_pilots", s.frame.k_pilots);

  if (j.contains("snr_idle") && j.contains("snr_idle_db"))
    fail("give either 'snr_idle' or 'snr_idle_db', not both");
  if (j.contains("snr_busy") && j.contains("snr_busy_db"))
    fail("give either 'snr_busy' or 'snr_busy_db', not both");
  if (j.contains("snr_idle_db"))
    s.energy.snr_idle = db_to_linear(get_number(j, "snr_idle_db", 0.0));
  else
    s.energy.snr_idle = get_number(j, "snr_idle", s.energy.snr_idle);
  if (j.contains("snr_busy_db"))
    s.energy.snr_busy = db_to_linear(get_number(j, "snr_busy_db", 0.0));
  else
    s.energy.snr_busy = get_number(j, "snr_busy", s.energy.snr_busy);
  s.energy.mu_idle = get_number(j, "mu0", s.energy.mu_idle);
  s.energy.mu_busy = get_number(j, "mu1", s.energy.mu_busy);

  if (j.contains("pilot_energy_idle"))
    cfg.pilot_energy_idle = get_number(j, "pilot_energy_idle", 0.0);
  if (j.contains("pilot_energy_busy"))
    cfg.pilot_energy_busy = get_number(j, "pilot_energy_busy", 0.0);

  if (j.contains("sweep_variable")) {
    SweepSpec sweep;
    if (!j.at("sweep_variable").is_string()) fail("key 'sweep_variable' must be a string");
    sweep.variable = j.at("sweep_variable").get<std::string>();
    if (!sweep_variables().contains(sweep.variable))
      fail("unsupported sweep variable '" + sweep.variable + "'");
    if (!j.contains("sweep_from") || !j.contains("sweep_to") || !j.contains("sweep_step"))
      fail("a sweep needs 'sweep_from', 'sweep_to' and 'sweep_step'");
    sweep.from = get_number(j, "sweep_from", 0.0);
    sweep.to = get_number(j, "sweep_to", 0.0);
    sweep.step = get_number(j, "sweep_step", 1.0);
    if (sweep.from > sweep.to) fail("'sweep_from' must be <= 'sweep_to'");
    if (!(sweep.step > 0.0)) fail("'sweep_step' must be > 0");
    cfg.sweep = sweep;
  } else if (j.contains("sweep_from") || j.contains("sweep_to") || j.contains("sweep_step")) {
    fail("sweep bounds given without 'sweep_variable'");
  }

  cfg.trials = get_u64(j, "trials", cfg.trials);
  if (cfg.trials == 0) fail("'trials' must be >= 1");
  cfg.inner_samples = get_u64(j, "inner_samples", cfg.inner_samples);
  if (cfg.inner_samples == 0) fail("'inner_samples' must be >= 1");
  cfg.seed = get_u64(j, "seed", cfg.seed);

  if (j.contains("estimators")) {
    if (!j.at("estimators").is_array()) fail("key 'estimators' must be an array");
    cfg.estimators.clear();
    for (const auto& e : j.at("estimators")) {
      const std::string name = e.get<std::string>();
      if (name == "mmse")
        cfg.estimators.push_back(EstimatorKind::mmse);
      else if (name == "lmmse")
        cfg.estimators.push_back(EstimatorKind::lmmse);
      else
        fail("unknown estimator '" + name + "'");
    }
    if (cfg.estimators.empty()) fail("'estimators' must not be empty");
  }
  if (j.contains("inputs")) {
    if (!j.at("inputs").is_array()) fail("key 'inputs' must be an array");
    cfg.inputs.clear();
    for (const auto& e : j.at("inputs")) {
      const std::string name = e.get<std::string>();
      if (name == "bpsk")
        cfg.inputs.push_back(InputKind::bpsk);
      else if (name == "gaussian")
        cfg.inputs.push_back(InputKind::gaussian);
      else
        fail("unknown input kind '" + name + "'");
    }
    if (cfg.inputs.empty()) fail("'inputs' must not be empty");
  }
  if (j.contains("output_path")) {
    if (!j.at("output_path").is_string()) fail("key 'output_path' must be a string");
    cfg.output_path = j.at("output_path").get<std::string>();
  }
  if (j.contains("idle_only")) {
    if (!j.at("idle_only").is_boolean()) fail("key 'idle_only' must be a boolean");
    cfg.idle_only = j.at("idle_only").get<bool>();
  }
  cfg.m_min = get_int(j, "m_min", cfg.m_min);
  cfg.m_max = get_int(j, "m_max", cfg.m_max);
  cfg.mu_step = get_number(j, "mu_step", cfg.mu_step);
  cfg.workers = get_int(j, "workers", cfg.workers);
  if (cfg.workers < 0) fail("'workers' must be >= 0");

  validate(cfg.scenario);
  if (cfg.pilot_energy_idle && *cfg.pilot_energy_idle < 0.0)
    fail("'pilot_energy_idle' must be >= 0");
  if (cfg.pilot_energy_busy && *cfg.pilot_energy_busy < 0.0)
    fail("'pilot_energy_busy' must be >= 0");
  return cfg;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream file(path);
  if (!file) throw std::runtime_error("config: cannot open '" + path + "'");
  std::ostringstream text;
  text << file.rdbuf();
  return parse_config(text.str());
}

std::string config_to_json(const ExperimentConfig& cfg) {
  json j;
  const Scenario& s = cfg.scenario;
  j["alpha"] = s.fading.alpha;
  j["sigma_r2"] = s.fading.sigma_r2;
  j["sigma_n2"] = s.noise.sigma_n2;
  j["sigma_s2"] = s.noise.sigma_s2;
  j["p_d"] = s.sensing.p_d;
  j["p_f"] = s.sensing.p_f;
  j["prior_busy"] = s.sensing.prior_busy;
  j["m"] = s.frame.m;
  j["l_blocks"] = s.frame.l_blocks;
  j["k_pilots"] = s.frame.k_pilots;
  j["snr_idle"] = s.energy.snr_idle;
  j["snr_busy"] = s.energy.snr_busy;
  j["mu0"] = s.energy.mu_idle;
  j["mu1"] = s.energy.mu_busy;
  if (cfg.pilot_energy_idle) j["pilot_energy_idle"] = *cfg.pilot_energy_idle;
  if (cfg.pilot_energy_busy) j["pilot_energy_busy"] = *cfg.pilot_energy_busy;
  if (cfg.sweep) {
    j["sweep_variable"] = cfg.sweep->variable;
    j["sweep_from"] = cfg.sweep->from;
    j["sweep_to"] = cfg.sweep->to;
    j["sweep_step"] = cfg.sweep->step;
  }
  j["trials"] = cfg.trials;
  j["inner_samples"] = cfg.inner_samples;
  j["seed"] = cfg.seed;
  json estimators = json::array();
  for (EstimatorKind e : cfg.estimators)
    estimators.push_back(e == EstimatorKind::mmse ? "mmse" : "lmmse");
  j["estimators"] = estimators;
  json inputs = json::array();
  for (InputKind k : cfg.inputs) inputs.push_back(k == InputKind::bpsk ? "bpsk" : "gaussian");
  j["inputs"] = inputs;
  j["output_path"] = cfg.output_path;
  j["idle_only"] = cfg.idle_only;
  j["m_min"] = cfg.m_min;
  j["m_max"] = cfg.m_max;
  j["mu_step"] = cfg.mu_step;
  j["workers"] = cfg.workers;
  return j.dump(2);
}

std::vector<std::string> preset_names() {
  return {"fig3", "fig4", "fig5", "fig6", "fig7", "fig8", "fig9", "fig10",
          "interweave_mse", "interweave_rate"};
}

std::string find_preset_path(const std::string& name) {
  namespace fs = std::filesystem;
  std::vector<fs::path> roots;
  if (const char* env = std::getenv("CRSIM_PRESET_DIR")) roots.emplace_back(env);
  roots.emplace_back(CRSIM_PRESET_DIR);
  roots.emplace_back("presets");
  for (const fs::path& root : roots) {
    const fs::path candidate = root / (name + ".json");
    std::error_code ec;
    if (fs::exists(candidate, ec)) return candidate.string();
  }
  throw std::runtime_error("preset '" + name + "' not found (set CRSIM_PRESET_DIR?)");
}

std::vector<double> sweep_values(const SweepSpec& sweep) {
  std::vector<double> values;
  const double span = sweep.to - sweep.from;
  const int steps = static_cast<int>(std::floor(span / sweep.step + 1e-9));
  values.reserve(static_cast<std::size_t>(steps) + 1);
  for (int i = 0; i <= steps; ++i) values.push_back(sweep.from + i * sweep.step);
  return values;
}

namespace {

double fraction_for_pilot_energy(double pilot_energy, const FramePlan& frame, double power,
                                 const char* key) {
  if (pilot_energy == 0.0) return 0.0;
  const double budget = frame.m * power;
  if (budget <= 0.0) fail(std::string("'") + key + "' requires a positive power budget");
  const double mu = pilot_energy / budget;
  if (mu > 1.0) fail(std::string("'") + key + "' exceeds the block energy budget");
  return mu;
}

}  // namespace

Scenario resolve_scenario(const ExperimentConfig& cfg, double sweep_value) {
  Scenario s = cfg.scenario;
  if (cfg.sweep) {
    const std::string& var = cfg.sweep->variable;
    if (var == "p_f") {
      s.sensing.p_f = sweep_value;
    } else if (var == "p_d") {
      s.sensing.p_d = sweep_value;
    } else if (var == "m") {
      const double rounded = std::round(sweep_value);
      if (std::abs(rounded - sweep_value) > 1e-9) fail("sweep over 'm' hit a non-integer value");
      s.frame.m = static_cast<int>(rounded);
    } else if (var == "sigma_s2_over_sigma_n2") {
      s.noise.sigma_s2 = sweep_value * s.noise.sigma_n2;
    } else if (var == "mu0") {
      s.energy.mu_idle = sweep_value;
    } else if (var == "mu1") {
      s.energy.mu_busy = sweep_value;
    } else if (var == "snr_idle_db") {
      s.energy.snr_idle = db_to_linear(sweep_value);
    }
  }
  if (cfg.pilot_energy_idle)
    s.energy.mu_idle = fraction_for_pilot_energy(*cfg.pilot_energy_idle, s.frame,
                                                 s.energy.snr_idle * s.noise.sigma_n2,
                                                 "pilot_energy_idle");
  if (cfg.pilot_energy_busy)
    s.energy.mu_busy = fraction_for_pilot_energy(*cfg.pilot_energy_busy, s.frame,
                                                 s.energy.snr_busy * s.noise.sigma_n2,
                                                 "pilot_energy_busy");
  validate(s);
  return s;
}

Scenario resolve_scenario(const ExperimentConfig& cfg) {
  ExperimentConfig no_sweep = cfg;
  no_sweep.sweep.reset();
  return resolve_scenario(no_sweep, 0.0);
}

}  // namespace crsim
