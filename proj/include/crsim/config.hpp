// SPDX-License-Identifier: Apache-2.0
// Copyright (C) 2026 the crsim authors

#ifndef CRSIM_CONFIG_HPP
#define CRSIM_CONFIG_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "crsim/estimation.hpp"
#include "crsim/model.hpp"
#include "crsim/rates.hpp"

// Flat JSON experiment configuration. The schema is strict: unknown keys are
// rejected by name. Powers may be given linear (snr_idle/snr_busy) or in dB
// (snr_idle_db/snr_busy_db); conversion happens here and nowhere else.

namespace crsim {

struct SweepSpec {
  std::string variable;  // p_f, p_d, m, sigma_s2_over_sigma_n2, mu0, mu1, snr_idle_db
  double from = 0.0;
  double to = 0.0;
  double step = 1.0;
};

struct ExperimentConfig {
  Scenario scenario;
  // When set, the pilot energy is held fixed across the sweep and the
  // training fraction is derived per scenario as mu = E_t / (M * P/B).
  std::optional<double> pilot_energy_idle;
  std::optional<double> pilot_energy_busy;
  std::optional<SweepSpec> sweep;
  std::uint64_t trials = 2000;
  std::uint64_t inner_samples = 200;
  std::uint64_t seed = 1;
  std::vector<EstimatorKind> estimators = {EstimatorKind::mmse, EstimatorKind::lmmse};
  std::vector<InputKind> inputs = {InputKind::bpsk, InputKind::gaussian};
  std::string output_path;
  bool idle_only = false;  // condition MSE metrics on the idle decision
  int m_min = 2;
  int m_max = 40;
  double mu_step = 0.01;
  int workers = 0;  // 0 = resolve from CRSIM_WORKERS / hardware
};

// Parse and strictly validate; messages name the offending key.
ExperimentConfig parse_config(const std::string& json_text);
ExperimentConfig load_config(const std::string& path);

// Serialized resolved configuration (for the provenance sidecar).
std::string config_to_json(const ExperimentConfig& cfg);

// Locate a shipped preset by name ("fig3".."fig10", "interweave_mse",
// "interweave_rate"); search order: CRSIM_PRESET_DIR, the build-time preset
// directory, ./presets.
std::string find_preset_path(const std::string& name);
std::vector<std::string> preset_names();

// Grid of sweep values (inclusive of endpoints up to step rounding).
std::vector<double> sweep_values(const SweepSpec& sweep);

// Scenario with the sweep variable applied and pilot-energy overrides folded
// into the training fractions.
Scenario resolve_scenario(const ExperimentConfig& cfg, double sweep_value);
Scenario resolve_scenario(const ExperimentConfig& cfg);  // no sweep applied

}  // namespace crsim

#endif  // CRSIM_CONFIG_HPP
