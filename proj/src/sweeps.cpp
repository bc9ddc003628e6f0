// SPDX-License-Identifier: Apache-2.0
// Copyright (C) 2026 the crsim authors

#include "crsim/sweeps.hpp"

#include <fstream>
#include <stdexcept>

#include <json.hpp>

#include "crsim/version.hpp"

namespace crsim {

namespace {

const SweepSpec& require_sweep(const ExperimentConfig& cfg,
                               std::initializer_list<const char*> allowed) {
  if (!cfg.sweep) throw std::invalid_argument("config: this command needs a 'sweep_variable'");
  for (const char* name : allowed)
    if (cfg.sweep->variable == name) return *cfg.sweep;
  throw std::invalid_argument("config: sweep variable '" + cfg.sweep->variable +
                              "' is not supported by this command");
}

bool has_estimator(const ExperimentConfig& cfg, EstimatorKind kind) {
  for (EstimatorKind e : cfg.estimators)
    if (e == kind) return true;
  return false;
}

bool has_input(const ExperimentConfig& cfg, InputKind kind) {
  for (InputKind k : cfg.inputs)
    if (k == kind) return true;
  return false;
}

}  // namespace

ResultTable run_mse_sweep(const ExperimentConfig& cfg) {
  const SweepSpec& sweep =
      require_sweep(cfg, {"p_f", "p_d", "m", "sigma_s2_over_sigma_n2"});
  const bool with_mmse = has_estimator(cfg, EstimatorKind::mmse);
  const bool with_lmmse = has_estimator(cfg, EstimatorKind::lmmse);
  const MseConditioning conditioning =
      cfg.idle_only ? MseConditioning::idle_decision_only : MseConditioning::all_frames;

  ResultTable table;
  table.columns.push_back(sweep.variable);
  if (with_mmse) {
    table.columns.push_back("mse_mmse");
    table.columns.push_back("mse_mmse_se");
  }
  if (with_lmmse) {
    table.columns.push_back("mse_lmmse");
    table.columns.push_back("mse_lmmse_se");
    table.columns.push_back("mse_lmmse_analytic");
  }

  for (double value : sweep_values(sweep)) {
    const Scenario s = resolve_scenario(cfg, value);
    std::vector<double> row{value};
    if (with_mmse) {
      const MseEstimate mmse =
          monte_carlo_mse(s, EstimatorKind::mmse, cfg.trials, cfg.seed, cfg.workers, conditioning);
      row.push_back(mmse.mse);
      row.push_back(mmse.std_error);
    }
    if (with_lmmse) {
      const MseEstimate lmmse = monte_carlo_mse(s, EstimatorKind::lmmse, cfg.trials, cfg.seed,
                                                cfg.workers, conditioning);
      row.push_back(lmmse.mse);
      row.push_back(lmmse.std_error);
      const ScenarioContext ctx = make_scenario_context(s);
      row.push_back(cfg.idle_only ? analytic_lmmse_mse_given(ctx, Decision::idle)
                                  : analytic_lmmse_mse(ctx));
    }
    table.add_row(std::move(row));
  }
  return table;
}

ResultTable run_rate_sweep(const ExperimentConfig& cfg) {
  // p_d/p_f cover the interweave rate-vs-detection experiments.
  const SweepSpec& sweep =
      require_sweep(cfg, {"m", "mu0", "mu1", "snr_idle_db", "p_d", "p_f"});
  const bool with_bpsk = has_input(cfg, InputKind::bpsk);
  const bool with_gaussian = has_input(cfg, InputKind::gaussian);

  ResultTable table;
  table.columns.push_back(sweep.variable);
  if (with_bpsk) {
    table.columns.push_back("rate_bpsk");
    table.columns.push_back("rate_bpsk_se");
  }
  if (with_gaussian) {
    table.columns.push_back("rate_gaussian");
    table.columns.push_back("rate_gaussian_se");
  }

  for (double value : sweep_values(sweep)) {
    const Scenario s = resolve_scenario(cfg, value);
    std::vector<double> row{value};
    if (with_bpsk) {
      const RatePoint p =
          block_rate(s, InputKind::bpsk, cfg.trials, cfg.inner_samples, cfg.seed, cfg.workers);
      row.push_back(p.rate);
      row.push_back(p.std_error);
    }
    if (with_gaussian) {
      const RatePoint p =
          block_rate(s, InputKind::gaussian, cfg.trials, cfg.inner_samples, cfg.seed, cfg.workers);
      row.push_back(p.rate);
      row.push_back(p.std_error);
    }
    table.add_row(std::move(row));
  }
  return table;
}

ResultTable run_optimize(const ExperimentConfig& cfg) {
  GridSpec grid{cfg.m_min, cfg.m_max, cfg.mu_step};
  validate(grid);
  const Scenario base = resolve_scenario(cfg);

  ResultTable table;
  table.columns = {"row_kind", "input", "m", "mu0", "mu1", "value", "std_error"};
  for (InputKind input : cfg.inputs) {
    const double input_tag = input == InputKind::bpsk ? 0.0 : 1.0;
    const Optimum opt =
        optimize_training(base, grid, input, cfg.trials, cfg.inner_samples, cfg.seed, cfg.workers);
    table.add_row({0.0, input_tag, static_cast<double>(opt.m_star), opt.mu0_star, opt.mu1_star,
                   opt.rate, opt.std_error});
    for (const BranchCurve& curve : opt.surface) {
      const double kind = curve.decision == Decision::idle ? 1.0 : 2.0;
      for (std::size_t i = 0; i < curve.mu.size(); ++i) {
        const double mu0 = curve.decision == Decision::idle ? curve.mu[i] : -1.0;
        const double mu1 = curve.decision == Decision::busy ? curve.mu[i] : -1.0;
        table.add_row({kind, input_tag, static_cast<double>(curve.m), mu0, mu1,
                       curve.objective[i], curve.std_error[i]});
      }
    }
  }
  return table;
}

void write_sidecar(const ExperimentConfig& cfg, const std::string& csv_path,
                   const std::string& command) {
  nlohmann::json j;
  j["version"] = kVersionString;
  j["command"] = command;
  j["config"] = nlohmann::json::parse(config_to_json(cfg));
  const std::string path = csv_path + ".meta.json";
  std::ofstream file(path, std::ios::binary);
  if (!file) throw std::runtime_error("write_sidecar: cannot open '" + path + "'");
  const std::string text = j.dump(2) + "\n";
  file.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!file) throw std::runtime_error("write_sidecar: write failed for '" + path + "'");
}

}  // namespace crsim
