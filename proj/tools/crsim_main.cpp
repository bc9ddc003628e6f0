// SPDX-License-Identifier: Apache-2.0
// Copyright (C) 2026 the crsim authors

#include <cstdint>
#include <cstdio>
#include <exception>
#include <string>

#include <CLI11.hpp>

#include "crsim/sweeps.hpp"
#include "crsim/version.hpp"

namespace {

struct CommonArgs {
  std::string config_path;
  std::string preset;
  std::string out_path;
  std::uint64_t seed = 0;
  bool seed_set = false;
  std::uint64_t trials = 0;
  bool trials_set = false;
  int workers = -1;
};

void add_common(CLI::App* cmd, CommonArgs& args) {
  cmd->add_option("--config", args.config_path, "experiment config JSON");
  cmd->add_option("--preset", args.preset,
                  "shipped preset name (fig3..fig10, interweave_mse, interweave_rate)");
  cmd->add_option("--out", args.out_path, "output CSV path (overrides config)");
  cmd->add_option("--seed", args.seed, "random seed (overrides config)")
      ->trigger_on_parse()
      ->each([&args](const std::string&) { args.seed_set = true; });
  cmd->add_option("--trials", args.trials, "Monte Carlo trials (overrides config)")
      ->trigger_on_parse()
      ->each([&args](const std::string&) { args.trials_set = true; });
  cmd->add_option("--workers", args.workers, "worker threads (0 = auto)");
}

crsim::ExperimentConfig resolve(const CommonArgs& args, const std::string& default_out) {
  crsim::ExperimentConfig cfg;
  if (!args.preset.empty()) cfg = crsim::load_config(crsim::find_preset_path(args.preset));
  if (!args.config_path.empty()) {
    // An explicit config replaces the preset wholesale; merging two partial
    // scenario descriptions invites silent parameter mixups.
    cfg = crsim::load_config(args.config_path);
  }
  if (args.preset.empty() && args.config_path.empty())
    throw std::runtime_error("give --config or --preset");
  if (args.seed_set) cfg.seed = args.seed;
  if (args.trials_set) cfg.trials = args.trials;
  if (args.workers >= 0) cfg.workers = args.workers;
  if (!args.out_path.empty()) cfg.output_path = args.out_path;
  if (cfg.output_path.empty()) cfg.output_path = default_out;
  return cfg;
}

void finish(const crsim::ExperimentConfig& cfg, const crsim::ResultTable& table,
            const std::string& command) {
  crsim::emit_csv(table, cfg.output_path);
  crsim::write_sidecar(cfg, cfg.output_path, command);
  std::printf("%s: wrote %zu rows to %s\n", command.c_str(), table.rows.size(),
              cfg.output_path.c_str());
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"cognitive-radio channel estimation and achievable-rate simulator"};
  app.set_version_flag("--version", crsim::kVersionString);
  app.require_subcommand(1);

  CommonArgs mse_args, rate_args, opt_args;
  CLI::App* mse = app.add_subcommand("mse-sweep", "channel-estimation MSE vs a swept parameter");
  add_common(mse, mse_args);
  CLI::App* rate = app.add_subcommand("rate-sweep", "achievable rates vs a swept parameter");
  add_common(rate, rate_args);
  CLI::App* opt = app.add_subcommand("optimize", "grid-search M and the training fractions");
  add_common(opt, opt_args);

  CLI11_PARSE(app, argc, argv);

  try {
    if (mse->parsed()) {
      const auto cfg = resolve(mse_args, "mse_sweep.csv");
      finish(cfg, crsim::run_mse_sweep(cfg), "mse-sweep");
    } else if (rate->parsed()) {
      const auto cfg = resolve(rate_args, "rate_sweep.csv");
      finish(cfg, crsim::run_rate_sweep(cfg), "rate-sweep");
    } else if (opt->parsed()) {
      const auto cfg = resolve(opt_args, "optimize.csv");
      finish(cfg, crsim::run_optimize(cfg), "optimize");
    }
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
