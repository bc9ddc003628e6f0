// SPDX-License-Identifier: Apache-2.0
// Copyright (C) 2026 the crsim authors

#ifndef CRSIM_SWEEPS_HPP
#define CRSIM_SWEEPS_HPP

#include <string>

#include "crsim/config.hpp"
#include "crsim/optimizer.hpp"
#include "crsim/table.hpp"

// Figure-style experiment drivers. Each returns a ResultTable with one row
// per sweep value; every Monte Carlo metric carries a standard-error column.
// All grid points share the seed and per-trial substreams (common random
// numbers), and accumulation is chunk-deterministic, so a given config+seed
// produces byte-identical CSV for any worker count.

namespace crsim {

// MSE vs the sweep variable (p_f, p_d, m, sigma_s2_over_sigma_n2). Emits
// empirical columns per configured estimator and the analytic L-MMSE value.
// With cfg.idle_only the metric conditions on idle-sensed frames (interweave).
ResultTable run_mse_sweep(const ExperimentConfig& cfg);

// Achievable rate vs the sweep variable (m, mu0, mu1, snr_idle_db), one
// rate/std-error column pair per configured input kind.
ResultTable run_rate_sweep(const ExperimentConfig& cfg);

// Training optimization per input kind. Row layout (see README):
// row_kind 0 = optimum [kind, m*, mu0*, mu1*, rate, se],
// row_kind 1/2 = idle/busy branch curve point [kind, m, mu, -1, objective, se].
ResultTable run_optimize(const ExperimentConfig& cfg);

// Resolved-config + version provenance next to the CSV (path + ".meta.json").
void write_sidecar(const ExperimentConfig& cfg, const std::string& csv_path,
                   const std::string& command);

}  // namespace crsim

#endif  // CRSIM_SWEEPS_HPP
