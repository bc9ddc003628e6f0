// SPDX-License-Identifier: Apache-2.0
// Copyright (C) 2026 the crsim authors

#ifndef CRSIM_OPTIMIZER_HPP
#define CRSIM_OPTIMIZER_HPP

#include <cstdint>
#include <vector>

#include "crsim/model.hpp"
#include "crsim/rates.hpp"

// Grid search for the rate-maximizing training period M and energy fractions
// (mu_idle, mu_busy). The objective decouples per sensing decision: the
// idle-decision term depends only on mu_idle and the busy term only on
// mu_busy, so each M needs two 1-D sweeps instead of a 2-D grid. Every grid
// point reuses the same seed and trial substreams (common random numbers),
// which keeps the Monte Carlo noise from scrambling the argmax of the
// shallow rate peaks.

namespace crsim {

struct GridSpec {
  int m_min = 2;
  int m_max = 40;
  double mu_step = 0.01;
};

void validate(const GridSpec& g);

// Objective of one decision branch at one M over the mu grid:
// Pr{decision} * E[(1/M) sum_k I_k | decision].
struct BranchCurve {
  int m = 0;
  Decision decision = Decision::idle;
  std::vector<double> mu;
  std::vector<double> objective;
  std::vector<double> std_error;
};

struct Optimum {
  int m_star = 0;
  double mu0_star = 0.0;
  double mu1_star = 0.0;
  double rate = 0.0;       // bits per symbol at the optimum
  double std_error = 0.0;
  std::vector<BranchCurve> surface;  // two curves per examined M
};

// Ties break toward smaller M, then smaller mu_idle, then smaller mu_busy.
Optimum optimize_training(const Scenario& scenario_template, const GridSpec& grid,
                          InputKind input, std::uint64_t trials, std::uint64_t inner_samples,
                          std::uint64_t seed, int workers = 0);

}  // namespace crsim

#endif  // CRSIM_OPTIMIZER_HPP
