// SPDX-License-Identifier: Apache-2.0
// Copyright (C) 2026 the crsim authors

#include <cmath>

#include <doctest.h>

#include "crsim/optimizer.hpp"

using namespace crsim;

namespace {

Scenario base_scenario() {
  Scenario s;
  s.fading = {0.95, 1.0};
  s.noise = {1.0, 1.0};
  s.sensing = {0.9, 0.2, 0.2};
  s.frame = {6, 10, 1};
  s.energy = {10.0, 1.0, 0.1, 0.1};
  return s;
}

}  // namespace

TEST_CASE("grid spec validation") {
  CHECK_THROWS_AS(validate(GridSpec{1, 10, 0.1}), std::invalid_argument);
  CHECK_THROWS_AS(validate(GridSpec{4, 3, 0.1}), std::invalid_argument);
  CHECK_THROWS_AS(validate(GridSpec{2, 10, 0.0}), std::invalid_argument);
  CHECK_NOTHROW(validate(GridSpec{2, 10, 0.25}));
}

TEST_CASE("optimum is the argmax of its own surface") {
  const Scenario s = base_scenario();
  const GridSpec grid{3, 7, 0.25};
  const Optimum opt = optimize_training(s, grid, InputKind::gaussian, 500, 1, 12345);

  // Recompute the best total from the returned curves.
  double best_total = -1.0;
  int best_m = 0;
  for (int m = grid.m_min; m <= grid.m_max; ++m) {
    double total = 0.0;
    for (const BranchCurve& curve : opt.surface) {
      if (curve.m != m) continue;
      double best_branch = -1.0;
      for (double v : curve.objective) best_branch = std::max(best_branch, v);
      total += best_branch;
    }
    if (total > best_total) {
      best_total = total;
      best_m = m;
    }
  }
  CHECK(opt.m_star == best_m);
  CHECK(opt.rate == doctest::Approx(best_total).epsilon(1e-12));
  CHECK(opt.rate >= 0.0);
  // Two curves per M on the surface.
  CHECK(opt.surface.size() == 2 * (grid.m_max - grid.m_min + 1));
}

TEST_CASE("decoupled sweeps agree with a joint sweep") {
  const Scenario s = base_scenario();
  const GridSpec grid{6, 6, 0.2};
  const std::uint64_t trials = 1500;
  const Optimum opt = optimize_training(s, grid, InputKind::gaussian, trials, 1, 777);

  const ProbabilityPair pr = sensing_marginals(s.sensing);
  double best_joint = -1.0;
  double best_mu0 = -1.0, best_mu1 = -1.0;
  for (double mu0 = 0.0; mu0 <= 1.0 + 1e-9; mu0 += grid.mu_step) {
    for (double mu1 = 0.0; mu1 <= 1.0 + 1e-9; mu1 += grid.mu_step) {
      Scenario v = s;
      v.frame.m = 6;
      v.energy.mu_idle = std::min(mu0, 1.0);
      v.energy.mu_busy = std::min(mu1, 1.0);
      const double joint =
          pr.idle * conditional_block_rate(v, Decision::idle, InputKind::gaussian, trials, 1, 777)
                        .bits +
          pr.busy * conditional_block_rate(v, Decision::busy, InputKind::gaussian, trials, 1, 777)
                        .bits;
      if (joint > best_joint) {
        best_joint = joint;
        best_mu0 = v.energy.mu_idle;
        best_mu1 = v.energy.mu_busy;
      }
    }
  }
  CHECK(std::abs(opt.mu0_star - best_mu0) <= grid.mu_step + 1e-9);
  CHECK(std::abs(opt.mu1_star - best_mu1) <= grid.mu_step + 1e-9);
  CHECK(opt.rate == doctest::Approx(best_joint).epsilon(1e-9));
}

TEST_CASE("impossible busy decision leaves mu1 at the tie-break value") {
  Scenario s = base_scenario();
  s.sensing = {1.0, 0.0, 0.0};  // Pr{decide busy} = 0
  const GridSpec grid{4, 5, 0.25};
  const Optimum opt = optimize_training(s, grid, InputKind::gaussian, 400, 1, 55);
  CHECK(opt.mu1_star == 0.0);
  for (const BranchCurve& curve : opt.surface) {
    if (curve.decision != Decision::busy) continue;
    for (double v : curve.objective) CHECK(v == 0.0);
  }
}

TEST_CASE("optimizer is deterministic given the seed") {
  const Scenario s = base_scenario();
  const GridSpec grid{4, 6, 0.5};
  const Optimum a = optimize_training(s, grid, InputKind::bpsk, 200, 24, 99, 1);
  const Optimum b = optimize_training(s, grid, InputKind::bpsk, 200, 24, 99, 4);
  CHECK(a.m_star == b.m_star);
  CHECK(a.mu0_star == b.mu0_star);
  CHECK(a.mu1_star == b.mu1_star);
  CHECK(a.rate == b.rate);
}
