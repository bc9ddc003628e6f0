// SPDX-License-Identifier: Apache-2.0
// Copyright (C) 2026 the crsim authors

#include "crsim/optimizer.hpp"

#include <cmath>
#include <stdexcept>

namespace crsim {

void validate(const GridSpec& g) {
  if (g.m_min < 2) throw std::invalid_argument("GridSpec: m_min must be >= 2");
  if (g.m_max < g.m_min) throw std::invalid_argument("GridSpec: m_max must be >= m_min");
  if (!(g.mu_step > 0.0 && g.mu_step <= 0.5))
    throw std::invalid_argument("GridSpec: mu_step must be in (0, 0.5]");
}

namespace {

std::vector<double> mu_grid(double step) {
  std::vector<double> grid;
  const int n = static_cast<int>(std::floor(1.0 / step + 1e-9));
  grid.reserve(static_cast<std::size_t>(n) + 1);
  for (int i = 0; i <= n; ++i) grid.push_back(std::min(1.0, i * step));
  if (grid.back() < 1.0) grid.push_back(1.0);
  return grid;
}

struct BranchBest {
  double mu = 0.0;
  double objective = 0.0;
  double std_error = 0.0;
};

}  // namespace

Optimum optimize_training(const Scenario& scenario_template, const GridSpec& grid,
                          InputKind input, std::uint64_t trials, std::uint64_t inner_samples,
                          std::uint64_t seed, int workers) {
  validate(grid);
  validate(scenario_template);
  const std::vector<double> mus = mu_grid(grid.mu_step);
  const ProbabilityPair decision_prob = sensing_marginals(scenario_template.sensing);

  Optimum best;
  bool have_best = false;
  for (int m = grid.m_min; m <= grid.m_max; ++m) {
    Scenario s = scenario_template;
    s.frame.m = m;

    BranchBest branch_best[2];
    for (int j = 0; j < 2; ++j) {
      const Decision decision = static_cast<Decision>(j);
      const double weight = j == 0 ? decision_prob.idle : decision_prob.busy;
      BranchCurve curve;
      curve.m = m;
      curve.decision = decision;
      curve.mu.reserve(mus.size());
      curve.objective.reserve(mus.size());
      curve.std_error.reserve(mus.size());

      BranchBest bb;
      bool have_bb = false;
      for (double mu : mus) {
        if (decision == Decision::idle)
          s.energy.mu_idle = mu;
        else
          s.energy.mu_busy = mu;
        MiEstimate term{0.0, 0.0, 0};
        if (weight > 0.0)
          term = conditional_block_rate(s, decision, input, trials, inner_samples, seed, workers);
        const double objective = weight * term.bits;
        const double se = weight * term.std_error;
        curve.mu.push_back(mu);
        curve.objective.push_back(objective);
        curve.std_error.push_back(se);
        if (!have_bb || objective > bb.objective) {
          bb = {mu, objective, se};
          have_bb = true;
        }
      }
      branch_best[j] = bb;
      best.surface.push_back(std::move(curve));
      // restore the template's fraction before sweeping the other branch
      s.energy = scenario_template.energy;
      s.frame.m = m;
    }

    const double total = branch_best[0].objective + branch_best[1].objective;
    if (!have_best || total > best.rate) {
      best.m_star = m;
      best.mu0_star = branch_best[0].mu;
      best.mu1_star = branch_best[1].mu;
      best.rate = total;
      best.std_error = std::sqrt(branch_best[0].std_error * branch_best[0].std_error +
                                 branch_best[1].std_error * branch_best[1].std_error);
      have_best = true;
    }
  }
  return best;
}

}  // namespace crsim
