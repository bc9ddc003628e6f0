// SPDX-License-Identifier: Apache-2.0
// Copyright (C) 2026 the crsim authors

#include "crsim/model.hpp"

#include <stdexcept>
#include <string>

namespace crsim {

namespace {

void require(bool ok, const char* what) {
  if (!ok) throw std::invalid_argument(std::string("invalid parameter: ") + what);
}

bool is_prob(double p) { return p >= 0.0 && p <= 1.0; }

}  // namespace

void validate(const FadingParams& p) {
  require(p.alpha >= 0.0 && p.alpha <= 1.0, "alpha must be in [0, 1]");
  require(p.sigma_r2 > 0.0, "sigma_r2 must be > 0");
}

void validate(const NoiseParams& p) {
  require(p.sigma_n2 > 0.0, "sigma_n2 must be > 0");
  require(p.sigma_s2 >= 0.0, "sigma_s2 must be >= 0");
}

void validate(const SensingModel& p) {
  require(is_prob(p.p_d), "p_d must be in [0, 1]");
  require(is_prob(p.p_f), "p_f must be in [0, 1]");
  require(is_prob(p.prior_busy), "prior_busy must be in [0, 1]");
}

void validate(const FramePlan& p) {
  require(p.m >= 2, "m must be >= 2 (one pilot plus at least one data symbol)");
  require(p.l_blocks >= 1, "l_blocks must be >= 1");
  require(p.k_pilots >= 1, "k_pilots must be >= 1");
  require(p.k_pilots <= p.l_blocks, "k_pilots must be <= l_blocks");
}

void validate(const EnergyPolicy& p) {
  require(p.snr_idle >= 0.0, "snr_idle must be >= 0");
  require(p.snr_busy >= 0.0, "snr_busy must be >= 0");
  require(is_prob(p.mu_idle), "mu_idle must be in [0, 1]");
  require(is_prob(p.mu_busy), "mu_busy must be in [0, 1]");
}

void validate(const Scenario& s) {
  validate(s.fading);
  validate(s.noise);
  validate(s.sensing);
  validate(s.frame);
  validate(s.energy);
}

ProbabilityPair sensing_marginals(const SensingModel& s) {
  const double prior_idle = 1.0 - s.prior_busy;
  return {
      prior_idle * (1.0 - s.p_f) + s.prior_busy * (1.0 - s.p_d),
      prior_idle * s.p_f + s.prior_busy * s.p_d,
  };
}

ProbabilityPair hypothesis_posterior(const SensingModel& s, Decision decision) {
  const ProbabilityPair marginals = sensing_marginals(s);
  const double denom = decision == Decision::idle ? marginals.idle : marginals.busy;
  if (denom <= 0.0)
    throw std::domain_error("hypothesis_posterior: requested decision has zero probability");
  const double prior_idle = 1.0 - s.prior_busy;
  if (decision == Decision::idle)
    return {prior_idle * (1.0 - s.p_f) / denom, s.prior_busy * (1.0 - s.p_d) / denom};
  return {prior_idle * s.p_f / denom, s.prior_busy * s.p_d / denom};
}

double noise_variance(const NoiseParams& n, Hypothesis true_state) {
  return true_state == Hypothesis::busy ? n.sigma_n2 + n.sigma_s2 : n.sigma_n2;
}

double pilot_energy(const EnergyPolicy& e, const FramePlan& f, const NoiseParams& n,
                    Decision decision) {
  const double power = (decision == Decision::idle ? e.snr_idle : e.snr_busy) * n.sigma_n2;
  const double mu = decision == Decision::idle ? e.mu_idle : e.mu_busy;
  return mu * static_cast<double>(f.m) * power;
}

double data_energy(const EnergyPolicy& e, const FramePlan& f, const NoiseParams& n,
                   Decision decision) {
  const double power = (decision == Decision::idle ? e.snr_idle : e.snr_busy) * n.sigma_n2;
  const double mu = decision == Decision::idle ? e.mu_idle : e.mu_busy;
  return (1.0 - mu) * static_cast<double>(f.m) * power / static_cast<double>(f.m - 1);
}

}  // namespace crsim
