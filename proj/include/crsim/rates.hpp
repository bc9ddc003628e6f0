// SPDX-License-Identifier: Apache-2.0
// Copyright (C) 2026 the crsim authors

#ifndef CRSIM_RATES_HPP
#define CRSIM_RATES_HPP

#include <cstdint>

#include "crsim/estimation.hpp"
#include "crsim/model.hpp"
#include "crsim/rng.hpp"

// Achievable rates with imperfect sensing and channel estimation, in bits
// per symbol. The receiver's conditional densities are two-component
// complex-Gaussian mixtures over the unknown true primary-user state, with
// the channel-estimation error folded into the component variances:
// sigma_i^2 = sigma_n^2 + [sigma_s^2 if busy] + err_var * |x|^2. A block of
// M symbols carries M-1 data symbols; rates are averaged over the block, so
// the pilot position contributes zero.
//
// BPSK rates come from a nested Monte Carlo: the outer loop simulates the
// training pipeline (state -> pilot observation -> L-MMSE estimate), the
// inner loop draws data symbols and disturbance from the true-state
// component and averages the per-sample log-likelihood ratio. Gaussian-input
// rates evaluate the closed-form bound per outer trial.

namespace crsim {

enum class InputKind { bpsk, gaussian };

// Finite input alphabet with priors. Only BPSK is exercised by the sweep
// drivers; the mutual-information machinery below takes any constellation.
struct Constellation {
  std::vector<cdouble> points;
  std::vector<double> priors;

  double average_energy() const;
};

// Equiprobable +-sqrt(e_d).
Constellation bpsk_constellation(double e_d);

// Checks matching sizes, priors summing to one, and (when expected_energy is
// nonnegative) the average symbol energy matching it to 1e-9 relative.
void validate(const Constellation& c, double expected_energy = -1.0);

struct RatePoint {
  double rate = 0.0;       // bits per symbol, averaged over the block
  double std_error = 0.0;  // Monte Carlo standard error
  int m = 0;
  double mu_idle = 0.0;
  double mu_busy = 0.0;
};

struct MiEstimate {
  double bits = 0.0;
  double std_error = 0.0;
  std::uint64_t trials_used = 0;
};

// Mixture density f(y | x, r_hat, decision) with prior-only posterior weights.
double mixture_likelihood(cdouble y, cdouble x, cdouble r_hat, double err_var,
                          const ProbabilityPair& posterior, const NoiseParams& noise);

// Closed-form Gaussian-input rate for one realized estimate:
// log2(1 + |r_hat|^2 E_d / (err_var E_d + sigma_n^2 + posterior_busy sigma_s^2)).
double gaussian_rate_bound(double r_hat_sq, double err_var, double e_d, const NoiseParams& noise,
                           double posterior_busy);

// Inner Monte Carlo only, for a fixed estimate: equiprobable BPSK +-sqrt(e_d),
// disturbance drawn from the mixture itself. Result clipped to [0, 1] bit.
MiEstimate bpsk_mi_given_estimate(cdouble r_hat, double err_var, double e_d,
                                  double posterior_busy, const NoiseParams& noise,
                                  std::uint64_t samples, RandomStream& rng);

// General-constellation variant (per-symbol component variances; not on the
// SIMD fast path). Result clipped to [0, log2 U] bits.
MiEstimate constellation_mi_given_estimate(const Constellation& c, cdouble r_hat,
                                           double err_var, double posterior_busy,
                                           const NoiseParams& noise, std::uint64_t samples,
                                           RandomStream& rng);

// Nested Monte Carlo for one data position (1 <= position <= M-1) under one
// sensing decision; the outer loop runs the full training pipeline and skips
// trials whose decision differs. Result clipped to [0, 1] bit.
MiEstimate bpsk_mutual_information(const Scenario& s, Decision decision, int position,
                                   std::uint64_t outer_trials, std::uint64_t inner_samples,
                                   std::uint64_t seed, int workers = 0);

// Block-averaged achievable rate; decisions are sampled jointly with the
// training pipeline, so the Pr{decision} weighting is carried by the
// sampling frequencies.
RatePoint block_rate(const Scenario& s, InputKind input, std::uint64_t trials,
                     std::uint64_t inner_samples, std::uint64_t seed, int workers = 0);

// Conditional term E[(1/M) sum_k I_k | decision] for the optimizer's
// decoupled per-decision maximization. trials_used counts matching frames;
// a decision that never occurs yields {0, 0, 0}.
MiEstimate conditional_block_rate(const Scenario& s, Decision decision, InputKind input,
                                  std::uint64_t trials, std::uint64_t inner_samples,
                                  std::uint64_t seed, int workers = 0);

}  // namespace crsim

#endif  // CRSIM_RATES_HPP
