// SPDX-License-Identifier: Apache-2.0
// Copyright (C) 2026 the crsim authors

#ifndef CRSIM_ESTIMATION_HPP
#define CRSIM_ESTIMATION_HPP

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "crsim/fading.hpp"
#include "crsim/linalg.hpp"
#include "crsim/model.hpp"
#include "crsim/rng.hpp"
#include "crsim/sensing.hpp"

// Block channel estimation from K pilot observations under sensing
// uncertainty. The estimated block covers the K pilot-time coefficients plus
// the M-1 data-symbol coefficients that follow the most recent pilot, so a
// block vector has K + M - 1 entries; data position d (1..M-1) sits at index
// K - 1 + d. The training disturbance is a two-component Gaussian mixture:
// its variance depends on the unknown true primary-user state, so the
// conditional-mean (MMSE) estimator is nonlinear while the L-MMSE estimator
// whitens with the posterior-averaged noise power.

namespace crsim {

enum class EstimatorKind { mmse, lmmse };

// Pilot selection matrix of the training model Y = Q r + W. Row m observes
// the pilot at block index K-1-m with amplitude sqrt(pilot_energy); stored
// structurally so the invariant (one scaled unit entry per row) holds by
// construction.
struct PilotMatrix {
  int k_pilots = 1;
  int block_len = 1;  // K + M - 1
  double pilot_energy = 0.0;

  double amplitude() const;
  int column_of_row(int row) const { return k_pilots - 1 - row; }
  ComplexMatrix dense() const;
  // Q x for a block vector x.
  std::vector<cdouble> apply(std::span<const cdouble> x) const;
  // Q A for a block_len-row matrix A.
  ComplexMatrix left_product(const ComplexMatrix& a) const;
  // A Q^H for a matrix with block_len columns.
  ComplexMatrix right_product_adjoint(const ComplexMatrix& a) const;
};

PilotMatrix build_pilot_matrix(const FramePlan& f, double pilot_energy);

// Symbol times of a block, pilot times first: 0, M, ..., (K-1)M, then the
// M-1 data times following the last pilot.
std::vector<std::int64_t> block_times(const FramePlan& f);

struct TrainingObservation {
  std::vector<cdouble> y;  // most recent pilot first
  std::vector<std::int64_t> pilot_times;
  Decision decision = Decision::idle;
  double pilot_energy = 0.0;
};

struct ChannelEstimate {
  std::vector<cdouble> r_hat;
  // Analytic per-symbol L-MMSE mixture error variances. For the MMSE
  // estimator no closed form exists; the L-MMSE values are the closed-form
  // surrogate used everywhere downstream.
  std::vector<double> err_var;
  Decision decision = Decision::idle;
};

// A_i = Lambda Q^H (Q Lambda Q^H + sigma_w2 I)^{-1}; the per-hypothesis
// conditional-mean coefficient matrix. Throws SingularSystemError when the
// bracketed matrix is singular (possible only for sigma_w2 = 0).
ComplexMatrix conditional_linear_estimator(const CovarianceMatrix& cov, const PilotMatrix& q,
                                           double sigma_w2);

struct ErrorCovariance {
  ComplexMatrix mixture;                  // posterior-weighted over true states
  std::array<ComplexMatrix, 2> per_hyp;   // indexed by true hypothesis
};

// Everything precomputed for one sensing decision. A decision the sensor can
// never emit (zero marginal probability) gets a stub context with
// reachable = false; estimators reject it, samplers never produce it.
struct DecisionContext {
  Decision decision = Decision::idle;
  bool reachable = true;
  PilotMatrix q;
  double sigma_w2[2] = {0.0, 0.0};        // training disturbance per true state
  ProbabilityPair posterior;              // Pr{H_i | decision}, priors only
  double log_joint[2] = {0.0, 0.0};       // log(Pr{H_i} Pr{decision|H_i})
  ComplexMatrix lmmse_gain;               // block_len x K
  std::array<ComplexMatrix, 2> cond_gain; // A_i
  std::array<CholeskyHpd, 2> obs_chol;    // factors of Q Lambda Q^H + sigma_w2[i] I
  double obs_log_det[2] = {0.0, 0.0};
  ErrorCovariance err_cov;                // of the L-MMSE estimate
  std::vector<double> err_var;            // mixture diagonal
  double data_energy = 0.0;               // per-symbol energy under this decision
};

struct ScenarioContext {
  Scenario scenario;
  std::vector<std::int64_t> times;
  CovarianceMatrix cov;
  std::array<DecisionContext, 2> decisions;

  const DecisionContext& for_decision(Decision d) const { return decisions[index_of(d)]; }
};

DecisionContext make_decision_context(const Scenario& s, const CovarianceMatrix& cov,
                                      Decision decision);
ScenarioContext make_scenario_context(const Scenario& s);

ErrorCovariance lmmse_error_covariance(const CovarianceMatrix& cov, const PilotMatrix& q,
                                       const ProbabilityPair& posterior, const NoiseParams& noise);

// Total per-symbol L-MMSE MSE, assembled over decisions and true states with
// weights Pr{H_i} Pr{decision|H_i} and normalized by the block length.
double analytic_lmmse_mse(const ScenarioContext& ctx);
// Same, conditioned on one decision (the interweave metric conditions on idle).
double analytic_lmmse_mse_given(const ScenarioContext& ctx, Decision decision);

ChannelEstimate estimate_lmmse(const TrainingObservation& obs, const ScenarioContext& ctx);
ChannelEstimate estimate_mmse(const TrainingObservation& obs, const ScenarioContext& ctx);

// Bayes weight Pr{H1 | decision, Y} of the MMSE mixture, evaluated in the
// log domain (exposed for diagnostics and tests).
double mmse_posterior_busy_weight(const DecisionContext& dec, std::span<const cdouble> y);

// One simulated training block: state, fading at block times, observation.
struct TrialDraw {
  FrameState state;
  std::vector<cdouble> fading;
  TrainingObservation obs;
};
TrialDraw draw_training_trial(const ScenarioContext& ctx, RandomStream& rng);
// Fading and observation only, for a state drawn by the caller.
TrialDraw draw_training_trial_given(const ScenarioContext& ctx, FrameState state,
                                    RandomStream& rng);

enum class MseConditioning { all_frames, idle_decision_only };

struct MseEstimate {
  double mse = 0.0;
  double std_error = 0.0;
  std::uint64_t trials_used = 0;
};

// Empirical per-symbol MSE over independent trials; trial t draws from
// substream (seed, t), so the result is identical for any worker count and
// two estimator kinds see identical draws under the same seed.
MseEstimate monte_carlo_mse(const Scenario& s, EstimatorKind kind, std::uint64_t trials,
                            std::uint64_t seed, int workers = 0,
                            MseConditioning conditioning = MseConditioning::all_frames);

}  // namespace crsim

#endif  // CRSIM_ESTIMATION_HPP
