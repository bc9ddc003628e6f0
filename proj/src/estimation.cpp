// SPDX-License-Identifier: Apache-2.0
// Copyright (C) 2026 the crsim authors

#include "crsim/estimation.hpp"

#include <cmath>
#include <stdexcept>

#include "crsim/kernels.hpp"
#include "crsim/parallel.hpp"

namespace crsim {

namespace {

constexpr double kLogZero = -1.0e300;

double safe_log(double x) { return x > 0.0 ? std::log(x) : kLogZero; }

}  // namespace

double PilotMatrix::amplitude() const { return std::sqrt(pilot_energy); }

ComplexMatrix PilotMatrix::dense() const {
  ComplexMatrix q(static_cast<std::size_t>(k_pilots), static_cast<std::size_t>(block_len));
  const double a = amplitude();
  for (int row = 0; row < k_pilots; ++row) q(row, column_of_row(row)) = a;
  return q;
}

std::vector<cdouble> PilotMatrix::apply(std::span<const cdouble> x) const {
  if (x.size() != static_cast<std::size_t>(block_len))
    throw std::invalid_argument("PilotMatrix: block size mismatch");
  std::vector<cdouble> out(static_cast<std::size_t>(k_pilots));
  const double a = amplitude();
  for (int row = 0; row < k_pilots; ++row) out[row] = a * x[column_of_row(row)];
  return out;
}

ComplexMatrix PilotMatrix::left_product(const ComplexMatrix& m) const {
  if (m.rows() != static_cast<std::size_t>(block_len))
    throw std::invalid_argument("PilotMatrix: row mismatch in left product");
  ComplexMatrix out(static_cast<std::size_t>(k_pilots), m.cols());
  const double a = amplitude();
  for (int row = 0; row < k_pilots; ++row) {
    const std::size_t src = static_cast<std::size_t>(column_of_row(row));
    for (std::size_t c = 0; c < m.cols(); ++c) out(row, c) = a * m(src, c);
  }
  return out;
}

ComplexMatrix PilotMatrix::right_product_adjoint(const ComplexMatrix& m) const {
  if (m.cols() != static_cast<std::size_t>(block_len))
    throw std::invalid_argument("PilotMatrix: column mismatch in right product");
  ComplexMatrix out(m.rows(), static_cast<std::size_t>(k_pilots));
  const double a = amplitude();
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (int col = 0; col < k_pilots; ++col)
      out(r, col) = a * m(r, static_cast<std::size_t>(column_of_row(col)));
  return out;
}

PilotMatrix build_pilot_matrix(const FramePlan& f, double pilot_energy) {
  if (f.k_pilots < 1 || f.m < 2)
    throw std::invalid_argument("build_pilot_matrix: need k_pilots >= 1 and m >= 2");
  if (pilot_energy < 0.0)
    throw std::invalid_argument("build_pilot_matrix: pilot_energy must be >= 0");
  return {f.k_pilots, f.k_pilots + f.m - 1, pilot_energy};
}

std::vector<std::int64_t> block_times(const FramePlan& f) {
  std::vector<std::int64_t> times;
  times.reserve(static_cast<std::size_t>(f.k_pilots + f.m - 1));
  for (int p = 0; p < f.k_pilots; ++p) times.push_back(static_cast<std::int64_t>(p) * f.m);
  const std::int64_t last_pilot = static_cast<std::int64_t>(f.k_pilots - 1) * f.m;
  for (int d = 1; d < f.m; ++d) times.push_back(last_pilot + d);
  return times;
}

ComplexMatrix conditional_linear_estimator(const CovarianceMatrix& cov, const PilotMatrix& q,
                                           double sigma_w2) {
  // A = Lambda Q^H B^{-1} with B = Q Lambda Q^H + sigma_w2 I; both Lambda and
  // B are Hermitian, so A = (B^{-1} Q Lambda)^H via one Cholesky solve.
  ComplexMatrix q_lambda = q.left_product(cov.entries);
  ComplexMatrix b = q.right_product_adjoint(q_lambda);
  b.add_scaled_identity(sigma_w2);
  const CholeskyHpd chol = CholeskyHpd::factor(b);
  return chol.solve(q_lambda).adjoint();
}

ErrorCovariance lmmse_error_covariance(const CovarianceMatrix& cov, const PilotMatrix& q,
                                       const ProbabilityPair& posterior,
                                       const NoiseParams& noise) {
  const double sigma_eff2 = noise.sigma_n2 + posterior.busy * noise.sigma_s2;
  const ComplexMatrix gain = conditional_linear_estimator(cov, q, sigma_eff2);
  const ComplexMatrix q_lambda = q.left_product(cov.entries);  // K x n
  const ComplexMatrix g_q_lambda = gain * q_lambda;            // n x n
  const ComplexMatrix g_q_lambda_h = g_q_lambda.adjoint();
  const ComplexMatrix gram = q.right_product_adjoint(q_lambda);  // Q Lambda Q^H
  const ComplexMatrix gain_h = gain.adjoint();

  ErrorCovariance out;
  const double weights[2] = {posterior.idle, posterior.busy};
  ComplexMatrix mixture(cov.entries.rows(), cov.entries.cols());
  for (int i = 0; i < 2; ++i) {
    const double sw2 = noise_variance(noise, static_cast<Hypothesis>(i));
    ComplexMatrix obs_cov = gram;
    obs_cov.add_scaled_identity(sw2);
    ComplexMatrix err = cov.entries - g_q_lambda - g_q_lambda_h + gain * obs_cov * gain_h;
    if (weights[i] > 0.0) {
      for (std::size_t r = 0; r < err.rows(); ++r)
        for (std::size_t c = 0; c < err.cols(); ++c) mixture(r, c) += weights[i] * err(r, c);
    }
    out.per_hyp[i] = std::move(err);
  }
  out.mixture = std::move(mixture);
  return out;
}

DecisionContext make_decision_context(const Scenario& s, const CovarianceMatrix& cov,
                                      Decision decision) {
  DecisionContext dec;
  dec.decision = decision;
  dec.q = build_pilot_matrix(s.frame, pilot_energy(s.energy, s.frame, s.noise, decision));
  dec.sigma_w2[0] = noise_variance(s.noise, Hypothesis::idle);
  dec.sigma_w2[1] = noise_variance(s.noise, Hypothesis::busy);
  dec.data_energy = data_energy(s.energy, s.frame, s.noise, decision);

  const ProbabilityPair marginals = sensing_marginals(s.sensing);
  const double marginal = decision == Decision::idle ? marginals.idle : marginals.busy;
  if (marginal <= 0.0) {
    dec.reachable = false;
    return dec;
  }
  dec.posterior = hypothesis_posterior(s.sensing, decision);

  const double prior_idle = 1.0 - s.sensing.prior_busy;
  const double like_idle = decision == Decision::busy ? s.sensing.p_f : 1.0 - s.sensing.p_f;
  const double like_busy = decision == Decision::busy ? s.sensing.p_d : 1.0 - s.sensing.p_d;
  dec.log_joint[0] = safe_log(prior_idle * like_idle);
  dec.log_joint[1] = safe_log(s.sensing.prior_busy * like_busy);

  const double sigma_eff2 = s.noise.sigma_n2 + dec.posterior.busy * s.noise.sigma_s2;
  dec.lmmse_gain = conditional_linear_estimator(cov, dec.q, sigma_eff2);
  const ComplexMatrix q_lambda = dec.q.left_product(cov.entries);
  const ComplexMatrix gram = dec.q.right_product_adjoint(q_lambda);
  for (int i = 0; i < 2; ++i) {
    dec.cond_gain[i] = conditional_linear_estimator(cov, dec.q, dec.sigma_w2[i]);
    ComplexMatrix obs_cov = gram;
    obs_cov.add_scaled_identity(dec.sigma_w2[i]);
    dec.obs_chol[i] = CholeskyHpd::factor(obs_cov);
    dec.obs_log_det[i] = dec.obs_chol[i].log_det();
  }
  dec.err_cov = lmmse_error_covariance(cov, dec.q, dec.posterior, s.noise);
  dec.err_var = dec.err_cov.mixture.real_diagonal();
  // The mixture diagonal is nonnegative up to rounding.
  for (double& v : dec.err_var) v = v < 0.0 ? 0.0 : v;
  return dec;
}

ScenarioContext make_scenario_context(const Scenario& s) {
  validate(s);
  ScenarioContext ctx;
  ctx.scenario = s;
  ctx.times = block_times(s.frame);
  ctx.cov = block_covariance(s.fading, ctx.times);
  ctx.decisions[0] = make_decision_context(s, ctx.cov, Decision::idle);
  ctx.decisions[1] = make_decision_context(s, ctx.cov, Decision::busy);
  return ctx;
}

double analytic_lmmse_mse(const ScenarioContext& ctx) {
  const SensingModel& sensing = ctx.scenario.sensing;
  const double prior[2] = {1.0 - sensing.prior_busy, sensing.prior_busy};
  double total = 0.0;
  for (int j = 0; j < 2; ++j) {
    const DecisionContext& dec = ctx.decisions[j];
    if (!dec.reachable) continue;  // its joint weights are all zero
    const double like[2] = {j == 1 ? sensing.p_f : 1.0 - sensing.p_f,
                            j == 1 ? sensing.p_d : 1.0 - sensing.p_d};
    for (int i = 0; i < 2; ++i)
      total += prior[i] * like[i] * dec.err_cov.per_hyp[i].trace_real();
  }
  return total / static_cast<double>(ctx.times.size());
}

double analytic_lmmse_mse_given(const ScenarioContext& ctx, Decision decision) {
  const DecisionContext& dec = ctx.for_decision(decision);
  if (!dec.reachable)
    throw std::domain_error("analytic_lmmse_mse_given: decision has zero probability");
  return dec.err_cov.mixture.trace_real() / static_cast<double>(ctx.times.size());
}

namespace {

void check_observation(const TrainingObservation& obs, const ScenarioContext& ctx) {
  const DecisionContext& dec = ctx.for_decision(obs.decision);
  if (!dec.reachable)
    throw std::domain_error("estimate: observation carries a zero-probability decision");
  if (obs.y.size() != static_cast<std::size_t>(dec.q.k_pilots))
    throw std::invalid_argument("observation size does not match the frame plan");
}

}  // namespace

ChannelEstimate estimate_lmmse(const TrainingObservation& obs, const ScenarioContext& ctx) {
  check_observation(obs, ctx);
  const DecisionContext& dec = ctx.for_decision(obs.decision);
  ChannelEstimate est;
  est.decision = obs.decision;
  est.r_hat = dec.lmmse_gain.apply(obs.y);
  est.err_var = dec.err_var;
  return est;
}

double mmse_posterior_busy_weight(const DecisionContext& dec, std::span<const cdouble> y) {
  // log Pr{H_i} Pr{decision|H_i} f(Y|decision,H_i) up to a common constant;
  // the Gaussian exponent is the whitened norm from the Cholesky factor.
  double logw[2];
  std::vector<cdouble> scratch(y.size());
  for (int i = 0; i < 2; ++i) {
    if (dec.log_joint[i] <= kLogZero) {
      logw[i] = kLogZero;
      continue;
    }
    scratch.assign(y.begin(), y.end());
    dec.obs_chol[i].forward_solve_in_place(scratch);
    double quad = 0.0;
    for (const cdouble& v : scratch) quad += std::norm(v);
    logw[i] = dec.log_joint[i] - dec.obs_log_det[i] - quad;
  }
  const double hi = logw[0] > logw[1] ? logw[0] : logw[1];
  const double e0 = std::exp(logw[0] - hi);
  const double e1 = std::exp(logw[1] - hi);
  return e1 / (e0 + e1);
}

ChannelEstimate estimate_mmse(const TrainingObservation& obs, const ScenarioContext& ctx) {
  check_observation(obs, ctx);
  const DecisionContext& dec = ctx.for_decision(obs.decision);
  const double w_busy = mmse_posterior_busy_weight(dec, obs.y);
  const double w_idle = 1.0 - w_busy;
  ChannelEstimate est;
  est.decision = obs.decision;
  est.err_var = dec.err_var;
  const std::vector<cdouble> idle_part = dec.cond_gain[0].apply(obs.y);
  const std::vector<cdouble> busy_part = dec.cond_gain[1].apply(obs.y);
  est.r_hat.resize(idle_part.size());
  for (std::size_t i = 0; i < est.r_hat.size(); ++i)
    est.r_hat[i] = w_idle * idle_part[i] + w_busy * busy_part[i];
  return est;
}

TrialDraw draw_training_trial(const ScenarioContext& ctx, RandomStream& rng) {
  return draw_training_trial_given(ctx, draw_frame_state(ctx.scenario.sensing, rng), rng);
}

TrialDraw draw_training_trial_given(const ScenarioContext& ctx, FrameState state,
                                    RandomStream& rng) {
  TrialDraw trial;
  trial.state = state;
  // Contiguous trajectory over the whole block span keeps the recursion
  // exact; the block picks out pilot and data times.
  const std::size_t span = static_cast<std::size_t>(ctx.times.back()) + 1;
  const std::vector<cdouble> path = generate_trajectory(ctx.scenario.fading, span, rng);
  trial.fading.resize(ctx.times.size());
  for (std::size_t i = 0; i < ctx.times.size(); ++i)
    trial.fading[i] = path[static_cast<std::size_t>(ctx.times[i])];

  const DecisionContext& dec = ctx.for_decision(trial.state.decision);
  const double noise_scale = std::sqrt(dec.sigma_w2[index_of(trial.state.true_state)]);
  trial.obs.decision = trial.state.decision;
  trial.obs.pilot_energy = dec.q.pilot_energy;
  trial.obs.y = dec.q.apply(trial.fading);
  trial.obs.pilot_times.resize(static_cast<std::size_t>(dec.q.k_pilots));
  for (int m = 0; m < dec.q.k_pilots; ++m)
    trial.obs.pilot_times[m] = ctx.times[static_cast<std::size_t>(dec.q.column_of_row(m))];
  for (cdouble& v : trial.obs.y) v += noise_scale * rng.next_cnormal();
  return trial;
}

MseEstimate monte_carlo_mse(const Scenario& s, EstimatorKind kind, std::uint64_t trials,
                            std::uint64_t seed, int workers, MseConditioning conditioning) {
  if (trials == 0) throw std::invalid_argument("monte_carlo_mse: trials must be >= 1");
  const ScenarioContext ctx = make_scenario_context(s);
  const std::size_t block_len = ctx.times.size();

  constexpr std::size_t kChunk = 1024;
  struct ChunkAccum {
    double sum = 0.0;
    double sum_sq = 0.0;
    std::uint64_t count = 0;
  };
  std::vector<ChunkAccum> chunks(chunk_count(trials, kChunk));

  parallel_for_chunks(trials, kChunk, workers, [&](std::size_t c, std::size_t begin, std::size_t end) {
    ChunkAccum acc;
    std::vector<double> sq(block_len);
    for (std::size_t t = begin; t < end; ++t) {
      RandomStream rng(seed, t);
      const TrialDraw trial = draw_training_trial(ctx, rng);
      if (conditioning == MseConditioning::idle_decision_only &&
          trial.state.decision != Decision::idle)
        continue;
      const ChannelEstimate est = kind == EstimatorKind::lmmse ? estimate_lmmse(trial.obs, ctx)
                                                               : estimate_mmse(trial.obs, ctx);
      kernels::abs2_diff(trial.fading.data(), est.r_hat.data(), sq.data(), block_len);
      const double err = kernels::pairwise_sum(sq) / static_cast<double>(block_len);
      acc.sum += err;
      acc.sum_sq += err * err;
      acc.count += 1;
    }
    chunks[c] = acc;
  });

  ChunkAccum total;
  for (const ChunkAccum& acc : chunks) {
    total.sum += acc.sum;
    total.sum_sq += acc.sum_sq;
    total.count += acc.count;
  }
  if (total.count == 0)
    throw std::domain_error("monte_carlo_mse: no trials matched the conditioning");
  const double n = static_cast<double>(total.count);
  const double mean = total.sum / n;
  const double var = total.count > 1 ? (total.sum_sq - n * mean * mean) / (n - 1.0) : 0.0;
  return {mean, std::sqrt(var > 0.0 ? var / n : 0.0), total.count};
}

}  // namespace crsim
