// SPDX-License-Identifier: Apache-2.0
// Copyright (C) 2026 the crsim authors

#include "crsim/rates.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "crsim/kernels.hpp"
#include "crsim/parallel.hpp"

namespace crsim {

namespace {

constexpr double kInvLn2 = 1.44269504088896340736;

struct MixtureSetup {
  kernels::BpskMixture params;
  double sigma2[2] = {0.0, 0.0};  // component variances (idle, busy)
};

MixtureSetup make_mixture(double err_var, double symbol_energy, double posterior_busy,
                          const NoiseParams& noise) {
  MixtureSetup mix;
  mix.sigma2[0] = noise.sigma_n2 + err_var * symbol_energy;
  mix.sigma2[1] = noise.sigma_n2 + noise.sigma_s2 + err_var * symbol_energy;
  const double w0 = 1.0 - posterior_busy;
  mix.params.log_c0 = w0 > 0.0 ? std::log(w0) - std::log(mix.sigma2[0])
                               : kernels::detail::kNegInfLog;
  mix.params.log_c1 = posterior_busy > 0.0 ? std::log(posterior_busy) - std::log(mix.sigma2[1])
                                           : kernels::detail::kNegInfLog;
  mix.params.inv_s0 = 1.0 / mix.sigma2[0];
  mix.params.inv_s1 = 1.0 / mix.sigma2[1];
  return mix;
}

// Scratch buffers reused across trials of one chunk.
struct RateWorkspace {
  std::vector<double> d_sent;
  std::vector<double> d_other;
  std::vector<double> bits;
  std::vector<double> snr;
  std::vector<double> pos_bits;
};

// Inner Monte Carlo for one data position given a realized estimate. The
// disturbance component is fixed by the frame's true state; the symbol and
// the unit noise draw come from the trial substream.
double bpsk_position_bits(cdouble r_hat, const MixtureSetup& mix, double symbol_amplitude,
                          Hypothesis true_state, std::uint64_t samples, RandomStream& rng,
                          RateWorkspace& ws) {
  const double noise_scale = std::sqrt(mix.sigma2[index_of(true_state)]);
  ws.d_sent.resize(samples);
  ws.d_other.resize(samples);
  ws.bits.resize(samples);
  for (std::uint64_t i = 0; i < samples; ++i) {
    const double sign = rng.next_double() < 0.5 ? 1.0 : -1.0;
    const cdouble z = noise_scale * rng.next_cnormal();
    const cdouble to_other = z + (2.0 * sign * symbol_amplitude) * r_hat;
    ws.d_sent[i] = std::norm(z);
    ws.d_other[i] = std::norm(to_other);
  }
  kernels::bpsk_bits(ws.d_sent.data(), ws.d_other.data(), ws.bits.data(), samples, mix.params);
  return kernels::pairwise_sum(ws.bits) / static_cast<double>(samples);
}

// Per-trial block contribution (1/M) sum over data positions, for the
// trial's own decision.
double trial_block_bits(const ScenarioContext& ctx, InputKind input, const TrialDraw& trial,
                        std::uint64_t inner_samples, RandomStream& rng, RateWorkspace& ws) {
  const DecisionContext& dec = ctx.for_decision(trial.state.decision);
  const int m = ctx.scenario.frame.m;
  const int k_pilots = ctx.scenario.frame.k_pilots;
  if (dec.data_energy <= 0.0) return 0.0;

  const std::vector<cdouble> r_hat = dec.lmmse_gain.apply(trial.obs.y);
  if (input == InputKind::gaussian) {
    ws.snr.resize(static_cast<std::size_t>(m - 1));
    ws.pos_bits.resize(static_cast<std::size_t>(m - 1));
    const double extra = ctx.scenario.noise.sigma_n2 +
                         dec.posterior.busy * ctx.scenario.noise.sigma_s2;
    for (int d = 1; d < m; ++d) {
      const std::size_t idx = static_cast<std::size_t>(k_pilots - 1 + d);
      const double den = dec.err_var[idx] * dec.data_energy + extra;
      ws.snr[static_cast<std::size_t>(d - 1)] = std::norm(r_hat[idx]) * dec.data_energy / den;
    }
    kernels::vlog2_1p(ws.snr.data(), ws.pos_bits.data(), ws.snr.size());
    return kernels::pairwise_sum(ws.pos_bits) / static_cast<double>(m);
  }

  const double amplitude = std::sqrt(dec.data_energy);
  double total = 0.0;
  for (int d = 1; d < m; ++d) {
    const std::size_t idx = static_cast<std::size_t>(k_pilots - 1 + d);
    const MixtureSetup mix =
        make_mixture(dec.err_var[idx], dec.data_energy, dec.posterior.busy, ctx.scenario.noise);
    total += bpsk_position_bits(r_hat[idx], mix, amplitude, trial.state.true_state,
                                inner_samples, rng, ws);
  }
  return total / static_cast<double>(m);
}

struct Accum {
  double sum = 0.0;
  double sum_sq = 0.0;
  std::uint64_t count = 0;
};

Accum reduce(const std::vector<Accum>& chunks) {
  Accum total;
  for (const Accum& a : chunks) {
    total.sum += a.sum;
    total.sum_sq += a.sum_sq;
    total.count += a.count;
  }
  return total;
}

MiEstimate finish(const Accum& total) {
  if (total.count == 0) return {0.0, 0.0, 0};
  const double n = static_cast<double>(total.count);
  const double mean = total.sum / n;
  const double var = total.count > 1 ? (total.sum_sq - n * mean * mean) / (n - 1.0) : 0.0;
  return {mean, std::sqrt(var > 0.0 ? var / n : 0.0), total.count};
}

}  // namespace

double Constellation::average_energy() const {
  double e = 0.0;
  for (std::size_t u = 0; u < points.size(); ++u) e += priors[u] * std::norm(points[u]);
  return e;
}

Constellation bpsk_constellation(double e_d) {
  const double a = std::sqrt(e_d);
  return {{cdouble{-a, 0.0}, cdouble{a, 0.0}}, {0.5, 0.5}};
}

void validate(const Constellation& c, double expected_energy) {
  if (c.points.empty() || c.points.size() != c.priors.size())
    throw std::invalid_argument("Constellation: points/priors size mismatch");
  double total = 0.0;
  for (double p : c.priors) {
    if (p < 0.0) throw std::invalid_argument("Constellation: negative prior");
    total += p;
  }
  if (std::abs(total - 1.0) > 1e-12)
    throw std::invalid_argument("Constellation: priors must sum to 1");
  if (expected_energy >= 0.0) {
    const double e = c.average_energy();
    if (std::abs(e - expected_energy) > 1e-9 * std::max(1.0, expected_energy))
      throw std::invalid_argument("Constellation: average energy does not match E_d");
  }
}

double mixture_likelihood(cdouble y, cdouble x, cdouble r_hat, double err_var,
                          const ProbabilityPair& posterior, const NoiseParams& noise) {
  if (err_var < 0.0) throw std::invalid_argument("mixture_likelihood: err_var must be >= 0");
  const double d = std::norm(y - r_hat * x);
  const double s0 = noise.sigma_n2 + err_var * std::norm(x);
  const double s1 = s0 + noise.sigma_s2;
  const double pi = std::numbers::pi;
  return posterior.idle / (pi * s0) * std::exp(-d / s0) +
         posterior.busy / (pi * s1) * std::exp(-d / s1);
}

double gaussian_rate_bound(double r_hat_sq, double err_var, double e_d, const NoiseParams& noise,
                           double posterior_busy) {
  if (e_d <= 0.0 || r_hat_sq <= 0.0) return 0.0;
  const double den = err_var * e_d + noise.sigma_n2 + posterior_busy * noise.sigma_s2;
  return std::log1p(r_hat_sq * e_d / den) * kInvLn2;
}

MiEstimate bpsk_mi_given_estimate(cdouble r_hat, double err_var, double e_d,
                                  double posterior_busy, const NoiseParams& noise,
                                  std::uint64_t samples, RandomStream& rng) {
  if (samples == 0) throw std::invalid_argument("bpsk_mi_given_estimate: samples must be >= 1");
  if (e_d <= 0.0) return {0.0, 0.0, samples};
  const MixtureSetup mix = make_mixture(err_var, e_d, posterior_busy, noise);
  const double amplitude = std::sqrt(e_d);
  std::vector<double> d_sent(samples), d_other(samples), bits(samples);
  for (std::uint64_t i = 0; i < samples; ++i) {
    const Hypothesis component =
        rng.next_double() < posterior_busy ? Hypothesis::busy : Hypothesis::idle;
    const double sign = rng.next_double() < 0.5 ? 1.0 : -1.0;
    const cdouble z = std::sqrt(mix.sigma2[index_of(component)]) * rng.next_cnormal();
    d_sent[i] = std::norm(z);
    d_other[i] = std::norm(z + (2.0 * sign * amplitude) * r_hat);
  }
  kernels::bpsk_bits(d_sent.data(), d_other.data(), bits.data(), samples, mix.params);
  const double n = static_cast<double>(samples);
  const double mean = kernels::pairwise_sum(bits) / n;
  double var = 0.0;
  for (double b : bits) var += (b - mean) * (b - mean);
  var = samples > 1 ? var / (n - 1.0) : 0.0;
  const double clipped = mean < 0.0 ? 0.0 : (mean > 1.0 ? 1.0 : mean);
  return {clipped, std::sqrt(var / n), samples};
}

MiEstimate constellation_mi_given_estimate(const Constellation& c, cdouble r_hat,
                                           double err_var, double posterior_busy,
                                           const NoiseParams& noise, std::uint64_t samples,
                                           RandomStream& rng) {
  validate(c);
  if (samples == 0)
    throw std::invalid_argument("constellation_mi_given_estimate: samples must be >= 1");
  const std::size_t u_count = c.points.size();
  const ProbabilityPair posterior{1.0 - posterior_busy, posterior_busy};
  // Cumulative priors for symbol sampling.
  std::vector<double> cdf(u_count);
  double acc = 0.0;
  for (std::size_t u = 0; u < u_count; ++u) {
    acc += c.priors[u];
    cdf[u] = acc;
  }
  double sum = 0.0, sum_sq = 0.0;
  const double log2_u = std::log2(static_cast<double>(u_count));
  for (std::uint64_t i = 0; i < samples; ++i) {
    const double pick = rng.next_double();
    std::size_t u = 0;
    while (u + 1 < u_count && pick >= cdf[u]) ++u;
    const cdouble x = c.points[u];
    const bool busy = rng.next_double() < posterior_busy;
    const double var = noise.sigma_n2 + (busy ? noise.sigma_s2 : 0.0) + err_var * std::norm(x);
    const cdouble y = r_hat * x + std::sqrt(var) * rng.next_cnormal();
    const double sent = mixture_likelihood(y, x, r_hat, err_var, posterior, noise);
    double marginal = 0.0;
    for (std::size_t v = 0; v < u_count; ++v)
      marginal += c.priors[v] * mixture_likelihood(y, c.points[v], r_hat, err_var, posterior,
                                                   noise);
    const double bits = std::log2(sent / marginal);
    sum += bits;
    sum_sq += bits * bits;
  }
  const double n = static_cast<double>(samples);
  const double mean = sum / n;
  const double var = samples > 1 ? (sum_sq - n * mean * mean) / (n - 1.0) : 0.0;
  MiEstimate est{mean, std::sqrt(var > 0.0 ? var / n : 0.0), samples};
  est.bits = est.bits < 0.0 ? 0.0 : (est.bits > log2_u ? log2_u : est.bits);
  return est;
}

MiEstimate bpsk_mutual_information(const Scenario& s, Decision decision, int position,
                                   std::uint64_t outer_trials, std::uint64_t inner_samples,
                                   std::uint64_t seed, int workers) {
  if (position < 1 || position >= s.frame.m)
    throw std::invalid_argument("bpsk_mutual_information: position must be in [1, M-1]");
  if (outer_trials == 0 || inner_samples == 0)
    throw std::invalid_argument("bpsk_mutual_information: sample counts must be >= 1");
  const ScenarioContext ctx = make_scenario_context(s);
  const DecisionContext& dec = ctx.for_decision(decision);
  if (!dec.reachable) return {0.0, 0.0, 0};
  const std::size_t idx = static_cast<std::size_t>(s.frame.k_pilots - 1 + position);

  constexpr std::size_t kChunk = 256;
  std::vector<Accum> chunks(chunk_count(outer_trials, kChunk));
  parallel_for_chunks(outer_trials, kChunk, workers,
                      [&](std::size_t c, std::size_t begin, std::size_t end) {
    Accum acc;
    RateWorkspace ws;
    for (std::size_t t = begin; t < end; ++t) {
      RandomStream rng(seed, t);
      const FrameState state = draw_frame_state(ctx.scenario.sensing, rng);
      if (state.decision != decision) continue;
      const TrialDraw trial = draw_training_trial_given(ctx, state, rng);
      double value = 0.0;
      if (dec.data_energy > 0.0) {
        const std::vector<cdouble> r_hat = dec.lmmse_gain.apply(trial.obs.y);
        const MixtureSetup mix = make_mixture(dec.err_var[idx], dec.data_energy,
                                              dec.posterior.busy, ctx.scenario.noise);
        value = bpsk_position_bits(r_hat[idx], mix, std::sqrt(dec.data_energy),
                                   state.true_state, inner_samples, rng, ws);
      }
      acc.sum += value;
      acc.sum_sq += value * value;
      acc.count += 1;
    }
    chunks[c] = acc;
  });

  MiEstimate est = finish(reduce(chunks));
  est.bits = est.bits < 0.0 ? 0.0 : (est.bits > 1.0 ? 1.0 : est.bits);
  return est;
}

RatePoint block_rate(const Scenario& s, InputKind input, std::uint64_t trials,
                     std::uint64_t inner_samples, std::uint64_t seed, int workers) {
  if (trials == 0) throw std::invalid_argument("block_rate: trials must be >= 1");
  if (input == InputKind::bpsk && inner_samples == 0)
    throw std::invalid_argument("block_rate: inner_samples must be >= 1 for BPSK");
  const ScenarioContext ctx = make_scenario_context(s);

  constexpr std::size_t kChunk = 256;
  std::vector<Accum> chunks(chunk_count(trials, kChunk));
  parallel_for_chunks(trials, kChunk, workers,
                      [&](std::size_t c, std::size_t begin, std::size_t end) {
    Accum acc;
    RateWorkspace ws;
    for (std::size_t t = begin; t < end; ++t) {
      RandomStream rng(seed, t);
      const TrialDraw trial = draw_training_trial(ctx, rng);
      const double value = trial_block_bits(ctx, input, trial, inner_samples, rng, ws);
      acc.sum += value;
      acc.sum_sq += value * value;
      acc.count += 1;
    }
    chunks[c] = acc;
  });

  const MiEstimate est = finish(reduce(chunks));
  RatePoint point;
  point.rate = est.bits < 0.0 ? 0.0 : est.bits;
  point.std_error = est.std_error;
  point.m = s.frame.m;
  point.mu_idle = s.energy.mu_idle;
  point.mu_busy = s.energy.mu_busy;
  return point;
}

MiEstimate conditional_block_rate(const Scenario& s, Decision decision, InputKind input,
                                  std::uint64_t trials, std::uint64_t inner_samples,
                                  std::uint64_t seed, int workers) {
  if (trials == 0) throw std::invalid_argument("conditional_block_rate: trials must be >= 1");
  const ScenarioContext ctx = make_scenario_context(s);
  if (!ctx.for_decision(decision).reachable) return {0.0, 0.0, 0};

  constexpr std::size_t kChunk = 256;
  std::vector<Accum> chunks(chunk_count(trials, kChunk));
  parallel_for_chunks(trials, kChunk, workers,
                      [&](std::size_t c, std::size_t begin, std::size_t end) {
    Accum acc;
    RateWorkspace ws;
    for (std::size_t t = begin; t < end; ++t) {
      RandomStream rng(seed, t);
      const FrameState state = draw_frame_state(ctx.scenario.sensing, rng);
      if (state.decision != decision) continue;
      const TrialDraw trial = draw_training_trial_given(ctx, state, rng);
      const double value = trial_block_bits(ctx, input, trial, inner_samples, rng, ws);
      acc.sum += value;
      acc.sum_sq += value * value;
      acc.count += 1;
    }
    chunks[c] = acc;
  });

  return finish(reduce(chunks));
}

}  // namespace crsim
