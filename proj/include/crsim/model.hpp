// SPDX-License-Identifier: Apache-2.0
// Copyright (C) 2026 the crsim authors

#ifndef CRSIM_MODEL_HPP
#define CRSIM_MODEL_HPP

#include <cmath>

// Scenario parameters and the closed-form probability/energy bookkeeping of
// the cognitive-radio link model: a secondary pair senses primary-user
// activity (imperfectly), then trains and transmits with powers keyed to the
// sensing decision. All powers are linear ratios normalized by B*sigma_n^2;
// dB conversion happens only at the config boundary.

namespace crsim {

// True primary-user state.
enum class Hypothesis : int { idle = 0, busy = 1 };
// Sensing decision.
enum class Decision : int { idle = 0, busy = 1 };

constexpr int index_of(Hypothesis h) { return static_cast<int>(h); }
constexpr int index_of(Decision d) { return static_cast<int>(d); }

struct FadingParams {
  double alpha = 0.95;    // per-symbol correlation, 0 <= alpha <= 1
  double sigma_r2 = 1.0;  // fading power, > 0
};

struct NoiseParams {
  double sigma_n2 = 1.0;  // receiver noise variance, > 0
  double sigma_s2 = 1.0;  // primary interference power, >= 0
};

struct SensingModel {
  double p_d = 0.9;        // Pr{decide busy | busy}
  double p_f = 0.2;        // Pr{decide busy | idle}
  double prior_busy = 0.2; // Pr{H1}
};

struct FramePlan {
  int m = 10;        // pilot period in symbols (M = TB), >= 2
  int l_blocks = 10; // blocks per frame (L), >= 1
  int k_pilots = 1;  // past pilots used per estimate (K), 1 <= K <= L
};

struct EnergyPolicy {
  double snr_idle = 10.0; // P0/(B sigma_n^2), linear, >= 0
  double snr_busy = 1.0;  // P1/(B sigma_n^2), linear, >= 0
  double mu_idle = 0.1;   // training energy fraction under idle decision
  double mu_busy = 0.1;   // training energy fraction under busy decision
};

struct Scenario {
  FadingParams fading;
  NoiseParams noise;
  SensingModel sensing;
  FramePlan frame;
  EnergyPolicy energy;
};

struct ProbabilityPair {
  double idle = 0.0;
  double busy = 0.0;
};

// Throw std::invalid_argument naming the offending field on violation.
void validate(const FadingParams& p);
void validate(const NoiseParams& p);
void validate(const SensingModel& p);
void validate(const FramePlan& p);
void validate(const EnergyPolicy& p);
void validate(const Scenario& s);

// (Pr{decide idle}, Pr{decide busy}) by total probability.
ProbabilityPair sensing_marginals(const SensingModel& s);

// (Pr{H0|decision}, Pr{H1|decision}) by Bayes' rule using priors only.
// Throws std::domain_error if the requested decision has zero probability.
ProbabilityPair hypothesis_posterior(const SensingModel& s, Decision decision);

// Disturbance variance during training given the true state.
double noise_variance(const NoiseParams& n, Hypothesis true_state);

// Pilot-symbol energy under the given sensing decision.
double pilot_energy(const EnergyPolicy& e, const FramePlan& f, const NoiseParams& n,
                    Decision decision);

// Per-data-symbol energy under the given sensing decision.
double data_energy(const EnergyPolicy& e, const FramePlan& f, const NoiseParams& n,
                   Decision decision);

inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
inline double linear_to_db(double x) { return 10.0 * std::log10(x); }

}  // namespace crsim

#endif  // CRSIM_MODEL_HPP
