// SPDX-License-Identifier: Apache-2.0
// Copyright (C) 2026 the crsim authors

#ifndef CRSIM_FADING_HPP
#define CRSIM_FADING_HPP

#include <cstdint>
#include <span>
#include <vector>

#include "crsim/linalg.hpp"
#include "crsim/model.hpp"
#include "crsim/rng.hpp"

// First-order Gauss-Markov Rayleigh fading: r_k = alpha * r_{k-1} + zeta_k
// with zeta_k circular complex Gaussian of variance (1 - alpha^2) * sigma_r2,
// which leaves the process stationary with autocorrelation alpha^lag * sigma_r2.

namespace crsim {

struct CovarianceMatrix {
  ComplexMatrix entries;
  std::vector<std::int64_t> times;  // symbol time of each row/column
};

// alpha^lag * sigma_r2.
double autocorrelation(const FadingParams& p, std::int64_t lag);

// Stationary start (no burn-in), then the recursion; deterministic given rng.
std::vector<cdouble> generate_trajectory(const FadingParams& p, std::size_t length,
                                         RandomStream& rng);

// Entry (a, b) = sigma_r2 * alpha^|times[a] - times[b]|. Times must be
// strictly increasing. The construction is exactly Hermitian (real entries).
CovarianceMatrix block_covariance(const FadingParams& p, std::span<const std::int64_t> times);

}  // namespace crsim

#endif  // CRSIM_FADING_HPP
