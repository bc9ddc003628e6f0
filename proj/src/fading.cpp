// SPDX-License-Identifier: Apache-2.0
// Copyright (C) 2026 the crsim authors

#include "crsim/fading.hpp"

#include <cmath>
#include <stdexcept>

namespace crsim {

double autocorrelation(const FadingParams& p, std::int64_t lag) {
  if (lag < 0) throw std::invalid_argument("autocorrelation: lag must be >= 0");
  if (lag == 0) return p.sigma_r2;
  return std::pow(p.alpha, static_cast<double>(lag)) * p.sigma_r2;
}

std::vector<cdouble> generate_trajectory(const FadingParams& p, std::size_t length,
                                         RandomStream& rng) {
  if (length == 0) throw std::invalid_argument("generate_trajectory: length must be >= 1");
  std::vector<cdouble> r(length);
  const double stationary_scale = std::sqrt(p.sigma_r2);
  r[0] = stationary_scale * rng.next_cnormal();
  const double innovation_scale = std::sqrt((1.0 - p.alpha * p.alpha) * p.sigma_r2);
  for (std::size_t k = 1; k < length; ++k)
    r[k] = p.alpha * r[k - 1] + innovation_scale * rng.next_cnormal();
  return r;
}

CovarianceMatrix block_covariance(const FadingParams& p, std::span<const std::int64_t> times) {
  if (times.empty()) throw std::invalid_argument("block_covariance: times must be non-empty");
  for (std::size_t i = 1; i < times.size(); ++i)
    if (times[i] <= times[i - 1])
      throw std::invalid_argument("block_covariance: times must be strictly increasing");
  const std::size_t n = times.size();
  CovarianceMatrix cov;
  cov.times.assign(times.begin(), times.end());
  cov.entries = ComplexMatrix(n, n);
  for (std::size_t a = 0; a < n; ++a) {
    cov.entries(a, a) = p.sigma_r2;
    for (std::size_t b = a + 1; b < n; ++b) {
      const double v = autocorrelation(p, times[b] - times[a]);
      cov.entries(a, b) = v;
      cov.entries(b, a) = v;
    }
  }
  return cov;
}

}  // namespace crsim
