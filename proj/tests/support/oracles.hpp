// SPDX-License-Identifier: Apache-2.0
// Copyright (C) 2026 the crsim authors

#ifndef CRSIM_TESTS_ORACLES_HPP
#define CRSIM_TESTS_ORACLES_HPP

#include <complex>
#include <cstdint>
#include <vector>

#include "crsim/linalg.hpp"
#include "crsim/model.hpp"

// Independent reference implementations used only by tests. Everything here
// deliberately avoids the library's kernels and estimator code paths: plain
// std math, quadrature instead of closed forms, and a Jacobi eigensolver for
// definiteness checks.

namespace crsim::oracles {

struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

// Gauss-Legendre on [-1, 1].
QuadratureRule gauss_legendre(int n);
// Gauss-Hermite with weight exp(-x^2).
QuadratureRule gauss_hermite(int n);

// Eigenvalues of a Hermitian matrix by cyclic complex Jacobi sweeps.
std::vector<double> hermitian_eigenvalues(const ComplexMatrix& a, double tol = 1e-12,
                                          int max_sweeps = 60);

// Integral of the two-component mixture density over the complex plane by
// tensor Gauss-Legendre on a box centered at the mean.
double mixture_density_integral(std::complex<double> x, std::complex<double> r_hat,
                                double err_var, const ProbabilityPair& posterior,
                                const NoiseParams& noise, int n = 240);

// Exact mutual information of equiprobable BPSK +-amplitude over a complex
// AWGN channel with gain r_hat and total noise variance sigma2, in bits,
// by 2-D Gauss-Hermite quadrature.
double bpsk_awgn_mi(double amplitude, std::complex<double> r_hat, double sigma2, int n = 80);

// Direct Monte Carlo estimate of the Gaussian-input mutual information with
// the two-component mixture disturbance (estimation error folded in):
//   z | x, i ~ CN(0, err_var |x|^2 + sigma_n^2 + [sigma_s^2 if i busy]),
//   i ~ posterior_busy, x ~ CN(0, e_d).
// The output density f(y) is evaluated by Gauss-Hermite over the input.
struct MiReference {
  double bits;
  double std_error;
};
MiReference gaussian_mixture_mi(double r_hat_mag, double err_var, double e_d,
                                double posterior_busy, const NoiseParams& noise,
                                std::uint64_t samples, std::uint64_t seed, int hermite_n = 48);

// Reference summation at extended precision.
long double naive_sum(const std::vector<double>& values);

}  // namespace crsim::oracles

#endif  // CRSIM_TESTS_ORACLES_HPP
