// SPDX-License-Identifier: Apache-2.0
// Copyright (C) 2026 the crsim authors

#ifndef CRSIM_KERNELS_HPP
#define CRSIM_KERNELS_HPP

#include <complex>
#include <cstddef>
#include <span>

#include "crsim/detail/kernel_math.hpp"

// Elementwise math kernels for the Monte Carlo inner loops. A scalar
// reference implementation always exists; on x86-64 an AVX2+FMA variant is
// selected at runtime, on aarch64 a NEON variant is compiled in. All
// backends produce bit-identical outputs (see detail/kernel_math.hpp), which
// the kernel tests assert.
//
// Kernels are maps only: reductions go through pairwise_sum so that results
// do not depend on the active backend or on vector width.

namespace crsim::kernels {

using BpskMixture = detail::BpskMixture;

enum class Backend { automatic, scalar, avx2, neon };

Backend active_backend();
void set_backend(Backend b);  // throws std::runtime_error if unavailable
const char* backend_name(Backend b);

// out[i] = exp(x[i]); inputs clamped to [-708, 708].
void vexp(const double* x, double* out, std::size_t n);

// out[i] = log(1 + x[i]); requires x[i] > -0.5.
void vlog1p(const double* x, double* out, std::size_t n);

// out[i] = log2(1 + x[i]); requires x[i] > -0.5.
void vlog2_1p(const double* x, double* out, std::size_t n);

// out[i] = per-sample BPSK mutual-information contribution in bits.
void bpsk_bits(const double* d_sent, const double* d_other, double* out, std::size_t n,
               const BpskMixture& m);

// out[i] = |a[i] - b[i]|^2.
void abs2_diff(const std::complex<double>* a, const std::complex<double>* b, double* out,
               std::size_t n);

// Deterministic pairwise reduction; independent of backend and worker count.
double pairwise_sum(std::span<const double> x);

}  // namespace crsim::kernels

#endif  // CRSIM_KERNELS_HPP
