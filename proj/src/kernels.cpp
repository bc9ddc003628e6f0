// SPDX-License-Identifier: Apache-2.0
// Copyright (C) 2026 the crsim authors

#include "crsim/kernels.hpp"

#include <atomic>
#include <stdexcept>

namespace crsim::kernels {

namespace detail {

#if defined(__x86_64__) || defined(_M_X64)
#define CRSIM_HAVE_AVX2_TU 1
void vexp_avx2(const double* x, double* out, usize n);
void vlog1p_avx2(const double* x, double* out, usize n);
void vlog2_1p_avx2(const double* x, double* out, usize n);
void bpsk_bits_avx2(const double* ds, const double* doth, double* out, usize n,
                    const BpskMixture& m);
void abs2_diff_avx2(const double* a, const double* b, double* out, usize n);
#endif

#if defined(__aarch64__)
#define CRSIM_HAVE_NEON_TU 1
void vexp_neon(const double* x, double* out, usize n);
void vlog1p_neon(const double* x, double* out, usize n);
void vlog2_1p_neon(const double* x, double* out, usize n);
void bpsk_bits_neon(const double* ds, const double* doth, double* out, usize n,
                    const BpskMixture& m);
void abs2_diff_neon(const double* a, const double* b, double* out, usize n);
#endif

namespace {

void vexp_scalar(const double* x, double* out, usize n) {
  for (usize i = 0; i < n; ++i) out[i] = exp_core(x[i]);
}

void vlog1p_scalar(const double* x, double* out, usize n) {
  for (usize i = 0; i < n; ++i) out[i] = log1p_core(x[i]);
}

void vlog2_1p_scalar(const double* x, double* out, usize n) {
  for (usize i = 0; i < n; ++i) out[i] = log2_1p_core(x[i]);
}

void bpsk_bits_scalar(const double* ds, const double* doth, double* out, usize n,
                      const BpskMixture& m) {
  for (usize i = 0; i < n; ++i) out[i] = bpsk_bits_core(ds[i], doth[i], m);
}

void abs2_diff_scalar(const double* a, const double* b, double* out, usize n) {
  for (usize i = 0; i < n; ++i) {
    const double re = a[2 * i] - b[2 * i];
    const double im = a[2 * i + 1] - b[2 * i + 1];
    out[i] = re * re + im * im;
  }
}

}  // namespace
}  // namespace detail

namespace {

bool avx2_available() {
#if defined(CRSIM_HAVE_AVX2_TU)
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

bool neon_available() {
#if defined(CRSIM_HAVE_NEON_TU)
  return true;
#else
  return false;
#endif
}

Backend detect_backend() {
  if (avx2_available()) return Backend::avx2;
  if (neon_available()) return Backend::neon;
  return Backend::scalar;
}

std::atomic<Backend> g_backend{detect_backend()};

}  // namespace

Backend active_backend() { return g_backend.load(std::memory_order_relaxed); }

void set_backend(Backend b) {
  if (b == Backend::automatic) b = detect_backend();
  if (b == Backend::avx2 && !avx2_available())
    throw std::runtime_error("kernels: AVX2 backend not available on this host");
  if (b == Backend::neon && !neon_available())
    throw std::runtime_error("kernels: NEON backend not available on this host");
  g_backend.store(b, std::memory_order_relaxed);
}

const char* backend_name(Backend b) {
  switch (b) {
    case Backend::automatic: return "auto";
    case Backend::scalar: return "scalar";
    case Backend::avx2: return "avx2";
    case Backend::neon: return "neon";
  }
  return "unknown";
}

void vexp(const double* x, double* out, std::size_t n) {
  switch (active_backend()) {
#if defined(CRSIM_HAVE_AVX2_TU)
    case Backend::avx2: detail::vexp_avx2(x, out, n); return;
#endif
#if defined(CRSIM_HAVE_NEON_TU)
    case Backend::neon: detail::vexp_neon(x, out, n); return;
#endif
    default: detail::vexp_scalar(x, out, n); return;
  }
}

void vlog1p(const double* x, double* out, std::size_t n) {
  switch (active_backend()) {
#if defined(CRSIM_HAVE_AVX2_TU)
    case Backend::avx2: detail::vlog1p_avx2(x, out, n); return;
#endif
#if defined(CRSIM_HAVE_NEON_TU)
    case Backend::neon: detail::vlog1p_neon(x, out, n); return;
#endif
    default: detail::vlog1p_scalar(x, out, n); return;
  }
}

void vlog2_1p(const double* x, double* out, std::size_t n) {
  switch (active_backend()) {
#if defined(CRSIM_HAVE_AVX2_TU)
    case Backend::avx2: detail::vlog2_1p_avx2(x, out, n); return;
#endif
#if defined(CRSIM_HAVE_NEON_TU)
    case Backend::neon: detail::vlog2_1p_neon(x, out, n); return;
#endif
    default: detail::vlog2_1p_scalar(x, out, n); return;
  }
}

void bpsk_bits(const double* d_sent, const double* d_other, double* out, std::size_t n,
               const BpskMixture& m) {
  switch (active_backend()) {
#if defined(CRSIM_HAVE_AVX2_TU)
    case Backend::avx2: detail::bpsk_bits_avx2(d_sent, d_other, out, n, m); return;
#endif
#if defined(CRSIM_HAVE_NEON_TU)
    case Backend::neon: detail::bpsk_bits_neon(d_sent, d_other, out, n, m); return;
#endif
    default: detail::bpsk_bits_scalar(d_sent, d_other, out, n, m); return;
  }
}

void abs2_diff(const std::complex<double>* a, const std::complex<double>* b, double* out,
               std::size_t n) {
  const double* ap = reinterpret_cast<const double*>(a);
  const double* bp = reinterpret_cast<const double*>(b);
  switch (active_backend()) {
#if defined(CRSIM_HAVE_AVX2_TU)
    case Backend::avx2: detail::abs2_diff_avx2(ap, bp, out, n); return;
#endif
#if defined(CRSIM_HAVE_NEON_TU)
    case Backend::neon: detail::abs2_diff_neon(ap, bp, out, n); return;
#endif
    default: detail::abs2_diff_scalar(ap, bp, out, n); return;
  }
}

double pairwise_sum(std::span<const double> x) {
  const std::size_t n = x.size();
  if (n <= 16) {
    double s = 0.0;
    for (double v : x) s += v;
    return s;
  }
  const std::size_t half = n / 2;
  return pairwise_sum(x.first(half)) + pairwise_sum(x.subspan(half));
}

}  // namespace crsim::kernels
