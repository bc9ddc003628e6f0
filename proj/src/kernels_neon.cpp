// SPDX-License-Identifier: Apache-2.0
// Copyright (C) 2026 the crsim authors

// NEON variants of the math kernels (aarch64). Mirrors the scalar cores in
// detail/kernel_math.hpp; remainder elements fall back to the scalar core.

#if defined(__aarch64__)

#include <arm_neon.h>

#include "crsim/detail/kernel_math.hpp"

namespace crsim::kernels::detail {

namespace {

inline float64x2_t splat(double v) { return vdupq_n_f64(v); }

inline float64x2_t exp2lanes(float64x2_t x) {
  x = vmaxq_f64(x, splat(-kExpClamp));
  x = vminq_f64(x, splat(kExpClamp));
  const float64x2_t t = vfmaq_f64(splat(kRoundShift), x, splat(kInvLn2));
  const float64x2_t k = vsubq_f64(t, splat(kRoundShift));
  float64x2_t r = vfmaq_f64(x, k, splat(-kLn2Hi));
  r = vfmaq_f64(r, k, splat(-kLn2Lo));
  float64x2_t p = splat(kExpCoeff[13]);
  for (int i = 12; i >= 0; --i) p = vfmaq_f64(splat(kExpCoeff[i]), p, r);
  const int64x2_t ki = vcvtq_s64_f64(k);  // k is integral; rounding mode moot
  const int64x2_t bits = vshlq_n_s64(vaddq_s64(ki, vdupq_n_s64(1023)), 52);
  return vmulq_f64(p, vreinterpretq_f64_s64(bits));
}

inline float64x2_t log1p2lanes(float64x2_t x) {
  const float64x2_t one = splat(1.0);
  const float64x2_t u = vaddq_f64(one, x);
  const uint64x2_t big = vcgeq_f64(x, one);
  const float64x2_t c_lo = vsubq_f64(x, vsubq_f64(u, one));
  const float64x2_t c_hi = vsubq_f64(one, vsubq_f64(u, x));
  const float64x2_t c = vbslq_f64(big, c_hi, c_lo);
  const float64x2_t cu = vdivq_f64(c, u);
  const uint64x2_t ub = vreinterpretq_u64_f64(u);
  int64x2_t ebiased = vreinterpretq_s64_u64(vshrq_n_u64(ub, 52));
  float64x2_t m = vreinterpretq_f64_u64(
      vorrq_u64(vandq_u64(ub, vdupq_n_u64(0x000FFFFFFFFFFFFFull)),
                vdupq_n_u64(0x3FF0000000000000ull)));
  const uint64x2_t above = vcgtq_f64(m, splat(kSqrt2));
  m = vbslq_f64(above, vmulq_f64(m, splat(0.5)), m);
  ebiased = vsubq_s64(ebiased, vreinterpretq_s64_u64(above));  // mask is -1: adds 1
  const int64x2_t magic = vdupq_n_s64(0x4330000000000000ll);  // 2^52
  const float64x2_t ed = vsubq_f64(
      vsubq_f64(vreinterpretq_f64_s64(vaddq_s64(ebiased, magic)),
                vreinterpretq_f64_s64(magic)),
      splat(1023.0));
  const float64x2_t s = vdivq_f64(vsubq_f64(m, one), vaddq_f64(m, one));
  const float64x2_t z = vmulq_f64(s, s);
  float64x2_t poly = splat(kLogCoeff[10]);
  for (int i = 9; i >= 0; --i) poly = vfmaq_f64(splat(kLogCoeff[i]), poly, z);
  const float64x2_t s2 = vaddq_f64(s, s);
  const float64x2_t t1 = vmulq_f64(vmulq_f64(s2, z), poly);
  float64x2_t low = vaddq_f64(t1, cu);
  low = vfmaq_f64(low, ed, splat(kLn2Lo));
  return vfmaq_f64(vaddq_f64(s2, low), ed, splat(kLn2Hi));
}

inline float64x2_t logsumexp2_2lanes(float64x2_t a, float64x2_t b) {
  const float64x2_t hi = vmaxq_f64(a, b);
  const float64x2_t lo = vminq_f64(a, b);
  return vaddq_f64(hi, log1p2lanes(exp2lanes(vsubq_f64(lo, hi))));
}

}  // namespace

void vexp_neon(const double* x, double* out, usize n) {
  usize i = 0;
  for (; i + 2 <= n; i += 2) vst1q_f64(out + i, exp2lanes(vld1q_f64(x + i)));
  for (; i < n; ++i) out[i] = exp_core(x[i]);
}

void vlog1p_neon(const double* x, double* out, usize n) {
  usize i = 0;
  for (; i + 2 <= n; i += 2) vst1q_f64(out + i, log1p2lanes(vld1q_f64(x + i)));
  for (; i < n; ++i) out[i] = log1p_core(x[i]);
}

void vlog2_1p_neon(const double* x, double* out, usize n) {
  usize i = 0;
  for (; i + 2 <= n; i += 2)
    vst1q_f64(out + i, vmulq_f64(log1p2lanes(vld1q_f64(x + i)), splat(kInvLn2)));
  for (; i < n; ++i) out[i] = log2_1p_core(x[i]);
}

void bpsk_bits_neon(const double* ds, const double* doth, double* out, usize n,
                    const BpskMixture& m) {
  const float64x2_t c0 = splat(m.log_c0);
  const float64x2_t c1 = splat(m.log_c1);
  const float64x2_t i0 = splat(-m.inv_s0);
  const float64x2_t i1 = splat(-m.inv_s1);
  const float64x2_t zero = splat(0.0);
  usize i = 0;
  for (; i + 2 <= n; i += 2) {
    const float64x2_t dsv = vld1q_f64(ds + i);
    const float64x2_t dov = vld1q_f64(doth + i);
    const float64x2_t ts =
        logsumexp2_2lanes(vfmaq_f64(c0, i0, dsv), vfmaq_f64(c1, i1, dsv));
    const float64x2_t to =
        logsumexp2_2lanes(vfmaq_f64(c0, i0, dov), vfmaq_f64(c1, i1, dov));
    const float64x2_t delta = vsubq_f64(to, ts);
    const float64x2_t hi = vmaxq_f64(delta, zero);
    const float64x2_t neg = vminq_f64(delta, zero);
    const float64x2_t sp = vaddq_f64(hi, log1p2lanes(exp2lanes(vsubq_f64(neg, hi))));
    vst1q_f64(out + i, vfmsq_f64(splat(1.0), sp, splat(kInvLn2)));
  }
  for (; i < n; ++i) out[i] = bpsk_bits_core(ds[i], doth[i], m);
}

void abs2_diff_neon(const double* a, const double* b, double* out, usize n) {
  usize i = 0;
  for (; i < n; ++i) {
    const float64x2_t av = vld1q_f64(a + 2 * i);
    const float64x2_t bv = vld1q_f64(b + 2 * i);
    const float64x2_t d = vsubq_f64(av, bv);
    const float64x2_t sq = vmulq_f64(d, d);
    out[i] = vgetq_lane_f64(sq, 0) + vgetq_lane_f64(sq, 1);
  }
}

}  // namespace crsim::kernels::detail

#endif  // __aarch64__
