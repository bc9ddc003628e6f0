// SPDX-License-Identifier: Apache-2.0
// Copyright (C) 2026 the crsim authors

// AVX2+FMA variants of the math kernels. Each function mirrors the scalar
// core in detail/kernel_math.hpp step for step; the remainder loop reuses the
// scalar core, so scalar and AVX2 outputs are bit-identical.

#if defined(__x86_64__) || defined(_M_X64)

#include <immintrin.h>

#include "crsim/detail/kernel_math.hpp"

namespace crsim::kernels::detail {

namespace {

inline __m256d splat(double v) { return _mm256_set1_pd(v); }

inline __m256d exp4(__m256d x) {
  x = _mm256_max_pd(x, splat(-kExpClamp));
  x = _mm256_min_pd(x, splat(kExpClamp));
  const __m256d t = _mm256_fmadd_pd(x, splat(kInvLn2), splat(kRoundShift));
  const __m256d k = _mm256_sub_pd(t, splat(kRoundShift));
  __m256d r = _mm256_fmadd_pd(k, splat(-kLn2Hi), x);
  r = _mm256_fmadd_pd(k, splat(-kLn2Lo), r);
  __m256d p = splat(kExpCoeff[13]);
  for (int i = 12; i >= 0; --i) p = _mm256_fmadd_pd(p, r, splat(kExpCoeff[i]));
  // 2^k via exponent bits; |k| <= 1022 so no denormals appear.
  const __m128i k32 = _mm256_cvtpd_epi32(k);
  const __m256i k64 = _mm256_cvtepi32_epi64(k32);
  const __m256i bits = _mm256_slli_epi64(_mm256_add_epi64(k64, _mm256_set1_epi64x(1023)), 52);
  return _mm256_mul_pd(p, _mm256_castsi256_pd(bits));
}

inline __m256d log1p4(__m256d x) {
  const __m256d one = splat(1.0);
  const __m256d u = _mm256_add_pd(one, x);
  const __m256d big = _mm256_cmp_pd(x, one, _CMP_GE_OQ);
  const __m256d c_lo = _mm256_sub_pd(x, _mm256_sub_pd(u, one));
  const __m256d c_hi = _mm256_sub_pd(one, _mm256_sub_pd(u, x));
  const __m256d c = _mm256_blendv_pd(c_lo, c_hi, big);
  const __m256d cu = _mm256_div_pd(c, u);
  const __m256i ub = _mm256_castpd_si256(u);
  __m256i ebiased = _mm256_srli_epi64(ub, 52);
  __m256d m = _mm256_castsi256_pd(
      _mm256_or_si256(_mm256_and_si256(ub, _mm256_set1_epi64x(0x000FFFFFFFFFFFFFll)),
                      _mm256_set1_epi64x(0x3FF0000000000000ll)));
  const __m256d above = _mm256_cmp_pd(m, splat(kSqrt2), _CMP_GT_OQ);
  m = _mm256_blendv_pd(m, _mm256_mul_pd(m, splat(0.5)), above);
  ebiased = _mm256_sub_epi64(ebiased, _mm256_castpd_si256(above));  // mask is -1: adds 1
  // Non-negative int64 -> double via the 2^52 mantissa trick, then unbias.
  const __m256i magic = _mm256_set1_epi64x(0x4330000000000000ll);  // 2^52
  const __m256d ed = _mm256_sub_pd(
      _mm256_sub_pd(_mm256_castsi256_pd(_mm256_add_epi64(ebiased, magic)),
                    _mm256_castsi256_pd(magic)),
      splat(1023.0));
  const __m256d s = _mm256_div_pd(_mm256_sub_pd(m, one), _mm256_add_pd(m, one));
  const __m256d z = _mm256_mul_pd(s, s);
  __m256d poly = splat(kLogCoeff[10]);
  for (int i = 9; i >= 0; --i) poly = _mm256_fmadd_pd(poly, z, splat(kLogCoeff[i]));
  const __m256d s2 = _mm256_add_pd(s, s);
  const __m256d t1 = _mm256_mul_pd(_mm256_mul_pd(s2, z), poly);
  __m256d low = _mm256_add_pd(t1, cu);
  low = _mm256_fmadd_pd(ed, splat(kLn2Lo), low);
  return _mm256_fmadd_pd(ed, splat(kLn2Hi), _mm256_add_pd(s2, low));
}

inline __m256d logsumexp2_4(__m256d a, __m256d b) {
  const __m256d hi = _mm256_max_pd(a, b);
  const __m256d lo = _mm256_min_pd(a, b);
  return _mm256_add_pd(hi, log1p4(exp4(_mm256_sub_pd(lo, hi))));
}

}  // namespace

void vexp_avx2(const double* x, double* out, usize n) {
  usize i = 0;
  for (; i + 4 <= n; i += 4) _mm256_storeu_pd(out + i, exp4(_mm256_loadu_pd(x + i)));
  for (; i < n; ++i) out[i] = exp_core(x[i]);
}

void vlog1p_avx2(const double* x, double* out, usize n) {
  usize i = 0;
  for (; i + 4 <= n; i += 4) _mm256_storeu_pd(out + i, log1p4(_mm256_loadu_pd(x + i)));
  for (; i < n; ++i) out[i] = log1p_core(x[i]);
}

void vlog2_1p_avx2(const double* x, double* out, usize n) {
  usize i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d r = _mm256_mul_pd(log1p4(_mm256_loadu_pd(x + i)), splat(kInvLn2));
    _mm256_storeu_pd(out + i, r);
  }
  for (; i < n; ++i) out[i] = log2_1p_core(x[i]);
}

void bpsk_bits_avx2(const double* ds, const double* doth, double* out, usize n,
                    const BpskMixture& m) {
  const __m256d c0 = splat(m.log_c0);
  const __m256d c1 = splat(m.log_c1);
  const __m256d i0 = splat(-m.inv_s0);
  const __m256d i1 = splat(-m.inv_s1);
  const __m256d zero = _mm256_setzero_pd();
  usize i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d dsv = _mm256_loadu_pd(ds + i);
    const __m256d dov = _mm256_loadu_pd(doth + i);
    const __m256d ts = logsumexp2_4(_mm256_fmadd_pd(i0, dsv, c0), _mm256_fmadd_pd(i1, dsv, c1));
    const __m256d to = logsumexp2_4(_mm256_fmadd_pd(i0, dov, c0), _mm256_fmadd_pd(i1, dov, c1));
    const __m256d delta = _mm256_sub_pd(to, ts);
    const __m256d hi = _mm256_max_pd(delta, zero);
    const __m256d neg = _mm256_min_pd(delta, zero);
    // softplus(delta) = max(delta,0) + log1p(exp(-|delta|))
    const __m256d sp = _mm256_add_pd(hi, log1p4(exp4(_mm256_sub_pd(neg, hi))));
    _mm256_storeu_pd(out + i, _mm256_fnmadd_pd(sp, splat(kInvLn2), splat(1.0)));
  }
  for (; i < n; ++i) out[i] = bpsk_bits_core(ds[i], doth[i], m);
}

void abs2_diff_avx2(const double* a, const double* b, double* out, usize n) {
  usize i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d av = _mm256_loadu_pd(a + 2 * i);
    const __m256d bv = _mm256_loadu_pd(b + 2 * i);
    const __m256d d = _mm256_sub_pd(av, bv);
    const __m256d sq = _mm256_mul_pd(d, d);
    const __m256d sw = _mm256_permute_pd(sq, 0b0101);
    const __m256d sum = _mm256_add_pd(sq, sw);  // [s0,s0,s1,s1]
    out[i] = _mm256_cvtsd_f64(sum);
    out[i + 1] = _mm_cvtsd_f64(_mm256_extractf128_pd(sum, 1));
  }
  for (; i < n; ++i) {
    const double re = a[2 * i] - b[2 * i];
    const double im = a[2 * i + 1] - b[2 * i + 1];
    out[i] = re * re + im * im;
  }
}

}  // namespace crsim::kernels::detail

#endif  // x86_64
