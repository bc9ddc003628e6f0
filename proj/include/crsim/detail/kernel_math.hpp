// SPDX-License-Identifier: Apache-2.0
// Copyright (C) 2026 the crsim authors

#ifndef CRSIM_DETAIL_KERNEL_MATH_HPP
#define CRSIM_DETAIL_KERNEL_MATH_HPP

// Shared scalar cores and constants for the vector math kernels. Every SIMD
// variant mirrors these algorithms operation-for-operation so that the scalar
// and vector backends produce bit-identical results (all paths use fused
// multiply-add and the same rounding tricks).
//
// This header is freestanding: it must stay compilable with no libc/libstdc++
// headers so the NEON translation unit can be cross syntax-checked.

namespace crsim::kernels::detail {

using usize = decltype(sizeof(0));
using i64 = long long;
using u64 = unsigned long long;

inline constexpr double kInvLn2 = 1.44269504088896340736;
inline constexpr double kLn2Hi = 6.93147180369123816490e-01;
inline constexpr double kLn2Lo = 1.90821492927058770002e-10;
inline constexpr double kLn2 = 0.69314718055994530942;
// 1.5 * 2^52; adding it rounds the low word to the nearest integer (ties even).
inline constexpr double kRoundShift = 6755399441055744.0;
// exp arguments are clamped to +-708 (comfortably inside the normal range,
// so the 2^k scaling below never needs denormal handling).
inline constexpr double kExpClamp = 708.0;
inline constexpr double kSqrt2 = 1.41421356237309504880;
// Stand-in for log(0) in mixture weights; large enough that exp underflows
// to zero after clamping, small enough that differences stay finite.
inline constexpr double kNegInfLog = -1.0e300;

// Taylor coefficients 1/n! for exp on |r| <= ln2/2. Degree 13 keeps the
// truncation error below 1e-17 relative on that interval.
inline constexpr double kExpCoeff[14] = {
    1.0,
    1.0,
    5.00000000000000000000e-01,
    1.66666666666666666667e-01,
    4.16666666666666666667e-02,
    8.33333333333333333333e-03,
    1.38888888888888888889e-03,
    1.98412698412698412698e-04,
    2.48015873015873015873e-05,
    2.75573192239858906526e-06,
    2.75573192239858906526e-07,
    2.50521083854417187751e-08,
    2.08767569878680989792e-09,
    1.60590438368216145994e-10,
};

// atanh-series coefficients 1/(2n+3) for log(m) = 2s*(1 + z*P(z)), z = s^2,
// s = (m-1)/(m+1), m in [sqrt2/2, sqrt2]. Eleven terms keep the truncation
// below 1e-17 relative.
inline constexpr double kLogCoeff[11] = {
    1.0 / 3.0,  1.0 / 5.0,  1.0 / 7.0,  1.0 / 9.0,  1.0 / 11.0, 1.0 / 13.0,
    1.0 / 15.0, 1.0 / 17.0, 1.0 / 19.0, 1.0 / 21.0, 1.0 / 23.0,
};

// Two-component complex-Gaussian mixture in log domain, precomputed as
// log_c[i] = log(w_i) - log(sigma_i^2) and inv_s[i] = 1/sigma_i^2. A zero
// weight is encoded as log_c = kNegInfLog.
struct BpskMixture {
  double log_c0;
  double log_c1;
  double inv_s0;
  double inv_s1;
};

inline double fmadd(double a, double b, double c) { return __builtin_fma(a, b, c); }

inline double bits_to_double(u64 b) { return __builtin_bit_cast(double, b); }
inline u64 double_to_bits(double d) { return __builtin_bit_cast(u64, d); }

// exp(x) for x in [-kExpClamp, kExpClamp]; out-of-range inputs are clamped.
inline double exp_core(double x) {
  x = x < -kExpClamp ? -kExpClamp : x;
  x = x > kExpClamp ? kExpClamp : x;
  const double t = fmadd(x, kInvLn2, kRoundShift);
  const double k = t - kRoundShift;
  double r = fmadd(k, -kLn2Hi, x);
  r = fmadd(k, -kLn2Lo, r);
  double p = kExpCoeff[13];
  for (int i = 12; i >= 0; --i) p = fmadd(p, r, kExpCoeff[i]);
  const i64 ki = static_cast<i64>(k);
  const double scale = bits_to_double(static_cast<u64>(ki + 1023) << 52);
  return p * scale;
}

// log(1+x) for x > -0.5 (all call sites use x >= 0).
inline double log1p_core(double x) {
  const double u = 1.0 + x;
  // Rounding correction for the 1+x sum, folded back in as c/u.
  const double c = x >= 1.0 ? 1.0 - (u - x) : x - (u - 1.0);
  const double cu = c / u;
  const u64 ub = double_to_bits(u);
  // Biased exponent stays non-negative, which keeps the SIMD int-to-double
  // conversion trick exact.
  i64 ebiased = static_cast<i64>(ub >> 52);
  double m = bits_to_double((ub & 0x000FFFFFFFFFFFFFull) | 0x3FF0000000000000ull);
  if (m > kSqrt2) {
    m *= 0.5;
    ebiased += 1;
  }
  const double ed = static_cast<double>(ebiased) - 1023.0;
  const double s = (m - 1.0) / (m + 1.0);
  const double z = s * s;
  double poly = kLogCoeff[10];
  for (int i = 9; i >= 0; --i) poly = fmadd(poly, z, kLogCoeff[i]);
  const double s2 = s + s;
  const double t1 = s2 * z * poly;
  double low = t1 + cu;
  low = fmadd(ed, kLn2Lo, low);
  return fmadd(ed, kLn2Hi, s2 + low);
}

inline double log2_1p_core(double x) { return log1p_core(x) * kInvLn2; }

// log(exp(a) + exp(b)) with either argument possibly kNegInfLog.
inline double logsumexp2_core(double a, double b) {
  const double hi = a > b ? a : b;
  const double d = a > b ? b - a : a - b;
  return hi + log1p_core(exp_core(d));
}

// Per-sample mutual-information contribution, in bits, of one BPSK draw.
// d_sent/d_other are |y - rhat*x|^2 to the transmitted and to the opposite
// symbol; always <= 1 by construction, may be negative for bad draws.
inline double bpsk_bits_core(double d_sent, double d_other, const BpskMixture& m) {
  const double ts = logsumexp2_core(fmadd(-m.inv_s0, d_sent, m.log_c0),
                                    fmadd(-m.inv_s1, d_sent, m.log_c1));
  const double to = logsumexp2_core(fmadd(-m.inv_s0, d_other, m.log_c0),
                                    fmadd(-m.inv_s1, d_other, m.log_c1));
  const double delta = to - ts;
  const double hi = delta > 0.0 ? delta : 0.0;
  const double softplus = hi + log1p_core(exp_core(delta > 0.0 ? -delta : delta));
  return fmadd(-softplus, kInvLn2, 1.0);
}

}  // namespace crsim::kernels::detail

#endif  // CRSIM_DETAIL_KERNEL_MATH_HPP
