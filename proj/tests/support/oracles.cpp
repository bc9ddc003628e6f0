// SPDX-License-Identifier: Apache-2.0
// Copyright (C) 2026 the crsim authors

#include "oracles.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "crsim/rng.hpp"

namespace crsim::oracles {

namespace {

constexpr double kPi = std::numbers::pi;

double gaussian2d(std::complex<double> y, std::complex<double> mean, double sigma2) {
  return std::exp(-std::norm(y - mean) / sigma2) / (kPi * sigma2);
}

}  // namespace

QuadratureRule gauss_legendre(int n) {
  QuadratureRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  const int half = (n + 1) / 2;
  for (int i = 0; i < half; ++i) {
    double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = 0.0;
      for (int k = 0; k < n; ++k) {
        const double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * k + 1.0) * x * p1 - k * p2) / (k + 1.0);
      }
      dp = n * (x * p0 - p1) / (x * x - 1.0);
      const double dx = p0 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    rule.nodes[i] = -x;
    rule.nodes[n - 1 - i] = x;
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.weights[i] = w;
    rule.weights[n - 1 - i] = w;
  }
  return rule;
}

QuadratureRule gauss_hermite(int n) {
  // Orthonormal Hermite recurrence; weights from the Christoffel function.
  QuadratureRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  const double pim4 = std::pow(kPi, -0.25);
  const int half = (n + 1) / 2;
  double x = 0.0;
  for (int i = 0; i < half; ++i) {
    if (i == 0) {
      x = std::sqrt(2.0 * n + 1.0) - 1.85575 * std::pow(2.0 * n + 1.0, -1.0 / 6.0);
    } else if (i == 1) {
      x -= 1.14 * std::pow(n, 0.426) / x;
    } else if (i == 2) {
      x = 1.86 * x - 0.86 * rule.nodes[n - 1];
    } else if (i == 3) {
      x = 1.91 * x - 0.91 * rule.nodes[n - 2];
    } else {
      x = 2.0 * x - rule.nodes[n - i + 1];
    }
    double pn = 0.0, pn1 = 0.0;
    for (int iter = 0; iter < 200; ++iter) {
      double p0 = pim4, p1 = 0.0;
      for (int k = 0; k < n; ++k) {
        const double p2 = p1;
        p1 = p0;
        p0 = x * std::sqrt(2.0 / (k + 1.0)) * p1 - std::sqrt(double(k) / (k + 1.0)) * p2;
      }
      pn = p0;
      pn1 = p1;
      const double dp = std::sqrt(2.0 * n) * pn1;
      const double dx = pn / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    rule.nodes[n - 1 - i] = x;
    rule.nodes[i] = -x;
    // Christoffel: w = 1 / sum_{k<n} p_k(x)^2; for Hermite this reduces to
    // 2 / (dp)^2 with dp = sqrt(2n) p_{n-1}(x).
    const double dp = std::sqrt(2.0 * n) * pn1;
    const double w = 2.0 / (dp * dp);
    rule.weights[n - 1 - i] = w;
    rule.weights[i] = w;
  }
  if (n % 2 == 1) {
    // Central node of odd rules is exactly zero.
    rule.nodes[n / 2] = 0.0;
  }
  return rule;
}

std::vector<double> hermitian_eigenvalues(const ComplexMatrix& a, double tol, int max_sweeps) {
  if (a.rows() != a.cols()) throw std::invalid_argument("hermitian_eigenvalues: not square");
  const std::size_t n = a.rows();
  ComplexMatrix w = a;
  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    double off = 0.0;
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) off += std::norm(w(p, q));
    if (off < tol * tol) break;
    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const std::complex<double> apq = w(p, q);
        const double mag = std::abs(apq);
        if (mag == 0.0) continue;
        const std::complex<double> phase = apq / mag;
        const double app = w(p, p).real();
        const double aqq = w(q, q).real();
        const double theta = 0.5 * std::atan2(2.0 * mag, aqq - app);
        const double c = std::cos(theta);
        const double s = std::sin(theta);
        // Columns: col_p' = c*col_p - s*conj(phase)... apply G^H A G with
        // G(p,p)=c, G(p,q)=s*phase, G(q,p)=-s*conj(phase), G(q,q)=c.
        for (std::size_t r = 0; r < n; ++r) {
          const std::complex<double> vp = w(r, p);
          const std::complex<double> vq = w(r, q);
          w(r, p) = c * vp - s * std::conj(phase) * vq;
          w(r, q) = s * phase * vp + c * vq;
        }
        for (std::size_t cidx = 0; cidx < n; ++cidx) {
          const std::complex<double> vp = w(p, cidx);
          const std::complex<double> vq = w(q, cidx);
          w(p, cidx) = c * vp - s * phase * vq;
          w(q, cidx) = s * std::conj(phase) * vp + c * vq;
        }
      }
    }
  }
  std::vector<double> eig(n);
  for (std::size_t i = 0; i < n; ++i) eig[i] = w(i, i).real();
  return eig;
}

double mixture_density_integral(std::complex<double> x, std::complex<double> r_hat,
                                double err_var, const ProbabilityPair& posterior,
                                const NoiseParams& noise, int n) {
  const double s0 = noise.sigma_n2 + err_var * std::norm(x);
  const double s1 = s0 + noise.sigma_s2;
  const std::complex<double> mean = r_hat * x;
  const double radius = 10.0 * std::sqrt(s1) + std::abs(mean);
  const QuadratureRule rule = gauss_legendre(n);
  double total = 0.0;
  for (int i = 0; i < n; ++i) {
    const double re = radius * rule.nodes[i];
    double inner = 0.0;
    for (int j = 0; j < n; ++j) {
      const double im = radius * rule.nodes[j];
      const std::complex<double> y{re, im};
      const double f = posterior.idle * gaussian2d(y, mean, s0) +
                       posterior.busy * gaussian2d(y, mean, s1);
      inner += rule.weights[j] * f;
    }
    total += rule.weights[i] * inner;
  }
  return total * radius * radius;
}

double bpsk_awgn_mi(double amplitude, std::complex<double> r_hat, double sigma2, int n) {
  const QuadratureRule rule = gauss_hermite(n);
  const std::complex<double> mean = amplitude * r_hat;
  const double scale = std::sqrt(sigma2);
  double total = 0.0;
  for (int u = 0; u < 2; ++u) {
    const std::complex<double> mu = u == 0 ? mean : -mean;
    double integral = 0.0;
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        const std::complex<double> y = mu + scale * std::complex<double>(rule.nodes[i],
                                                                         rule.nodes[j]);
        const double lp = -std::norm(y - mean) / sigma2;
        const double lm = -std::norm(y + mean) / sigma2;
        const double hi = lp > lm ? lp : lm;
        const double lf = hi + std::log(0.5 * std::exp(lp - hi) + 0.5 * std::exp(lm - hi));
        const double lsent = u == 0 ? lp : lm;
        integral += rule.weights[i] * rule.weights[j] * (lsent - lf);
      }
    }
    total += 0.5 * integral / kPi;
  }
  return total / std::log(2.0);
}

MiReference gaussian_mixture_mi(double r_hat_mag, double err_var, double e_d,
                                double posterior_busy, const NoiseParams& noise,
                                std::uint64_t samples, std::uint64_t seed, int hermite_n) {
  const QuadratureRule rule = gauss_hermite(hermite_n);
  const double scale_x = std::sqrt(e_d);  // x = scale_x * (t1 + i t2), t ~ N(0, 1/2) pairs

  auto conditional_density = [&](std::complex<double> y, std::complex<double> x) {
    const double base = err_var * std::norm(x) + noise.sigma_n2;
    const double f0 = gaussian2d(y, r_hat_mag * x, base);
    const double f1 = gaussian2d(y, r_hat_mag * x, base + noise.sigma_s2);
    return (1.0 - posterior_busy) * f0 + posterior_busy * f1;
  };
  // f(y) = (1/pi) int e^{-(t1^2+t2^2)} f(y | scale_x (t1 + i t2)) dt.
  auto output_density = [&](std::complex<double> y) {
    double total = 0.0;
    for (int i = 0; i < hermite_n; ++i) {
      double inner = 0.0;
      for (int j = 0; j < hermite_n; ++j) {
        const std::complex<double> x{scale_x * rule.nodes[i], scale_x * rule.nodes[j]};
        inner += rule.weights[j] * conditional_density(y, x);
      }
      total += rule.weights[i] * inner;
    }
    return total / kPi;
  };

  RandomStream rng(seed, 0);
  double sum = 0.0, sum_sq = 0.0;
  for (std::uint64_t t = 0; t < samples; ++t) {
    const std::complex<double> x = scale_x * std::sqrt(0.5) *
                                   std::complex<double>(rng.next_normal(), rng.next_normal());
    const bool busy = rng.next_double() < posterior_busy;
    const double var = err_var * std::norm(x) + noise.sigma_n2 + (busy ? noise.sigma_s2 : 0.0);
    const std::complex<double> z = std::sqrt(var) * rng.next_cnormal();
    const std::complex<double> y = r_hat_mag * x + z;
    const double ratio = std::log(conditional_density(y, x) / output_density(y)) / std::log(2.0);
    sum += ratio;
    sum_sq += ratio * ratio;
  }
  const double n = static_cast<double>(samples);
  const double mean = sum / n;
  const double var = samples > 1 ? (sum_sq - n * mean * mean) / (n - 1.0) : 0.0;
  return {mean, std::sqrt(var > 0.0 ? var / n : 0.0)};
}

long double naive_sum(const std::vector<double>& values) {
  long double acc = 0.0L;
  for (double v : values) acc += v;
  return acc;
}

}  // namespace crsim::oracles
