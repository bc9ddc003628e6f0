// SPDX-License-Identifier: Apache-2.0
// Copyright (C) 2026 the crsim authors

#include <cmath>
#include <complex>
#include <cstring>
#include <vector>

#include <doctest.h>

#include "crsim/kernels.hpp"
#include "crsim/rng.hpp"
#include "support/oracles.hpp"

using namespace crsim;
namespace k = crsim::kernels;

namespace {

// Backends available on this host, always starting with scalar.
std::vector<k::Backend> backends() {
  std::vector<k::Backend> list{k::Backend::scalar};
  const k::Backend detected = k::active_backend();
  if (detected != k::Backend::scalar) list.push_back(detected);
  return list;
}

struct BackendGuard {
  k::Backend saved = k::active_backend();
  ~BackendGuard() { k::set_backend(saved); }
};

}  // namespace

TEST_CASE("vexp matches std::exp over the working range") {
  BackendGuard guard;
  RandomStream rng(2024, 0);
  std::vector<double> x(20000), out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    // Emphasize the negative range the likelihood kernels live in.
    x[i] = i % 2 ? -700.0 * rng.next_double() : 40.0 * (rng.next_double() - 0.75);
  }
  for (k::Backend b : backends()) {
    k::set_backend(b);
    k::vexp(x.data(), out.data(), x.size());
    double worst = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      const double ref = std::exp(x[i]);
      const double rel = std::abs(out[i] - ref) / ref;
      worst = std::max(worst, rel);
    }
    CAPTURE(k::backend_name(b));
    CHECK(worst < 1e-14);
  }
}

TEST_CASE("vlog1p and vlog2_1p match std over nonnegative inputs") {
  BackendGuard guard;
  RandomStream rng(77, 1);
  std::vector<double> x(20000), out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double u = rng.next_double();
    x[i] = i % 3 == 0 ? 1e-14 * u : (i % 3 == 1 ? u : std::exp(20.0 * u));
  }
  for (k::Backend b : backends()) {
    k::set_backend(b);
    k::vlog1p(x.data(), out.data(), x.size());
    double worst = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      const double ref = std::log1p(x[i]);
      const double denom = std::max(std::abs(ref), 1e-30);
      worst = std::max(worst, std::abs(out[i] - ref) / denom);
    }
    CAPTURE(k::backend_name(b));
    CHECK(worst < 1e-14);

    k::vlog2_1p(x.data(), out.data(), x.size());
    worst = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      // log1p-based reference; log2(1.0 + x) itself collapses for tiny x.
      const double ref = std::log1p(x[i]) / std::log(2.0);
      const double denom = std::max(std::abs(ref), 1e-30);
      worst = std::max(worst, std::abs(out[i] - ref) / denom);
    }
    CHECK(worst < 1e-13);
  }
}

TEST_CASE("SIMD backend is bit-identical to the scalar reference") {
  if (k::active_backend() == k::Backend::scalar) return;  // nothing to compare
  BackendGuard guard;
  RandomStream rng(5150, 3);
  const std::size_t n = 4099;  // odd size exercises the remainder loop
  std::vector<double> x(n), ds(n), doth(n), a(n), b(n);
  for (std::size_t i = 0; i < n; ++i) {
    x[i] = -40.0 * rng.next_double();
    ds[i] = 50.0 * rng.next_double();
    doth[i] = 50.0 * rng.next_double();
    a[i] = rng.next_double();
    b[i] = rng.next_double();
  }
  const k::BpskMixture mix{std::log(0.97) - std::log(1.3), std::log(0.03) - std::log(2.3),
                           1.0 / 1.3, 1.0 / 2.3};

  std::vector<double> scalar_out(n), simd_out(n);
  auto compare = [&](auto&& call) {
    k::set_backend(k::Backend::scalar);
    call(scalar_out);
    k::set_backend(k::Backend::automatic);
    call(simd_out);
    CHECK(std::memcmp(scalar_out.data(), simd_out.data(), n * sizeof(double)) == 0);
  };

  compare([&](std::vector<double>& out) { k::vexp(x.data(), out.data(), n); });
  compare([&](std::vector<double>& out) { k::vlog1p(ds.data(), out.data(), n); });
  compare([&](std::vector<double>& out) { k::vlog2_1p(ds.data(), out.data(), n); });
  compare([&](std::vector<double>& out) {
    k::bpsk_bits(ds.data(), doth.data(), out.data(), n, mix);
  });
  std::vector<std::complex<double>> ca(n), cb(n);
  for (std::size_t i = 0; i < n; ++i) {
    ca[i] = {a[i], b[i]};
    cb[i] = {b[i], a[i]};
  }
  compare([&](std::vector<double>& out) { k::abs2_diff(ca.data(), cb.data(), out.data(), n); });
}

TEST_CASE("bpsk_bits agrees with a direct std-math evaluation") {
  BackendGuard guard;
  RandomStream rng(99, 2);
  const double w1 = 0.25, s0 = 1.4, s1 = 3.1;
  const k::BpskMixture mix{std::log(1.0 - w1) - std::log(s0), std::log(w1) - std::log(s1),
                           1.0 / s0, 1.0 / s1};
  auto direct = [&](double dsent, double dother) {
    auto logf = [&](double d) {
      const double t0 = std::log(1.0 - w1) - std::log(s0) - d / s0;
      const double t1 = std::log(w1) - std::log(s1) - d / s1;
      const double hi = std::max(t0, t1);
      return hi + std::log1p(std::exp(std::min(t0, t1) - hi));
    };
    const double delta = logf(dother) - logf(dsent);
    const double softplus = std::max(delta, 0.0) + std::log1p(std::exp(-std::abs(delta)));
    return 1.0 - softplus / std::log(2.0);
  };
  std::vector<double> ds(513), doth(513), out(513);
  for (std::size_t i = 0; i < ds.size(); ++i) {
    ds[i] = 30.0 * rng.next_double();
    doth[i] = 30.0 * rng.next_double();
  }
  for (k::Backend b : backends()) {
    k::set_backend(b);
    k::bpsk_bits(ds.data(), doth.data(), out.data(), ds.size(), mix);
    for (std::size_t i = 0; i < ds.size(); ++i) {
      CHECK(out[i] == doctest::Approx(direct(ds[i], doth[i])).epsilon(1e-12));
      CHECK(out[i] <= 1.0 + 1e-12);
    }
  }
}

TEST_CASE("bpsk_bits handles a degenerate single-component mixture") {
  BackendGuard guard;
  const k::BpskMixture mix{std::log(1.0) - std::log(2.0), k::detail::kNegInfLog, 0.5, 1.0};
  const double ds[4] = {0.1, 5.0, 22.0, 0.0};
  const double doth[4] = {9.0, 0.2, 22.0, 400.0};
  double out[4];
  for (k::Backend b : backends()) {
    k::set_backend(b);
    k::bpsk_bits(ds, doth, out, 4, mix);
    for (int i = 0; i < 4; ++i) {
      const double delta = (-doth[i] + ds[i]) * 0.5;
      const double softplus = std::max(delta, 0.0) + std::log1p(std::exp(-std::abs(delta)));
      CHECK(out[i] == doctest::Approx(1.0 - softplus / std::log(2.0)).epsilon(1e-12));
    }
    CHECK(out[2] == doctest::Approx(0.0).epsilon(1e-12));  // equal distances carry no bit
  }
}

TEST_CASE("pairwise_sum matches extended-precision summation") {
  RandomStream rng(31337, 0);
  std::vector<double> v(100001);
  for (double& x : v) x = rng.next_double() - 0.3;
  const long double ref = oracles::naive_sum(v);
  CHECK(std::abs(k::pairwise_sum(v) - static_cast<double>(ref)) <
        1e-12 * std::abs(static_cast<double>(ref)));
}

TEST_CASE("backend dispatch resolves and can be forced") {
  BackendGuard guard;
  CHECK(k::active_backend() != k::Backend::automatic);
  k::set_backend(k::Backend::scalar);
  CHECK(k::active_backend() == k::Backend::scalar);
  k::set_backend(k::Backend::automatic);
  CHECK(k::active_backend() != k::Backend::automatic);
#if !defined(__aarch64__)
  CHECK_THROWS_AS(k::set_backend(k::Backend::neon), std::runtime_error);
#endif
}
