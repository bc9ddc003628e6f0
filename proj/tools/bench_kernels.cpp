// SPDX-License-Identifier: Apache-2.0
// Copyright (C) 2026 the crsim authors

// Throughput comparison of the scalar reference kernels against the active
// SIMD backend. Usage: bench_kernels [n_elements] [repeats]

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <vector>

#include "crsim/kernels.hpp"
#include "crsim/rng.hpp"

using namespace crsim;
namespace k = crsim::kernels;

namespace {

double run_ns_per_element(std::size_t n, int repeats, const auto& fn) {
  using clock = std::chrono::steady_clock;
  fn();  // warm up
  const auto start = clock::now();
  for (int r = 0; r < repeats; ++r) fn();
  const double seconds = std::chrono::duration<double>(clock::now() - start).count();
  return seconds / repeats / static_cast<double>(n) * 1e9;
}

}  // namespace

int main(int argc, char** argv) {
  const std::size_t n = argc > 1 ? std::strtoull(argv[1], nullptr, 10) : 1 << 16;
  const int repeats = argc > 2 ? std::atoi(argv[2]) : 200;

  RandomStream rng(1, 0);
  std::vector<double> x(n), ds(n), doth(n), out(n);
  for (std::size_t i = 0; i < n; ++i) {
    x[i] = -30.0 * rng.next_double();
    ds[i] = 40.0 * rng.next_double();
    doth[i] = 40.0 * rng.next_double();
  }
  const k::BpskMixture mix{std::log(0.97) - std::log(1.2), std::log(0.03) - std::log(2.2),
                           1.0 / 1.2, 1.0 / 2.2};

  struct Case {
    const char* name;
    std::function<void()> fn;
  };
  const std::vector<Case> cases = {
      {"vexp", [&] { k::vexp(x.data(), out.data(), n); }},
      {"vlog1p", [&] { k::vlog1p(ds.data(), out.data(), n); }},
      {"vlog2_1p", [&] { k::vlog2_1p(ds.data(), out.data(), n); }},
      {"bpsk_bits", [&] { k::bpsk_bits(ds.data(), doth.data(), out.data(), n, mix); }},
  };

  const k::Backend simd = k::active_backend();
  std::printf("n=%zu repeats=%d backend=%s\n", n, repeats, k::backend_name(simd));
  std::printf("%-10s %12s %12s %8s\n", "kernel", "scalar ns/el", "simd ns/el", "speedup");
  for (const Case& c : cases) {
    k::set_backend(k::Backend::scalar);
    const double scalar_ns = run_ns_per_element(n, repeats, c.fn);
    k::set_backend(simd);
    const double simd_ns = run_ns_per_element(n, repeats, c.fn);
    std::printf("%-10s %12.2f %12.2f %7.2fx\n", c.name, scalar_ns, simd_ns,
                scalar_ns / simd_ns);
  }
  return 0;
}
