// SPDX-License-Identifier: Apache-2.0
// Copyright (C) 2026 the crsim authors

#ifndef CRSIM_PARALLEL_HPP
#define CRSIM_PARALLEL_HPP

#include <cstddef>
#include <functional>

namespace crsim {

// Worker count resolution order: explicit argument > CRSIM_WORKERS env > hardware.
int default_worker_count();

// Splits [0, n) into fixed-size chunks and runs fn(chunk_index, begin, end)
// across a worker pool. Chunk boundaries depend only on (n, chunk_size), so
// callers that write per-chunk results into slot chunk_index get output that
// is independent of the worker count and of scheduling order.
void parallel_for_chunks(std::size_t n, std::size_t chunk_size, int workers,
                         const std::function<void(std::size_t, std::size_t, std::size_t)>& fn);

inline std::size_t chunk_count(std::size_t n, std::size_t chunk_size) {
  return (n + chunk_size - 1) / chunk_size;
}

}  // namespace crsim

#endif  // CRSIM_PARALLEL_HPP
