#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <random>
#include <thread>
#include <vector>

#include "qcskew/geometry.hpp"

namespace qcskew {

/// Deterministic sampling configuration shared by every estimator. Two runs
/// with equal plans produce bit-identical results regardless of `threads`.
struct SamplingPlan {
  std::uint64_t seed = 1;
  std::size_t triangle_count = 10000;
  std::size_t orientation_count = 64;
  /// Strictly decreasing positive scales (radii).
  std::vector<double> scale_ladder = {0.5, 0.25, 0.125, 0.0625, 0.03125, 0.015625};
  std::size_t circle_samples = 4096;
  /// Worker cap; 0 picks the hardware concurrency. Does not affect results.
  std::size_t threads = 0;

  /// Throws DomainViolation on empty counts or a ladder that is not strictly
  /// decreasing and positive.
  void validate() const;
};

/// Worker count to use for a request of `requested` (0 = automatic).
std::size_t resolve_threads(std::size_t requested);

/// Samples are processed in fixed-size chunks. Chunk boundaries, and the
/// random stream of each chunk, depend only on the sample index, which makes
/// every reduction independent of the worker count.
inline constexpr std::size_t kChunkSize = 1024;

/// Generator for one chunk of one named stream.
std::mt19937_64 chunk_rng(std::uint64_t seed, std::uint64_t stream, std::uint64_t chunk);

/// Runs fn(chunk_index, begin, end) over all chunks of [0, count) and returns
/// the per-chunk results in chunk order. An exception from any chunk is
/// rethrown after all workers stop (the one from the lowest chunk wins).
template <class Result, class ChunkFn>
std::vector<Result> run_chunks(std::size_t count, std::size_t threads, ChunkFn&& fn) {
  const std::size_t chunks = (count + kChunkSize - 1) / kChunkSize;
  std::vector<Result> results(chunks);
  std::vector<std::exception_ptr> errors(chunks);
  const auto work = [&](std::size_t c) {
    const std::size_t begin = c * kChunkSize;
    const std::size_t end = std::min(count, begin + kChunkSize);
    try {
      results[c] = fn(c, begin, end);
    } catch (...) {
      errors[c] = std::current_exception();
    }
  };
  const std::size_t workers = std::min(resolve_threads(threads), chunks);
  if (workers <= 1) {
    for (std::size_t c = 0; c < chunks; ++c) work(c);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t c = next++; c < chunks; c = next++) work(c);
      });
    }
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return results;
}

/// Base-2 radical inverse of i. Prefixes of the sequence are nested and
/// evenly spread in [0, 1).
double van_der_corput(std::uint64_t i);

/// Additive-recurrence (R2) low-discrepancy point in the unit square,
/// shifted by `offset` modulo 1.
std::pair<double, double> r2_point(std::uint64_t i, std::pair<double, double> offset);

/// Area-uniform map of the unit square onto the disk D(center, radius).
Point2 square_to_disk(std::pair<double, double> uv, Point2 center, double radius);

/// Seeded offset of the low-discrepancy sequence for a stream.
std::pair<double, double> seeded_offset(std::uint64_t seed, std::uint64_t stream);

}  // namespace qcskew
