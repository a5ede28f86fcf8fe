#pragma once

#include <atomic>
#include <cstddef>
#include <exception>
#include <functional>
#include <thread>
#include <vector>

#include "phiid/random.hpp"

namespace phiid {

unsigned default_threads();

/// Runs fn(chunk_index) for every chunk on up to `threads` workers.
/// The chunk decomposition is part of the experiment definition; the
/// thread count only schedules it, so results are thread-count-invariant.
template <typename Fn>
void for_each_chunk(std::size_t n_chunks, unsigned threads, Fn&& fn) {
  if (n_chunks == 0) return;
  unsigned workers = threads == 0 ? default_threads() : threads;
  if (workers > n_chunks) workers = static_cast<unsigned>(n_chunks);
  if (workers <= 1) {
    for (std::size_t i = 0; i < n_chunks; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  std::exception_ptr error;
  std::atomic<bool> failed{false};
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (;;) {
        const std::size_t i = next.fetch_add(1);
        if (i >= n_chunks || failed.load()) return;
        try {
          fn(i);
        } catch (...) {
          if (!failed.exchange(true)) error = std::current_exception();
          return;
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

inline constexpr std::size_t kSampleChunk = 16384;

/// Draws `n` variates with draw(rng) into a vector. Chunk c uses stream
/// make_stream(seed, c); the plan depends only on n, so a run is
/// bit-reproducible for any thread count.
template <typename Draw>
std::vector<double> sample_many(std::size_t n, std::uint64_t seed,
                                unsigned threads, Draw&& draw) {
  std::vector<double> out(n);
  const std::size_t n_chunks = (n + kSampleChunk - 1) / kSampleChunk;
  for_each_chunk(n_chunks, threads, [&](std::size_t c) {
    Rng rng = make_stream(seed, c);
    const std::size_t lo = c * kSampleChunk;
    const std::size_t hi = std::min(n, lo + kSampleChunk);
    for (std::size_t i = lo; i < hi; ++i) out[i] = draw(rng);
  });
  return out;
}

}  // namespace phiid
