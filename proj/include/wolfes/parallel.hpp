#pragma once

// Slab parallelism with results independent of the thread count: work is cut
// into fixed-size chunks, and reductions sum per-chunk partials in chunk order.

#include <algorithm>
#include <cstddef>
#include <cstdlib>
#include <span>
#include <string>
#include <thread>
#include <vector>

namespace wolfes {

/// WOLFES_THREADS caps internal parallelism; 0 or unset means hardware concurrency.
inline std::size_t thread_count() {
  std::size_t n = 0;
  if (const char* env = std::getenv("WOLFES_THREADS")) {
    try {
      n = static_cast<std::size_t>(std::stoul(env));
    } catch (...) {
      n = 0;
    }
  }
  if (n == 0) n = std::max(1u, std::thread::hardware_concurrency());
  return n;
}

inline constexpr std::size_t kChunk = 8192;

/// Calls fn(chunk_begin, chunk_end) over [0, size) in fixed chunks.
template <typename Fn>
void parallel_chunks(std::size_t size, Fn&& fn) {
  const std::size_t chunks = (size + kChunk - 1) / kChunk;
  const std::size_t workers = std::min(thread_count(), chunks);
  auto run = [&](std::size_t w) {
    for (std::size_t c = w; c < chunks; c += workers) {
      fn(c * kChunk, std::min(size, (c + 1) * kChunk));
    }
  };
  if (workers <= 1) {
    run(0);
    return;
  }
  std::vector<std::jthread> pool;
  pool.reserve(workers - 1);
  for (std::size_t w = 1; w < workers; ++w) pool.emplace_back(run, w);
  run(0);
}

inline double dot(std::span<const double> a, std::span<const double> b) {
  const std::size_t chunks = (a.size() + kChunk - 1) / kChunk;
  std::vector<double> partial(chunks, 0.0);
  parallel_chunks(a.size(), [&](std::size_t lo, std::size_t hi) {
    double s = 0.0;
    for (std::size_t i = lo; i < hi; ++i) s += a[i] * b[i];
    partial[lo / kChunk] = s;
  });
  double s = 0.0;
  for (double p : partial) s += p;
  return s;
}

/// y += alpha x
inline void axpy(double alpha, std::span<const double> x, std::span<double> y) {
  parallel_chunks(x.size(), [&](std::size_t lo, std::size_t hi) {
    for (std::size_t i = lo; i < hi; ++i) y[i] += alpha * x[i];
  });
}

inline void scale(double alpha, std::span<double> x) {
  parallel_chunks(x.size(), [&](std::size_t lo, std::size_t hi) {
    for (std::size_t i = lo; i < hi; ++i) x[i] *= alpha;
  });
}

}  // namespace wolfes
