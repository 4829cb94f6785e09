#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

#include "bubblescope/vec.hpp"

namespace bubblescope {

/// Number of worker threads; 0 means hardware concurrency.
struct ParallelOptions {
  int threads = 1;
};

[[nodiscard]] inline int resolve_threads(int requested) noexcept {
  if (requested > 0) return requested;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

/// Calls body(i) for i in [0, n). Indices are dealt out in contiguous blocks;
/// the first exception thrown by any worker is rethrown on the caller.
template <class Body>
void parallel_for(std::size_t n, int threads, Body&& body) {
  const std::size_t workers =
      std::min<std::size_t>(static_cast<std::size_t>(resolve_threads(threads)), n);
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      const std::size_t lo = n * w / workers;
      const std::size_t hi = n * (w + 1) / workers;
      try {
        for (std::size_t i = lo; i < hi; ++i) body(i);
      } catch (...) {
        const std::lock_guard<std::mutex> lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

/// Sum of term(i) over [0, n). Each term is computed independently and the
/// terms are reduced with a fixed pairwise tree, so the value is bitwise
/// identical for every thread count.
template <class Term>
[[nodiscard]] double parallel_sum(std::size_t n, int threads, Term&& term) {
  std::vector<double> parts(n);
  parallel_for(n, threads, [&](std::size_t i) { parts[i] = term(i); });
  return pairwise_sum(parts);
}

}  // namespace bubblescope
