#pragma once

// Static-partition parallel loop. Each index is processed exactly once and
// writes only its own output slot, so results do not depend on the worker
// count.

#include <algorithm>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace s4g {

/// Hardware concurrency, or S4GAUSS_THREADS (1..256) when set. The value
/// may exceed the core count so thread-count independence can be tested
/// on any machine.
unsigned worker_count();

template <class Fn>
void parallel_for(std::size_t n, Fn&& fn) {
  const std::size_t workers = std::min<std::size_t>(worker_count(), n / 256 + 1);
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::vector<std::exception_ptr> errors(workers);
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      const std::size_t begin = n * w / workers;
      const std::size_t end = n * (w + 1) / workers;
      try {
        for (std::size_t i = begin; i < end; ++i) fn(i);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  // The lowest-index chunk wins so the reported error is thread-count independent.
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

}  // namespace s4g
