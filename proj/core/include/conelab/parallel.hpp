#pragma once

#include <atomic>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace conelab {

/// Worker count for independent trials: CONELAB_THREADS if set and positive, otherwise
/// the hardware concurrency (at least 1).
unsigned worker_count();

/// Calls fn(i) for every i in [0, n), spreading indices over worker_count() threads.
/// Callers write results into per-index slots, so the merged output does not depend on
/// scheduling. The exception of the lowest failing index is rethrown.
template <class Fn>
void for_each_trial(std::size_t n, Fn&& fn) {
  const unsigned workers = std::min<std::size_t>(worker_count(), n);
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(n);
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) {
        try {
          fn(i);
        } catch (...) {
          errors[i] = std::current_exception();
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

}  // namespace conelab
