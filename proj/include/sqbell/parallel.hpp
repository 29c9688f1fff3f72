// Minimal fork-join helper. Work items are independent; callers write results
// into preallocated slots so assembly order never depends on scheduling.

#pragma once

#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace sqbell {

/// Thread count from SQBELL_THREADS if set and positive, otherwise the
/// hardware concurrency (at least 1).
int default_threads();

/// Runs f(i) for i in [0, n) on up to `threads` workers (0 selects
/// default_threads()). The first exception thrown by any item is rethrown
/// after all workers have joined.
template <class F>
void parallel_for(std::size_t n, int threads, F&& f) {
  if (threads <= 0) threads = default_threads();
  const std::size_t workers = std::min<std::size_t>(static_cast<std::size_t>(threads), n);
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) f(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto run = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      try {
        f(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!error) error = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(workers - 1);
  for (std::size_t t = 1; t < workers; ++t) pool.emplace_back(run);
  run();
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace sqbell
