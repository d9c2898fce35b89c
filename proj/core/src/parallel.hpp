#pragma once

#include <atomic>
#include <exception>
#include <mutex>

namespace inflab::detail {

/// OpenMP loop over [0, n) that rethrows the first exception raised by `body`
/// after the loop ends (an exception escaping a parallel region aborts).
template <class F>
void parallel_for(long n, F&& body) {
  std::exception_ptr error;
  std::atomic<bool> failed{false};
  std::mutex m;
#pragma omp parallel for schedule(dynamic)
  for (long i = 0; i < n; ++i) {
    if (failed.load(std::memory_order_relaxed)) continue;
    try {
      body(i);
    } catch (...) {
      std::lock_guard<std::mutex> lock(m);
      if (!error) error = std::current_exception();
      failed = true;
    }
  }
  if (error) std::rethrow_exception(error);
}

}  // namespace inflab::detail
