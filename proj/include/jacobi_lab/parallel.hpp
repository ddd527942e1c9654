#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace jacobi {

/// Worker count for the embarrassingly parallel maps (z-grids, r-grids,
/// eigenvalue brackets). Results never depend on it.
struct Execution {
  unsigned jobs = 1;

  static Execution hardware() {
    return {std::max(1u, std::thread::hardware_concurrency())};
  }
};

/// Calls fn(i) for i in [0, count), splitting the range into contiguous
/// chunks. fn must only write to slot i of preallocated outputs. The first
/// exception thrown by any worker is rethrown on the caller's thread.
template <class Fn>
void parallel_for(std::size_t count, Execution exec, Fn&& fn) {
  const std::size_t workers = std::min<std::size_t>(std::max(1u, exec.jobs), count);
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::exception_ptr failure;
  std::mutex failure_mutex;
  {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
      const std::size_t lo = count * w / workers;
      const std::size_t hi = count * (w + 1) / workers;
      pool.emplace_back([&, lo, hi] {
        try {
          for (std::size_t i = lo; i < hi; ++i) fn(i);
        } catch (...) {
          std::lock_guard lock(failure_mutex);
          if (!failure) failure = std::current_exception();
        }
      });
    }
  }
  if (failure) std::rethrow_exception(failure);
}

}  // namespace jacobi
