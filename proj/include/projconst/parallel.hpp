#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace projconst {

/// Number of worker threads used by parallel_for; 0 means hardware concurrency.
inline unsigned& worker_threads() {
  static unsigned n = 0;
  return n;
}

inline unsigned effective_threads() {
  const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  return worker_threads() == 0 ? hw : worker_threads();
}

/// Calls fn(i) for i in [0, count) on up to effective_threads() workers. The
/// first exception thrown by any call is rethrown after all workers finish.
template <typename Fn>
void parallel_for(std::size_t count, Fn&& fn) {
  const unsigned threads =
      static_cast<unsigned>(std::min<std::size_t>(effective_threads(), count));
  if (threads <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (unsigned t = 0; t < threads; ++t) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) {
        try {
          fn(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mutex);
          if (!error) error = std::current_exception();
        }
      }
    });
  }
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace projconst
