#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace sentalpha {

// Process-wide cap on worker threads (the CLI's --threads). 0 means hardware concurrency.
void set_max_threads(unsigned n) noexcept;
[[nodiscard]] unsigned max_threads() noexcept;

namespace detail {
// True on pool workers; nested parallel_for calls then run inline.
inline bool& in_worker() noexcept {
  thread_local bool flag = false;
  return flag;
}
}  // namespace detail

// Runs body(i) for i in [0, n). Each index must write only its own output
// slot, which keeps results independent of the thread count. The first
// exception thrown by any body is rethrown after all workers join.
template <class Body>
void parallel_for(std::size_t n, Body&& body) {
  const std::size_t workers = std::min<std::size_t>(max_threads(), n);
  if (workers <= 1 || detail::in_worker()) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        detail::in_worker() = true;
        for (std::size_t i = next++; i < n; i = next++) {
          try {
            body(i);
          } catch (...) {
            std::lock_guard lock(error_mutex);
            if (!error) error = std::current_exception();
            next = n;
          }
        }
      });
    }
  }
  if (error) std::rethrow_exception(error);
}

}  // namespace sentalpha
