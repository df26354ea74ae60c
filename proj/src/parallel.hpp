#ifndef NMKDV_PARALLEL_HPP
#define NMKDV_PARALLEL_HPP

// Index-addressed parallel loop. Results land in caller-owned slots, so output
// order never depends on scheduling. NMKDV_THREADS caps the worker count.

#include <atomic>
#include <cstdlib>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace nmkdv {

inline unsigned worker_count() {
  unsigned n = std::thread::hardware_concurrency();
  if (n == 0) n = 1;
  if (const char* env = std::getenv("NMKDV_THREADS")) {
    long cap = std::strtol(env, nullptr, 10);
    if (cap >= 1 && unsigned(cap) < n) n = unsigned(cap);
  }
  return n;
}

template <typename Fn>
void parallel_for(size_t n, const Fn& body) {
  unsigned workers = worker_count();
  if (workers <= 1 || n < 2) {
    for (size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::atomic<size_t> next{0};
  std::exception_ptr first_error;
  std::mutex err_mutex;
  auto run = [&] {
    for (;;) {
      size_t i = next.fetch_add(1);
      if (i >= n) return;
      try {
        body(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(err_mutex);
        if (!first_error) first_error = std::current_exception();
        next.store(n);
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  unsigned spawn = std::min<size_t>(workers, n) - 1;
  pool.reserve(spawn);
  for (unsigned i = 0; i < spawn; ++i) pool.emplace_back(run);
  run();
  for (auto& t : pool) t.join();
  if (first_error) std::rethrow_exception(first_error);
}

}  // namespace nmkdv

#endif
