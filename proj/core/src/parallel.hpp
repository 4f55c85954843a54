#pragma once

// Internal work distribution. Tasks must be pure functions of their index;
// results land in pre-sized slots so outcomes are schedule-independent.

#include <atomic>
#include <cstdlib>
#include <thread>
#include <vector>

namespace tenuniq::detail {

/// Worker count: hardware concurrency, capped by the TENUNIQ_THREADS env var.
inline int thread_count() {
  const unsigned hw = std::thread::hardware_concurrency();
  int n = hw == 0 ? 1 : static_cast<int>(hw);
  if (const char* env = std::getenv("TENUNIQ_THREADS")) {
    const int cap = std::atoi(env);
    if (cap >= 1) n = std::min(n, cap);
  }
  return n;
}

template <typename F>
void parallel_for(int n, F&& f) {
  const int workers = std::min(thread_count(), n);
  if (workers <= 1) {
    for (int i = 0; i < n; ++i) f(i);
    return;
  }
  std::atomic<int> next{0};
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(workers));
  for (int t = 0; t < workers; ++t) {
    pool.emplace_back([&] {
      for (int i = next.fetch_add(1); i < n; i = next.fetch_add(1)) f(i);
    });
  }
  for (auto& th : pool) th.join();
}

}  // namespace tenuniq::detail
