#pragma once
// Internal helper: index-sharded worker pool. Callers pre-size a result
// vector and have fn(i) write slot i, so output order never depends on
// scheduling. fn must not throw.

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <thread>
#include <vector>

namespace traceforge::detail {

template <typename Fn>
void parallel_for_indexed(size_t n, int concurrency, Fn&& fn) {
  if (n == 0) return;
  size_t workers = std::min(static_cast<size_t>(std::max(concurrency, 1)), n);
  if (workers <= 1) {
    for (size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<size_t> next{0};
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&]() {
      for (;;) {
        size_t i = next.fetch_add(1, std::memory_order_relaxed);
        if (i >= n) return;
        fn(i);
      }
    });
  }
  for (std::thread& t : pool) t.join();
}

}  // namespace traceforge::detail
