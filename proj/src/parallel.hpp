#pragma once

#include <algorithm>
#include <atomic>
#include <thread>
#include <vector>

namespace smalelab::detail {

inline int resolve_threads(int requested, int work_items) {
  const int hw = static_cast<int>(std::thread::hardware_concurrency());
  return std::clamp(requested > 0 ? requested : hw, 1, std::max(work_items, 1));
}

// Runs body(i) for i in [0, count) on a small pool. Workers pull indices from
// a shared counter; body must write only to slot i and must not throw.
template <class Body>
void parallel_for(int count, int threads, Body&& body) {
  std::atomic<int> next{0};
  auto worker = [&] {
    for (int i = next++; i < count; i = next++) body(i);
  };
  std::vector<std::jthread> pool;
  for (int t = 1; t < resolve_threads(threads, count); ++t) pool.emplace_back(worker);
  worker();
}

}  // namespace smalelab::detail
