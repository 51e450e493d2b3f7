#pragma once

#include <algorithm>
#include <cstddef>
#include <functional>
#include <thread>
#include <vector>

namespace gforge {

// Splits [0, n) into at most jobs contiguous chunks and runs
// fn(chunk_index, lo, hi) for each, on its own thread when jobs > 1.
// fn is responsible for its own synchronization on shared state.
inline void parallel_chunks(size_t n, int jobs,
                            const std::function<void(int, size_t, size_t)>& fn) {
  size_t j = jobs < 1 ? 1 : static_cast<size_t>(jobs);
  j = std::min(j, n == 0 ? size_t{1} : n);
  if (j <= 1) {
    fn(0, 0, n);
    return;
  }
  size_t chunk = (n + j - 1) / j;
  std::vector<std::thread> threads;
  for (size_t k = 0; k < j; ++k) {
    size_t lo = k * chunk;
    size_t hi = std::min(n, lo + chunk);
    if (lo >= hi) break;
    threads.emplace_back([&fn, k, lo, hi] { fn(static_cast<int>(k), lo, hi); });
  }
  for (auto& th : threads) th.join();
}

}  // namespace gforge
