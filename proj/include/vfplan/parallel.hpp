#pragma once

#include <algorithm>
#include <thread>
#include <vector>

namespace vfplan {

// Runs fn(i) for i in [0, n) across up to `threads` workers in disjoint
// blocks.  Callers must write only to per-i slots, which makes the result
// independent of the partitioning — any thread count yields identical
// output.
template <class F>
void parallel_for(int n, int threads, F&& fn) {
  threads = std::max(1, threads);
  if (threads == 1 || n <= 1) {
    for (int i = 0; i < n; ++i) fn(i);
    return;
  }
  const int workers = std::min(threads, n);
  std::vector<std::thread> pool;
  pool.reserve(workers);
  const int chunk = (n + workers - 1) / workers;
  for (int w = 0; w < workers; ++w) {
    const int lo = w * chunk;
    const int hi = std::min(n, lo + chunk);
    if (lo >= hi) break;
    pool.emplace_back([lo, hi, &fn] {
      for (int i = lo; i < hi; ++i) fn(i);
    });
  }
  for (auto& t : pool) t.join();
}

}  // namespace vfplan
