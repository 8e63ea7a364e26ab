#pragma once

#include <cstddef>
#include <thread>
#include <vector>

namespace pathweave {

// Static block partition over [0, n). Each index is processed exactly once
// and writers must target disjoint, preallocated slots; results are then
// independent of the thread count, which the reproducibility contract needs.
template <class F>
void parallel_for(std::size_t n, int threads, F&& body) {
  if (threads <= 1 || n <= 1) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  const std::size_t workers = std::min<std::size_t>(static_cast<std::size_t>(threads), n);
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    const std::size_t lo = n * w / workers;
    const std::size_t hi = n * (w + 1) / workers;
    pool.emplace_back([lo, hi, &body] {
      for (std::size_t i = lo; i < hi; ++i) body(i);
    });
  }
  for (auto& t : pool) t.join();
}

int effective_thread_count(int requested);

}  // namespace pathweave
