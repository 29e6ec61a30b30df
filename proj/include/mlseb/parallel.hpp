#pragma once

#include <cstddef>
#include <thread>
#include <vector>

namespace mlseb {

[[nodiscard]] inline unsigned resolve_threads(unsigned requested) {
  if (requested > 0) return requested;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? hw : 1;
}

/// Run body(begin, end) over a static partition of [0, n). Results must not
/// depend on the partition: callers write to disjoint per-index slots, so
/// the output is identical for any thread count.
template <typename Fn>
void parallel_for(std::size_t n, unsigned threads, Fn&& body) {
  threads = resolve_threads(threads);
  if (n == 0) return;
  if (threads <= 1 || n == 1) {
    body(std::size_t{0}, n);
    return;
  }
  const std::size_t chunk = (n + threads - 1) / threads;
  std::vector<std::thread> pool;
  pool.reserve(threads - 1);
  std::size_t begin = chunk;
  for (unsigned w = 1; w < threads && begin < n; ++w, begin += chunk) {
    const std::size_t end = std::min(begin + chunk, n);
    pool.emplace_back([&body, begin, end] { body(begin, end); });
  }
  body(std::size_t{0}, std::min(chunk, n));
  for (auto& th : pool) th.join();
}

}  // namespace mlseb
