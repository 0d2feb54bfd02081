#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <thread>
#include <vector>

namespace netrepo {

inline unsigned default_workers() {
  unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

// Runs body(i) for every i in [0, count) using `workers` threads pulling
// fixed-size chunks from a shared counter. body must only write state owned
// by index i (or use atomics) so the result is independent of scheduling.
template <typename Body>
void parallel_for(std::size_t count, unsigned workers, Body&& body, std::size_t chunk = 256) {
  if (workers <= 1 || count <= chunk) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  auto run = [&] {
    for (;;) {
      std::size_t begin = next.fetch_add(chunk, std::memory_order_relaxed);
      if (begin >= count) return;
      std::size_t end = std::min(count, begin + chunk);
      for (std::size_t i = begin; i < end; ++i) body(i);
    }
  };
  unsigned spawn = static_cast<unsigned>(std::min<std::size_t>(workers, (count + chunk - 1) / chunk));
  std::vector<std::jthread> pool;
  pool.reserve(spawn - 1);
  for (unsigned t = 1; t < spawn; ++t) pool.emplace_back(run);
  run();
}

}  // namespace netrepo
