#pragma once

#include <atomic>
#include <functional>
#include <thread>
#include <vector>

namespace hypersw {

inline int resolve_threads(int requested) {
  if (requested > 0) return requested;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

inline int num_blocks(int n, int block_size) {
  return (n + block_size - 1) / block_size;
}

// Runs fn(block_index, begin, end) over [0, n) split into fixed-size blocks.
// Block boundaries depend only on n and block_size, so any reduction keyed by
// block index gives the same result for every thread count.
inline void parallel_blocks(int n, int block_size, int threads,
                            const std::function<void(int, int, int)>& fn) {
  const int blocks = num_blocks(n, block_size);
  auto run_block = [&](int b) {
    const int begin = b * block_size;
    const int end = std::min(n, begin + block_size);
    fn(b, begin, end);
  };
  threads = std::min(resolve_threads(threads), blocks);
  if (threads <= 1 || blocks <= 1) {
    for (int b = 0; b < blocks; ++b) run_block(b);
    return;
  }
  std::atomic<int> next{0};
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (int t = 0; t < threads; ++t) {
    pool.emplace_back([&] {
      for (int b = next.fetch_add(1); b < blocks; b = next.fetch_add(1)) {
        run_block(b);
      }
    });
  }
  for (auto& th : pool) th.join();
}

}  // namespace hypersw
