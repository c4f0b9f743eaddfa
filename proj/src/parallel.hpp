#pragma once

#include <cstdint>
#include <cstdlib>
#include <functional>
#include <thread>
#include <vector>

namespace hopfforge {

// Worker count: HOPF_FORGE_THREADS caps parallelism, default = hardware.
inline unsigned max_threads() {
  unsigned hw = std::thread::hardware_concurrency();
  if (hw == 0) hw = 1;
  if (const char* env = std::getenv("HOPF_FORGE_THREADS")) {
    long v = std::strtol(env, nullptr, 10);
    if (v >= 1 && v < 1024) return static_cast<unsigned>(v) < hw ? static_cast<unsigned>(v) : hw;
  }
  return hw;
}

// Chunked parallel sweep; fn(chunk_index, begin, end).  Chunk boundaries are
// deterministic, so per-chunk results can be merged in order.
inline void parallel_chunks(uint64_t n,
                            const std::function<void(unsigned, uint64_t, uint64_t)>& fn) {
  unsigned t = max_threads();
  if (n < 1024 || t == 1) {
    fn(0, 0, n);
    return;
  }
  unsigned chunks = t;
  uint64_t per = (n + chunks - 1) / chunks;
  std::vector<std::thread> pool;
  for (unsigned c = 0; c < chunks; ++c) {
    uint64_t b = c * per, e = std::min(n, b + per);
    if (b >= e) break;
    pool.emplace_back([&fn, c, b, e] { fn(c, b, e); });
  }
  for (auto& th : pool) th.join();
}

}  // namespace hopfforge
