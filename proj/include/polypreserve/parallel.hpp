#pragma once

#include <cstdlib>
#include <functional>
#include <string>
#include <thread>
#include <vector>

namespace polypreserve {

inline unsigned thread_budget() {
  if (const char* env = std::getenv("POLYPRESERVE_THREADS")) {
    long v = std::strtol(env, nullptr, 10);
    if (v >= 1) return static_cast<unsigned>(v);
  }
  unsigned hw = std::thread::hardware_concurrency();
  return hw ? hw : 1;
}

// Index-parallel map with deterministic output order; fn(i) must only touch
// its own slot.
inline void parallel_for(size_t count, const std::function<void(size_t)>& fn) {
  unsigned budget = thread_budget();
  if (budget <= 1 || count <= 1) {
    for (size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  unsigned workers = static_cast<unsigned>(std::min<size_t>(budget, count));
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&, w]() {
      for (size_t i = w; i < count; i += workers) fn(i);
    });
  }
  for (auto& t : pool) t.join();
}

}  // namespace polypreserve
