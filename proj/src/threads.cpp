#include "ptwell/threads.hpp"

#include <atomic>
#include <cstdlib>
#include <thread>
#include <vector>

namespace ptwell {

int worker_count() {
  if (const char* env = std::getenv("PTWELL_THREADS")) {
    int v = std::atoi(env);
    if (v > 0) return v;
  }
  unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? static_cast<int>(hw) : 1;
}

void parallel_for(int begin, int end, const std::function<void(int)>& body) {
  const int n = end - begin;
  const int workers = std::min(worker_count(), n);
  if (n <= 0) return;
  if (workers <= 1 || n < 64) {
    for (int i = begin; i < end; ++i) body(i);
    return;
  }
  std::atomic<int> next(begin);
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&]() {
      for (;;) {
        int i = next.fetch_add(1);
        if (i >= end) break;
        body(i);
      }
    });
  }
  for (auto& t : pool) t.join();
}

}  // namespace ptwell
