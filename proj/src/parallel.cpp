#include "oscillint/parallel.hpp"

#include <algorithm>
#include <cstdlib>
#include <string>

namespace oscillint {

int default_thread_count() {
  if (const char* env = std::getenv("OSCILLINT_THREADS")) {
    const int n = std::atoi(env);
    if (n > 0) return n;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? static_cast<int>(hw) : 1;
}

void parallel_for_chunks(std::int64_t n,
                         const std::function<void(std::int64_t, std::int64_t)>& body,
                         int threads) {
  if (n <= 0) return;
  const int t = threads > 0 ? threads : default_thread_count();
  if (t == 1 || n == 1) {
    body(0, n);
    return;
  }
  const std::int64_t chunk = std::max<std::int64_t>(1, n / (8 * t));
  std::atomic<std::int64_t> next{0};
  auto work = [&] {
    for (;;) {
      const std::int64_t lo = next.fetch_add(chunk);
      if (lo >= n) break;
      body(lo, std::min(lo + chunk, n));
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(t - 1));
  for (int i = 0; i < t - 1; ++i) pool.emplace_back(work);
  work();
  for (auto& th : pool) th.join();
}

void parallel_for(std::int64_t n, const std::function<void(std::int64_t)>& body,
                  int threads) {
  parallel_for_chunks(
      n,
      [&](std::int64_t lo, std::int64_t hi) {
        for (std::int64_t i = lo; i < hi; ++i) body(i);
      },
      threads);
}

}  // namespace oscillint
