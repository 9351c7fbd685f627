#pragma once

#include <atomic>
#include <cstdint>
#include <functional>
#include <span>
#include <thread>
#include <vector>

namespace oscillint {

/// Worker count for parallel maps. Order of precedence: explicit argument,
/// OSCILLINT_THREADS environment variable, hardware concurrency.
int default_thread_count();

/// Parallel map over [0, n). Each index is processed exactly once; the body
/// must write only to its own output slot, which keeps results bit-identical
/// for any thread count or partitioning.
void parallel_for(std::int64_t n, const std::function<void(std::int64_t)>& body,
                  int threads = 0);

/// Chunked variant for cheap bodies: body(lo, hi) handles [lo, hi).
void parallel_for_chunks(std::int64_t n,
                         const std::function<void(std::int64_t, std::int64_t)>& body,
                         int threads = 0);

namespace detail {
template <class F>
double pairwise_sum_impl(std::int64_t lo, std::int64_t hi, const F& term) {
  const std::int64_t n = hi - lo;
  if (n <= 256) {
    double acc = 0.0;
    for (std::int64_t i = lo; i < hi; ++i) acc += term(i);
    return acc;
  }
  const std::int64_t mid = lo + n / 2;
  return pairwise_sum_impl(lo, mid, term) + pairwise_sum_impl(mid, hi, term);
}
}  // namespace detail

/// Deterministic pairwise reduction of term(0) + ... + term(n-1). The
/// association order depends only on n, never on thread count.
template <class F>
double pairwise_sum(std::int64_t n, const F& term) {
  if (n <= 0) return 0.0;
  return detail::pairwise_sum_impl(0, n, term);
}

inline double pairwise_sum(std::span<const double> v) {
  return pairwise_sum(static_cast<std::int64_t>(v.size()),
                      [&](std::int64_t i) { return v[static_cast<std::size_t>(i)]; });
}

}  // namespace oscillint
