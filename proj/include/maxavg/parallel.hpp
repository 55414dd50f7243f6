#pragma once

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <thread>
#include <vector>

namespace maxavg {

// Worker count: MAXAVG_WORKERS env var, else hardware concurrency.
inline int default_workers() {
  if (const char* env = std::getenv("MAXAVG_WORKERS")) {
    int w = std::atoi(env);
    if (w >= 1) return w;
  }
  unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

// Static chunking. fn(i) must only write to per-i state.
template <typename Fn>
void parallel_for(std::int64_t begin, std::int64_t end, Fn&& fn, int workers = 0) {
  if (workers <= 0) workers = default_workers();
  std::int64_t n = end - begin;
  if (n <= 0) return;
  workers = static_cast<int>(std::min<std::int64_t>(workers, n));
  if (workers == 1) {
    for (std::int64_t i = begin; i < end; ++i) fn(i);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(workers);
  std::int64_t chunk = (n + workers - 1) / workers;
  for (int w = 0; w < workers; ++w) {
    std::int64_t lo = begin + w * chunk;
    std::int64_t hi = std::min(end, lo + chunk);
    if (lo >= hi) break;
    pool.emplace_back([lo, hi, &fn] {
      for (std::int64_t i = lo; i < hi; ++i) fn(i);
    });
  }
  for (auto& t : pool) t.join();
}

// Max-reduction over fn(i) -> double; result independent of worker count.
template <typename Fn>
double parallel_max(std::int64_t begin, std::int64_t end, Fn&& fn, int workers = 0) {
  if (workers <= 0) workers = default_workers();
  std::int64_t n = end - begin;
  if (n <= 0) return 0.0;
  workers = static_cast<int>(std::min<std::int64_t>(workers, n));
  std::vector<double> partial(workers, 0.0);
  std::vector<std::thread> pool;
  pool.reserve(workers);
  std::int64_t chunk = (n + workers - 1) / workers;
  for (int w = 0; w < workers; ++w) {
    std::int64_t lo = begin + w * chunk;
    std::int64_t hi = std::min(end, lo + chunk);
    if (lo >= hi) break;
    pool.emplace_back([lo, hi, w, &partial, &fn] {
      double m = 0.0;
      for (std::int64_t i = lo; i < hi; ++i) m = std::max(m, fn(i));
      partial[w] = m;
    });
  }
  for (auto& t : pool) t.join();
  double m = 0.0;
  for (double v : partial) m = std::max(m, v);
  return m;
}

}  // namespace maxavg
