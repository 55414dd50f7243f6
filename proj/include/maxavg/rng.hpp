#pragma once

#include <cstdint>

namespace maxavg {

// Counter-based generator (splitmix64 finalizer). Output for a given
// (seed, stream, counter) triple never depends on call order, so trials
// can be split across workers without changing results.
struct CounterRng {
  std::uint64_t seed = 0;
  std::uint64_t stream = 0;
  std::uint64_t counter = 0;

  CounterRng(std::uint64_t seed_, std::uint64_t stream_) : seed(seed_), stream(stream_) {}

  static std::uint64_t mix(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  std::uint64_t next_u64() {
    std::uint64_t key = mix(seed ^ mix(stream * 0xda942042e4dd58b5ULL + 1));
    return mix(key + counter++ * 0x9e3779b97f4a7c15ULL);
  }

  // Uniform in [0, 1).
  double next_unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  // Uniform integer in [lo, hi], inclusive.
  std::int64_t next_range(std::int64_t lo, std::int64_t hi) {
    std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<std::int64_t>(next_u64() % span);
  }
};

}  // namespace maxavg
