#pragma once

// Independent test oracles: brute-force routes kept deliberately separate
// from the library implementations they check.

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <span>
#include <vector>

#include "maxavg/int_signal.hpp"

namespace oracles {

inline bool trial_division_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

inline std::uint64_t trial_division_next_prime(std::uint64_t n) {
  while (!trial_division_prime(n)) ++n;
  return n;
}

// Direct summation of the paraboloid exponential sum (no Gauss factoring).
inline std::complex<double> paraboloid_direct(std::uint64_t p, int d,
                                              std::span<const std::int64_t> xi) {
  const std::int64_t ip = static_cast<std::int64_t>(p);
  std::vector<std::int64_t> n(static_cast<std::size_t>(d), 0);
  std::int64_t count = 1;
  for (int i = 0; i < d; ++i) count *= ip;
  std::complex<double> acc = 0;
  for (std::int64_t c = 0; c < count; ++c) {
    std::int64_t phase = 0;
    std::int64_t norm2 = 0;
    for (int r = 0; r < d; ++r) {
      phase += n[static_cast<std::size_t>(r)] * (xi[static_cast<std::size_t>(r)] % ip);
      norm2 += n[static_cast<std::size_t>(r)] * n[static_cast<std::size_t>(r)];
    }
    phase += (norm2 % ip) * (xi[static_cast<std::size_t>(d)] % ip);
    phase %= ip;
    if (phase < 0) phase += ip;
    double angle = -2.0 * std::numbers::pi * static_cast<double>(phase) / static_cast<double>(p);
    acc += std::complex<double>(std::cos(angle), std::sin(angle));
    for (int ax = 0; ax < d; ++ax) {
      if (++n[static_cast<std::size_t>(ax)] < ip) break;
      n[static_cast<std::size_t>(ax)] = 0;
    }
  }
  for (int i = 0; i < d; ++i) acc /= static_cast<double>(p);
  return acc;
}

// Naive maximal function: plain loop over the window, no candidate pruning.
inline maxavg::IntSignal naive_maximal(const maxavg::IntSignal& f,
                                       std::span<const std::int64_t> seq, std::size_t n_max) {
  maxavg::IntSignal out;
  if (f.empty()) return out;
  const std::int64_t lo = f.first() - seq[n_max - 1];
  const std::int64_t hi = f.last() - seq[0];
  out.offset = lo;
  out.values.assign(static_cast<std::size_t>(hi - lo + 1), 0.0);
  for (std::int64_t x = lo; x <= hi; ++x) {
    double sum = 0.0, best = 0.0;
    for (std::size_t nu = 0; nu < n_max; ++nu) {
      sum += f.at(x + seq[nu]);
      best = std::max(best, std::abs(sum) / static_cast<double>(nu + 1));
    }
    out.values[static_cast<std::size_t>(x - lo)] = best;
  }
  out.trim();
  return out;
}

}  // namespace oracles
