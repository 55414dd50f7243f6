#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "maxavg/construction.hpp"
#include "maxavg/int_signal.hpp"

namespace maxavg {

// Mf(x) = sup_{1 <= N <= n_max} N^{-1} |sum_{nu=1}^N f(x + n_nu)|, exact on
// its full nonzero window. Sparse and dense evaluation paths agree bitwise.
IntSignal maximal_function(const IntSignal& f, std::span<const std::int64_t> sequence,
                           std::size_t n_max);
IntSignal maximal_function(const IntSignal& f, const SparseSequence& seq, std::size_t n_max);

struct DyadicMeasureSet {
  std::vector<IntSignal> measures;  // mu_k = 2^{-k} sum_{nu=2^k+1}^{2^{k+1}} delta_{n_nu}
  bool truncated_tail = false;      // a final partial block existed and was not emitted
};

DyadicMeasureSet dyadic_measures(std::span<const std::int64_t> sequence);
DyadicMeasureSet dyadic_measures(const SparseSequence& seq);

// Forward average (f against the +support of mu, matching Mf's orientation):
// (f . mu)(x) = sum_y f(x + y) mu(y).
IntSignal forward_average(const IntSignal& f, const IntSignal& mu);

// sup_k |forward_average(f, mu_k)| pointwise.
IntSignal sup_average(const IntSignal& f, std::span<const IntSignal> measures);

// Centered Hardy-Littlewood maximal function, exact:
// sup_{0 <= r <= r_max} (2r+1)^{-1} sum_{|y| <= r} |f(x + y)|.
IntSignal hardy_littlewood(const IntSignal& f, std::int64_t r_max);

struct WeakTypeReport {
  std::vector<double> alphas;  // descending
  std::vector<std::int64_t> counts;
  std::vector<double> ratios;  // alpha * count / mass
  double worst_ratio = 0.0;
  std::uint64_t input_digest = 0;
};

WeakTypeReport weak_type_report(const IntSignal& maxfn, double mass,
                                std::span<const double> alphas, std::uint64_t digest = 0);

// Logarithmic alpha grid: top * 10^{-(i+1)/per_decade}, descending.
std::vector<double> log_alpha_grid(double top, int decades, int per_decade);

enum class ProbeFamily { Deltas, Comb, DifferenceComb, SquaresBaseline };

struct ProbeConfig {
  int atoms = 8;                   // A
  std::int64_t window = 4096;      // positions drawn from [0, window)
  std::int64_t comb_stride = 3;    // family (b): atoms at c*i
  std::size_t n_max = 0;           // 0 = whole sequence
  int alpha_decades = 4;
  int alpha_per_decade = 64;
};

// Deterministic probe battery. SquaresBaseline runs the Deltas probes
// against n_nu = nu^2 of matching length (report-only contrast).
std::vector<WeakTypeReport> adversary_suite(const SparseSequence& seq, ProbeFamily family,
                                            int trials, std::uint64_t seed,
                                            const ProbeConfig& cfg = {});

std::uint64_t signal_digest(const IntSignal& f, std::span<const std::int64_t> sequence);

}  // namespace maxavg
