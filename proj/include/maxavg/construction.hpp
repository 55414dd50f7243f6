#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "maxavg/cyclic_signal.hpp"
#include "maxavg/int_signal.hpp"
#include "maxavg/numtheory.hpp"
#include "maxavg/rational.hpp"

namespace maxavg {

enum class MeasureKind { PowerDiagonal, Paraboloid };

// Exact measure on Z_p^m written as background + atom excess:
// value(k) = background + excess for the (at most one) atom at k.
struct RatCyclicMeasure {
  std::uint64_t p = 3;
  int m = 1;
  Rat background{0};
  std::vector<std::pair<std::int64_t, Rat>> atoms;  // (flat index, excess), sorted

  Rat value_at_flat(std::int64_t flat) const;
  Rat value_at(std::span<const std::int64_t> coords) const;  // coords reduced mod p
};

// sigma: p^{-1} sum_k delta_{(k, k^2, ..., k^m)} (power-diagonal on Z_p^m)
//    or  p^{-d} sum_n delta_{(n, |n|^2)}        (paraboloid on Z_p^{d+1});
// sigma0: uniform with the same mass; sigma_star = sigma - sigma0.
struct CyclicMeasureTriple {
  MeasureKind kind = MeasureKind::PowerDiagonal;
  std::uint64_t p = 3;
  int param = 2;  // m, or d for the paraboloid
  CyclicSignal sigma, sigma0, sigma_star;
  RatCyclicMeasure sigma_exact, sigma0_exact, sigma_star_exact;
};

CyclicMeasureTriple make_sigma_triple(std::uint64_t p, MeasureKind kind, int m_or_d);

// The cutoff phi on Z_{3p} = [-p, 2p-1]: 1 on [0, p-1], 0 near both ends,
// affine ramps of width (p-1)/2 in between. Values are exact rationals.
struct CutoffProfile {
  std::uint64_t p = 5;
  std::vector<Rat> values;  // index i + p for i in [-p, 2p-1]

  Rat at(std::int64_t i) const;
  Rat total() const;  // sum over Z_{3p}; equals (3p-2)/2
};

CutoffProfile make_cutoff(std::uint64_t p);

// kappa(k) = w([k]_p) on [-p, 2p-1]^m (period-p extension to Z_{3p}^m).
CyclicSignal periodize(const CyclicSignal& w);

// rho = phi kappa with phi(k) = prod_i cutoff(k_i).
CyclicSignal apply_cutoff(const CyclicSignal& kappa, const CutoffProfile& phi);

// Pushforward to Z via F(k_1,...,k_m) = sum_j p^{j-1} k_j, summing preimages.
// Input must be real-valued up to 1e-12 (everything in this pipeline is).
IntSignal pushforward(const CyclicSignal& rho, std::uint64_t p);

// Gamma = pushforward . cutoff . periodize. Linear and positivity preserving;
// total mass equals sum_k prod_i phi(k_i) w([k]_p).
IntSignal gamma_transfer(const CyclicSignal& w, const CutoffProfile& phi);

// Exact-rational route through the same pipeline.
RatSignal gamma_transfer_exact(const RatCyclicMeasure& w, const CutoffProfile& phi);

// One block of the sequence: elements = a + g(j) sorted increasing.
struct SequenceBlock {
  int k = 0;
  std::uint64_t p = 5;
  std::int64_t a = 0;
  std::vector<std::int64_t> elements;
};

// S_k = { a + sum_{r=1}^m p^{r-1} [j^r]_p : 0 <= j < p }; exactly p elements.
SequenceBlock block_elements(std::uint64_t p, int m, std::int64_t a);

// Variant: n(j, p) = j_1 + p j_2 + ... + p^{d-1} j_d + p^d [|j|^2]_p over
// j in [0, p-1]^d, shifted by a; exactly p^d elements.
SequenceBlock variant_block_elements(std::uint64_t p, int d, std::int64_t a);

// Uniform probability measure on the block's elements (mass 1/|S_k| each).
IntSignal block_probability_measure(const SequenceBlock& block);

// mu_tilde = Gamma(sigma) shifted by a, nu = Gamma(sigma0) shifted by a,
// lambda = mu_tilde - nu. Doubles are converted from the exact forms.
struct BlockTriple {
  MeasureKind kind = MeasureKind::PowerDiagonal;
  std::uint64_t p = 5;
  int param = 2;
  std::int64_t a = 0;
  IntSignal mu_tilde, nu, lambda;
  RatSignal mu_exact, nu_exact, lambda_exact;
};

BlockTriple make_block_triple(std::uint64_t p, int m_or_d, std::int64_t a, MeasureKind kind);

enum class SequenceKind { PowerDiagonal, Paraboloid, Mixed };

struct SparseSequence {
  SequenceKind kind = SequenceKind::PowerDiagonal;
  int m = 0;                 // power-diagonal exponent
  int d = 0;                 // paraboloid dimension
  std::vector<int> pattern;  // mixed: per-block exponent m_k
  PrimeSchedule schedule;
  OffsetSchedule offsets;
  std::vector<SequenceBlock> blocks;
  std::vector<std::int64_t> merged;
  double growth_exponent = 0.0;  // target e (mixed: least-squares estimate)
  double growth_ratio = 0.0;     // max_nu (n_nu/nu^e) / min_nu (n_nu/nu^e)
};

// Assemble blocks over the schedules and merge. Blocks never overlap when
// the offset gap condition holds; this is re-checked and enforced.
SparseSequence build_sequence(SequenceKind kind, const PrimeSchedule& schedule,
                              const OffsetSchedule& offsets, int m_or_d,
                              std::vector<int> pattern = {});

}  // namespace maxavg
