#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "maxavg/construction.hpp"
#include "maxavg/int_signal.hpp"
#include "maxavg/numtheory.hpp"

namespace maxavg {

// f = sum_j f_j with f_j carrying the entries of dyadic magnitude
// 2^j <= |f(x)| < 2^{j+1}. Supports are pairwise disjoint.
struct LevelDecomposition {
  std::map<int, IntSignal> parts;
};

LevelDecomposition level_decompose(const IntSignal& f);

// Dyadic magnitude class of a nonzero value (exact via frexp).
int dyadic_level(double v);

// Per-block scales S_k standing in for the 2^{k gamma} of the weak-type
// criterion; here S_k = p_k and gamma = 1/m is recorded, not asserted.
struct ScaleAssignment {
  std::vector<double> scales;
  double gamma = 0.0;
  double alpha = 0.0;
};

ScaleAssignment scales_from_schedule(const PrimeSchedule& schedule, int m, double alpha);

struct ExceptionalSets {
  std::map<int, std::int64_t> sizes;      // |E_j|
  std::int64_t total = 0;                 // |E| (union over j)
  std::map<int, double> bound_ratios;     // |E_j| alpha / ||f_j||_1
  double total_bound_ratio = 0.0;         // |E| alpha / ||f||_1
};

// E_j = union over blocks with S_k < alpha^{-1} 2^j of
// (support(f_j) + elements(S_k)); exact integer sumsets.
ExceptionalSets exceptional_set(const LevelDecomposition& decomp,
                                std::span<const SequenceBlock> blocks,
                                const ScaleAssignment& scales);

// Level matched to block k at stage s: the unique j with
// S_k 2^{-s} alpha <= 2^j < 2 S_k 2^{-s} alpha.
int bracket_level(double scale, double alpha, int s);

// G_s(x) = (sum_k |f_{j(k,s)} . lambda_k(x)|^2)^{1/2}; blocks whose matched
// level is absent contribute zero.
IntSignal square_function(const LevelDecomposition& decomp,
                          std::span<const IntSignal> lambdas,
                          std::span<const double> scales, double alpha, int s);

struct HypothesisReport {
  struct Row {
    int k = 0;
    std::uint64_t p = 0;
    std::int64_t support_size = 0;     // |support(mu_tilde_k)|
    double support_bound = 0.0;        // 3^m S_k
    double lambda_sup = 0.0;           // grid_sup of lambda_k on the torus
    double lambda_sup_scaled = 0.0;    // lambda_sup * sqrt(S_k)
  };
  std::vector<Row> rows;
  bool support_ok = true;
  double c_f = 0.0;          // max_k lambda_sup_scaled
  double hl_constant = 0.0;  // measured sup_x sup_k (|f|.|nu_k|)(x) / M_HL f(x)
};

// Checks the weak-type criterion's hypotheses on constructed block triples
// and reports every measured constant.
HypothesisReport hypothesis_check(std::span<const SequenceBlock> blocks,
                                  std::span<const BlockTriple> triples,
                                  const ScaleAssignment& scales);

struct ProofInspection {
  std::map<int, std::int64_t> exceptional_sizes;
  std::int64_t exceptional_total = 0;
  double exceptional_bound_ratio = 0.0;   // |E| alpha / ||f||_1
  std::vector<double> gs_norm_sq;         // ||G_s||_2^2 for s = 0..s_max
  double gs_bound_constant = 0.0;         // max_s ||G_s||^2 2^s / (alpha ||f||_1)
  bool generous_domination_ok = false;    // sup_k sum_j |f_j.lambda_k| <= sum_s G_s
};

// Full desk-scale pass of the level/exceptional-set/square-function chain.
ProofInspection inspect_proof(const IntSignal& f, std::span<const SequenceBlock> blocks,
                              std::span<const IntSignal> lambdas,
                              const ScaleAssignment& scales, int s_max = 20);

}  // namespace maxavg
