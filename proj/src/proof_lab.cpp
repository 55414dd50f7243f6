#include "maxavg/proof_lab.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "maxavg/maximal.hpp"
#include "maxavg/torus.hpp"

namespace maxavg {

int dyadic_level(double v) {
  double a = std::abs(v);
  if (a == 0.0 || !std::isfinite(a)) throw std::invalid_argument("dyadic_level: value must be nonzero finite");
  int e;
  std::frexp(a, &e);  // a = mant * 2^e, mant in [0.5, 1)  =>  2^{e-1} <= a < 2^e
  return e - 1;
}

LevelDecomposition level_decompose(const IntSignal& f) {
  std::map<int, std::vector<std::pair<std::int64_t, double>>> buckets;
  for (std::size_t i = 0; i < f.values.size(); ++i) {
    double v = f.values[i];
    if (v == 0.0) continue;
    buckets[dyadic_level(v)].emplace_back(f.offset + static_cast<std::int64_t>(i), v);
  }
  LevelDecomposition d;
  for (auto& [j, atoms] : buckets) d.parts.emplace(j, IntSignal::from_atoms(atoms));
  return d;
}

ScaleAssignment scales_from_schedule(const PrimeSchedule& schedule, int m, double alpha) {
  ScaleAssignment s;
  for (std::uint64_t p : schedule.primes) s.scales.push_back(static_cast<double>(p));
  s.gamma = 1.0 / static_cast<double>(m);
  s.alpha = alpha;
  return s;
}

ExceptionalSets exceptional_set(const LevelDecomposition& decomp,
                                std::span<const SequenceBlock> blocks,
                                const ScaleAssignment& scales) {
  if (scales.alpha <= 0.0) throw std::invalid_argument("exceptional_set: alpha must be positive");
  if (blocks.size() != scales.scales.size())
    throw std::invalid_argument("exceptional_set: one scale per block required");

  ExceptionalSets out;
  std::vector<std::int64_t> all;
  double total_l1 = 0.0;
  for (const auto& [j, fj] : decomp.parts) total_l1 += fj.norm_l1();

  for (const auto& [j, fj] : decomp.parts) {
    const double threshold = std::ldexp(1.0, j) / scales.alpha;  // alpha^{-1} 2^j
    std::vector<std::int64_t> ej;
    const auto support = fj.atoms();
    for (std::size_t k = 0; k < blocks.size(); ++k) {
      if (!(scales.scales[k] < threshold)) continue;
      for (const auto& [s, v] : support) {
        (void)v;
        for (std::int64_t e : blocks[k].elements) ej.push_back(s + e);
      }
    }
    std::sort(ej.begin(), ej.end());
    ej.erase(std::unique(ej.begin(), ej.end()), ej.end());
    out.sizes[j] = static_cast<std::int64_t>(ej.size());
    out.bound_ratios[j] = fj.norm_l1() > 0
                              ? static_cast<double>(ej.size()) * scales.alpha / fj.norm_l1()
                              : 0.0;
    all.insert(all.end(), ej.begin(), ej.end());
  }
  std::sort(all.begin(), all.end());
  all.erase(std::unique(all.begin(), all.end()), all.end());
  out.total = static_cast<std::int64_t>(all.size());
  out.total_bound_ratio =
      total_l1 > 0 ? static_cast<double>(out.total) * scales.alpha / total_l1 : 0.0;
  return out;
}

int bracket_level(double scale, double alpha, int s) {
  const double x = scale * alpha * std::ldexp(1.0, -s);
  if (x <= 0.0 || !std::isfinite(x)) throw std::invalid_argument("bracket_level: bad scale/alpha");
  int e;
  double mant = std::frexp(x, &e);       // x = mant 2^e, mant in [0.5, 1)
  return mant == 0.5 ? e - 1 : e;        // smallest j with 2^j >= x
}

IntSignal square_function(const LevelDecomposition& decomp,
                          std::span<const IntSignal> lambdas,
                          std::span<const double> scales, double alpha, int s) {
  if (lambdas.size() != scales.size())
    throw std::invalid_argument("square_function: lambdas and scales must align");
  IntSignal sq;  // running sum of squares
  for (std::size_t k = 0; k < lambdas.size(); ++k) {
    const int j = bracket_level(scales[k], alpha, s);
    auto it = decomp.parts.find(j);
    if (it == decomp.parts.end()) continue;
    IntSignal c = forward_average(it->second, lambdas[k]);
    for (double& v : c.values) v = v * v;
    sq = add(sq, c);
  }
  for (double& v : sq.values) v = std::sqrt(v);
  sq.trim();
  return sq;
}

HypothesisReport hypothesis_check(std::span<const SequenceBlock> blocks,
                                  std::span<const BlockTriple> triples,
                                  const ScaleAssignment& scales) {
  if (blocks.size() != triples.size() || blocks.size() != scales.scales.size())
    throw std::invalid_argument("hypothesis_check: blocks, triples, scales must align");

  HypothesisReport r;
  std::int64_t max_reach = 0;
  for (std::size_t k = 0; k < triples.size(); ++k) {
    const BlockTriple& t = triples[k];
    HypothesisReport::Row row;
    row.k = static_cast<int>(k + 1);
    row.p = t.p;
    for (double v : t.mu_tilde.values)
      if (v != 0.0) ++row.support_size;
    const int ambient = t.kind == MeasureKind::PowerDiagonal ? t.param : t.param + 1;
    double three_m = std::pow(3.0, ambient);
    row.support_bound = three_m * scales.scales[k] *
                        (t.kind == MeasureKind::PowerDiagonal
                             ? 1.0
                             : std::pow(static_cast<double>(t.p), t.param - 1));
    if (row.support_size > row.support_bound) r.support_ok = false;
    TorusScan scan = grid_sup(t.lambda, 32, true);
    row.lambda_sup = scan.sup_value;
    row.lambda_sup_scaled = scan.sup_value * std::sqrt(scales.scales[k]);
    r.c_f = std::max(r.c_f, row.lambda_sup_scaled);
    r.rows.push_back(row);
    if (!t.nu.empty()) {
      max_reach = std::max(max_reach, std::abs(t.nu.first()));
      max_reach = std::max(max_reach, std::abs(t.nu.last()));
    }
  }

  // Hardy-Littlewood domination constant measured on a point mass.
  IntSignal probe = IntSignal::from_atoms({{0, 1.0}});
  std::vector<IntSignal> nus;
  for (const BlockTriple& t : triples) nus.push_back(abs_signal(t.nu));
  IntSignal corr = sup_average(probe, nus);
  IntSignal hl = hardy_littlewood(probe, max_reach);
  double constant = 0.0;
  for (std::size_t i = 0; i < corr.values.size(); ++i) {
    const std::int64_t x = corr.first() + static_cast<std::int64_t>(i);
    double denom = hl.at(x);
    if (denom > 0.0) constant = std::max(constant, corr.values[i] / denom);
  }
  r.hl_constant = constant;
  return r;
}

ProofInspection inspect_proof(const IntSignal& f, std::span<const SequenceBlock> blocks,
                              std::span<const IntSignal> lambdas,
                              const ScaleAssignment& scales, int s_max) {
  if (lambdas.size() != scales.scales.size())
    throw std::invalid_argument("inspect_proof: lambdas and scales must align");
  LevelDecomposition decomp = level_decompose(f);
  ProofInspection pi;

  ExceptionalSets exc = exceptional_set(decomp, blocks, scales);
  pi.exceptional_sizes = exc.sizes;
  pi.exceptional_total = exc.total;
  pi.exceptional_bound_ratio = exc.total_bound_ratio;

  // Convolutions f_j . lambda_k for every level at or below the s = 0
  // bracket; each (j, k) pair is owned by exactly one s.
  std::map<std::pair<int, std::size_t>, IntSignal> conv;
  for (std::size_t k = 0; k < lambdas.size(); ++k) {
    const int top = bracket_level(scales.scales[k], scales.alpha, 0);
    for (const auto& [j, fj] : decomp.parts) {
      if (j > top) continue;
      conv.emplace(std::make_pair(j, k), forward_average(fj, lambdas[k]));
    }
  }

  const double l1 = f.norm_l1();
  IntSignal gs_sum;  // sum_s G_s
  for (int s = 0; s <= s_max; ++s) {
    IntSignal sq;
    for (std::size_t k = 0; k < lambdas.size(); ++k) {
      const int j = bracket_level(scales.scales[k], scales.alpha, s);
      auto it = conv.find(std::make_pair(j, k));
      if (it == conv.end()) continue;
      IntSignal c = it->second;
      for (double& v : c.values) v = v * v;
      sq = add(sq, c);
    }
    for (double& v : sq.values) v = std::sqrt(v);
    sq.trim();
    double norm_sq = sq.norm_l2_sq();
    pi.gs_norm_sq.push_back(norm_sq);
    if (l1 > 0)
      pi.gs_bound_constant = std::max(
          pi.gs_bound_constant, norm_sq * std::ldexp(1.0, s) / (scales.alpha * l1));
    gs_sum = add(gs_sum, sq);
  }

  // sup_k sum_{2^j <= S_k alpha} |f_j . lambda_k| <= sum_s G_s pointwise
  IntSignal lhs;
  for (std::size_t k = 0; k < lambdas.size(); ++k) {
    IntSignal row;
    for (const auto& [key, c] : conv) {
      if (key.second != k) continue;
      const int j = key.first;
      if (std::ldexp(1.0, j) > scales.scales[k] * scales.alpha) continue;  // strict threshold
      row = add(row, abs_signal(c));
    }
    if (row.empty()) continue;
    // pointwise max of row into lhs
    if (lhs.empty()) {
      lhs = row;
    } else {
      std::int64_t lo = std::min(lhs.first(), row.first());
      std::int64_t hi = std::max(lhs.last(), row.last());
      IntSignal grown;
      grown.offset = lo;
      grown.values.assign(static_cast<std::size_t>(hi - lo + 1), 0.0);
      for (std::size_t i = 0; i < lhs.values.size(); ++i)
        grown.values[static_cast<std::size_t>(lhs.offset - lo) + i] = lhs.values[i];
      for (std::size_t i = 0; i < row.values.size(); ++i) {
        double& slot = grown.values[static_cast<std::size_t>(row.offset - lo) + i];
        slot = std::max(slot, row.values[i]);
      }
      lhs = std::move(grown);
    }
  }
  pi.generous_domination_ok = true;
  for (std::size_t i = 0; i < lhs.values.size(); ++i) {
    const std::int64_t x = lhs.first() + static_cast<std::int64_t>(i);
    if (lhs.values[i] > gs_sum.at(x) * (1.0 + 1e-9) + 1e-12) {
      pi.generous_domination_ok = false;
      break;
    }
  }
  return pi;
}

}  // namespace maxavg
