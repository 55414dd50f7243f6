#include "maxavg/maximal.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <limits>
#include <stdexcept>

#include "maxavg/rng.hpp"

namespace maxavg {

namespace {

// sup_{1 <= N <= n_max} |sum_{nu <= N} f(x + n_nu)| / N; the running-prefix
// loop is shared by the dense and sparse paths so they agree bitwise.
double maximal_at(const IntSignal& f, std::span<const std::int64_t> seq, std::size_t n_max,
                  std::int64_t x) {
  double sum = 0.0;
  double best = 0.0;
  for (std::size_t nu = 0; nu < n_max; ++nu) {
    sum += f.at(x + seq[nu]);
    double avg = std::abs(sum) / static_cast<double>(nu + 1);
    if (avg > best) best = avg;
  }
  return best;
}

}  // namespace

IntSignal maximal_function(const IntSignal& f, std::span<const std::int64_t> seq,
                           std::size_t n_max) {
  if (n_max == 0) throw std::invalid_argument("maximal_function: n_max must be positive");
  if (n_max > seq.size()) throw std::invalid_argument("maximal_function: n_max exceeds sequence length");
  IntSignal out;
  if (f.empty()) return out;

  const std::int64_t lo = f.first() - seq[n_max - 1];
  const std::int64_t hi = f.last() - seq[0];
  const std::int64_t window = hi - lo + 1;
  const auto atoms = f.atoms();
  const std::int64_t candidate_count =
      static_cast<std::int64_t>(atoms.size()) * static_cast<std::int64_t>(n_max);

  if (candidate_count < window) {
    std::vector<std::int64_t> candidates;
    candidates.reserve(static_cast<std::size_t>(candidate_count));
    for (const auto& [pos, val] : atoms) {
      (void)val;
      for (std::size_t nu = 0; nu < n_max; ++nu) candidates.push_back(pos - seq[nu]);
    }
    std::sort(candidates.begin(), candidates.end());
    candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
    std::vector<std::pair<std::int64_t, double>> result;
    result.reserve(candidates.size());
    for (std::int64_t x : candidates) {
      double v = maximal_at(f, seq, n_max, x);
      if (v != 0.0) result.emplace_back(x, v);
    }
    return IntSignal::from_atoms(result);
  }

  out.offset = lo;
  out.values.assign(static_cast<std::size_t>(window), 0.0);
  for (std::int64_t x = lo; x <= hi; ++x)
    out.values[static_cast<std::size_t>(x - lo)] = maximal_at(f, seq, n_max, x);
  out.trim();
  return out;
}

IntSignal maximal_function(const IntSignal& f, const SparseSequence& seq, std::size_t n_max) {
  return maximal_function(f, std::span<const std::int64_t>(seq.merged), n_max);
}

DyadicMeasureSet dyadic_measures(std::span<const std::int64_t> seq) {
  if (seq.size() < 2) throw std::invalid_argument("dyadic_measures: need at least 2 elements");
  DyadicMeasureSet set;
  std::size_t covered = 1;
  for (int k = 0;; ++k) {
    const std::size_t begin = (std::size_t{1} << k) + 1;   // nu range, 1-based
    const std::size_t end = std::size_t{1} << (k + 1);
    if (end > seq.size()) break;
    const double w = 1.0 / static_cast<double>(std::size_t{1} << k);
    std::vector<std::pair<std::int64_t, double>> atoms;
    for (std::size_t nu = begin; nu <= end; ++nu) atoms.emplace_back(seq[nu - 1], w);
    set.measures.push_back(IntSignal::from_atoms(atoms));
    covered = end;
  }
  set.truncated_tail = covered < seq.size();
  return set;
}

DyadicMeasureSet dyadic_measures(const SparseSequence& seq) {
  return dyadic_measures(std::span<const std::int64_t>(seq.merged));
}

IntSignal forward_average(const IntSignal& f, const IntSignal& mu) {
  IntSignal out;
  if (f.empty() || mu.empty()) return out;
  const std::int64_t lo = f.first() - mu.last();
  const std::int64_t hi = f.last() - mu.first();
  out.offset = lo;
  out.values.assign(static_cast<std::size_t>(hi - lo + 1), 0.0);

  const auto f_atoms = f.atoms();
  const auto mu_atoms = mu.atoms();
  const std::size_t scatter_cost = f_atoms.size() * mu.values.size();
  const std::size_t gather_cost = out.values.size() * mu_atoms.size();
  if (scatter_cost <= gather_cost) {
    for (const auto& [s, fv] : f_atoms)
      for (const auto& [y, mv] : mu_atoms)
        out.values[static_cast<std::size_t>(s - y - lo)] += fv * mv;
  } else {
    for (std::int64_t x = lo; x <= hi; ++x) {
      double acc = 0.0;
      for (const auto& [y, mv] : mu_atoms) acc += f.at(x + y) * mv;
      out.values[static_cast<std::size_t>(x - lo)] = acc;
    }
  }
  out.trim();
  return out;
}

IntSignal sup_average(const IntSignal& f, std::span<const IntSignal> measures) {
  IntSignal out;
  for (const IntSignal& mu : measures) {
    IntSignal c = forward_average(f, mu);
    if (c.empty()) continue;
    if (out.empty()) {
      out.offset = c.offset;
      out.values.resize(c.values.size(), 0.0);
    }
    std::int64_t lo = std::min(out.first(), c.first());
    std::int64_t hi = std::max(out.last(), c.last());
    if (lo != out.first() || hi != out.last()) {
      std::vector<double> grown(static_cast<std::size_t>(hi - lo + 1), 0.0);
      std::memcpy(grown.data() + (out.first() - lo), out.values.data(),
                  out.values.size() * sizeof(double));
      out.values = std::move(grown);
      out.offset = lo;
    }
    for (std::size_t i = 0; i < c.values.size(); ++i) {
      double mag = std::abs(c.values[i]);
      double& slot = out.values[static_cast<std::size_t>(c.offset - lo) + i];
      if (mag > slot) slot = mag;
    }
  }
  out.trim();
  return out;
}

IntSignal hardy_littlewood(const IntSignal& f, std::int64_t r_max) {
  IntSignal out;
  if (f.empty()) return out;
  if (r_max < 0) throw std::invalid_argument("hardy_littlewood: r_max must be nonnegative");

  auto atoms = f.atoms();
  std::vector<std::int64_t> pos(atoms.size());
  std::vector<double> mag(atoms.size());
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    pos[i] = atoms[i].first;
    mag[i] = std::abs(atoms[i].second);
  }
  const std::int64_t n = static_cast<std::int64_t>(pos.size());

  const std::int64_t lo = f.first() - r_max;
  const std::int64_t hi = f.last() + r_max;
  out.offset = lo;
  out.values.assign(static_cast<std::size_t>(hi - lo + 1), 0.0);

  // For fixed x, the average over [x-r, x+r] is maximized at a radius where
  // an atom enters the window, so only |pos - x| values need inspection.
  std::int64_t right0 = 0;  // first atom with pos >= lo
  for (std::int64_t x = lo; x <= hi; ++x) {
    while (right0 < n && pos[static_cast<std::size_t>(right0)] < x) ++right0;
    std::int64_t left = right0 - 1;   // last atom strictly below x
    std::int64_t right = right0;      // first atom at or above x
    double mass = 0.0;
    double best = 0.0;
    while (true) {
      const std::int64_t dl = left >= 0 ? x - pos[static_cast<std::size_t>(left)]
                                        : std::numeric_limits<std::int64_t>::max();
      const std::int64_t dr = right < n ? pos[static_cast<std::size_t>(right)] - x
                                        : std::numeric_limits<std::int64_t>::max();
      const std::int64_t r = std::min(dl, dr);
      if (r > r_max || (left < 0 && right >= n)) break;
      while (left >= 0 && x - pos[static_cast<std::size_t>(left)] <= r) {
        mass += mag[static_cast<std::size_t>(left)];
        --left;
      }
      while (right < n && pos[static_cast<std::size_t>(right)] - x <= r) {
        mass += mag[static_cast<std::size_t>(right)];
        ++right;
      }
      double avg = mass / static_cast<double>(2 * r + 1);
      if (avg > best) best = avg;
    }
    out.values[static_cast<std::size_t>(x - lo)] = best;
  }
  out.trim();
  return out;
}

WeakTypeReport weak_type_report(const IntSignal& maxfn, double mass,
                                std::span<const double> alphas, std::uint64_t digest) {
  if (mass <= 0.0) throw std::invalid_argument("weak_type_report: mass must be positive");
  for (double v : maxfn.values)
    if (v < 0.0) throw std::invalid_argument("weak_type_report: maximal function must be nonnegative");

  std::vector<double> sorted = maxfn.values;
  std::sort(sorted.begin(), sorted.end());  // ascending

  WeakTypeReport r;
  r.input_digest = digest;
  r.alphas.assign(alphas.begin(), alphas.end());
  std::sort(r.alphas.begin(), r.alphas.end(), std::greater<>());
  for (double alpha : r.alphas) {
    // |{x : maxfn(x) > alpha}|; zeros outside the stored window never count
    auto it = std::upper_bound(sorted.begin(), sorted.end(), alpha);
    std::int64_t count = static_cast<std::int64_t>(sorted.end() - it);
    r.counts.push_back(count);
    double ratio = alpha * static_cast<double>(count) / mass;
    r.ratios.push_back(ratio);
    if (ratio > r.worst_ratio) r.worst_ratio = ratio;
  }
  return r;
}

std::vector<double> log_alpha_grid(double top, int decades, int per_decade) {
  if (top <= 0.0) throw std::invalid_argument("log_alpha_grid: top must be positive");
  std::vector<double> g;
  g.reserve(static_cast<std::size_t>(decades) * static_cast<std::size_t>(per_decade));
  for (int i = 0; i < decades * per_decade; ++i)
    g.push_back(top * std::pow(10.0, -static_cast<double>(i + 1) / per_decade));
  return g;
}

std::uint64_t signal_digest(const IntSignal& f, std::span<const std::int64_t> sequence) {
  std::uint64_t h = 1469598103934665603ULL;  // FNV-1a
  auto feed = [&h](std::uint64_t word) {
    for (int b = 0; b < 8; ++b) {
      h ^= (word >> (8 * b)) & 0xff;
      h *= 1099511628211ULL;
    }
  };
  for (const auto& [pos, val] : f.atoms()) {
    feed(static_cast<std::uint64_t>(pos));
    std::uint64_t bits;
    std::memcpy(&bits, &val, sizeof bits);
    feed(bits);
  }
  for (std::int64_t n : sequence) feed(static_cast<std::uint64_t>(n));
  return h;
}

std::vector<WeakTypeReport> adversary_suite(const SparseSequence& seq, ProbeFamily family,
                                            int trials, std::uint64_t seed,
                                            const ProbeConfig& cfg) {
  if (trials < 1) throw std::invalid_argument("adversary_suite: trials must be positive");
  const std::size_t len = seq.merged.size();
  std::vector<std::int64_t> opseq;
  if (family == ProbeFamily::SquaresBaseline) {
    opseq.reserve(len);
    for (std::size_t nu = 1; nu <= len; ++nu)
      opseq.push_back(static_cast<std::int64_t>(nu) * static_cast<std::int64_t>(nu));
  } else {
    opseq = seq.merged;
  }
  const std::size_t n_max = cfg.n_max == 0 ? opseq.size() : std::min(cfg.n_max, opseq.size());

  std::vector<WeakTypeReport> reports;
  reports.reserve(static_cast<std::size_t>(trials));
  for (int t = 0; t < trials; ++t) {
    CounterRng rng(seed, static_cast<std::uint64_t>(t));
    std::vector<std::pair<std::int64_t, double>> atoms;
    switch (family) {
      case ProbeFamily::Deltas:
      case ProbeFamily::SquaresBaseline:
        for (int i = 0; i < cfg.atoms; ++i)
          atoms.emplace_back(rng.next_range(0, cfg.window - 1), 1.0);
        break;
      case ProbeFamily::Comb: {
        const std::int64_t stride = cfg.comb_stride + t;
        for (int i = 0; i < cfg.atoms; ++i) atoms.emplace_back(stride * i, 1.0);
        break;
      }
      case ProbeFamily::DifferenceComb:
        for (int i = 0; i < cfg.atoms; ++i) {
          std::int64_t a = rng.next_range(0, static_cast<std::int64_t>(len) - 1);
          std::int64_t b = rng.next_range(0, static_cast<std::int64_t>(len) - 1);
          if (a == b) b = (b + 1) % static_cast<std::int64_t>(len);
          std::int64_t diff = seq.merged[static_cast<std::size_t>(a)] -
                              seq.merged[static_cast<std::size_t>(b)];
          atoms.emplace_back(diff < 0 ? -diff : diff, 1.0);
        }
        break;
    }
    IntSignal f = IntSignal::from_atoms(atoms);
    IntSignal mf = maximal_function(f, opseq, n_max);
    double top = mf.sup_abs();
    std::vector<double> alphas =
        log_alpha_grid(top > 0 ? top : 1.0, cfg.alpha_decades, cfg.alpha_per_decade);
    reports.push_back(
        weak_type_report(mf, f.norm_l1(), alphas, signal_digest(f, opseq)));
  }
  return reports;
}

}  // namespace maxavg
