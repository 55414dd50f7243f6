#include "maxavg/torus.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "maxavg/cyclic_fourier.hpp"

namespace maxavg {

namespace {

long double frac1(long double x) { return x - std::floor(x); }

}  // namespace

cplx torus_eval(const IntSignal& f, double theta) {
  const long double th = theta;
  long double re = 0, im = 0;
  for (std::size_t i = 0; i < f.values.size(); ++i) {
    double v = f.values[i];
    if (v == 0.0) continue;
    const std::int64_t n = f.offset + static_cast<std::int64_t>(i);
    long double ph = frac1(static_cast<long double>(n) * th);
    long double angle = -2.0L * std::numbers::pi_v<long double> * ph;
    re += v * std::cos(angle);
    im += v * std::sin(angle);
  }
  return {static_cast<double>(re), static_cast<double>(im)};
}

namespace {

// Maximize |f_hat| by golden-section search on [lo, hi].
std::pair<double, double> golden_refine(const IntSignal& f, double lo, double hi) {
  const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo, b = hi;
  double x1 = b - gr * (b - a), x2 = a + gr * (b - a);
  double f1 = std::abs(torus_eval(f, x1)), f2 = std::abs(torus_eval(f, x2));
  for (int it = 0; it < 48 && b - a > 1e-15; ++it) {
    if (f1 < f2) {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + gr * (b - a);
      f2 = std::abs(torus_eval(f, x2));
    } else {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - gr * (b - a);
      f1 = std::abs(torus_eval(f, x1));
    }
  }
  double mid = 0.5 * (a + b);
  return {mid, std::abs(torus_eval(f, mid))};
}

}  // namespace

TorusScan grid_sup(const IntSignal& f, int oversample, bool refine) {
  if (oversample < 8) throw std::invalid_argument("grid_sup: oversample must be >= 8");
  TorusScan scan;
  if (f.empty()) return scan;

  const std::int64_t diameter = f.last() - f.first();
  const std::int64_t grid = static_cast<std::int64_t>(oversample) * (diameter + 1);
  scan.grid_size = grid;

  // f_hat(t/G) is the length-G DFT of f folded into Z_G; f is real, so
  // magnitudes on [1/2, 1) mirror [0, 1/2] and the half spectrum suffices.
  std::vector<double> in(static_cast<std::size_t>(grid), 0.0);
  for (std::size_t i = 0; i < f.values.size(); ++i) {
    std::int64_t pos = (f.offset + static_cast<std::int64_t>(i)) % grid;
    if (pos < 0) pos += grid;
    in[static_cast<std::size_t>(pos)] += f.values[i];
  }
  const std::size_t half = static_cast<std::size_t>(grid / 2) + 1;
  std::vector<cplx> out(half);
  fftw_plan plan = fftw_plan_dft_r2c_1d(static_cast<int>(grid), in.data(),
                                        reinterpret_cast<fftw_complex*>(out.data()),
                                        FFTW_ESTIMATE);
  fftw_execute(plan);
  fftw_destroy_plan(plan);

  std::vector<double> mags(half);
  for (std::size_t t = 0; t < half; ++t) mags[t] = std::abs(out[t]);

  double best = 0.0;
  std::size_t best_t = 0;
  for (std::size_t t = 0; t < half; ++t) {
    if (mags[t] > best) {
      best = mags[t];
      best_t = t;
    }
  }
  scan.sup_value = best;
  scan.argmax_theta = static_cast<double>(best_t) / static_cast<double>(grid);

  const std::size_t stride = std::max<std::size_t>(1, half / 256);
  for (std::size_t t = 0; t < half; t += stride)
    scan.samples.emplace_back(static_cast<double>(t) / static_cast<double>(grid), mags[t]);

  if (refine) {
    // golden-section around the ten largest well-separated grid values
    std::vector<std::size_t> order(half);
    for (std::size_t t = 0; t < half; ++t) order[t] = t;
    std::partial_sort(order.begin(), order.begin() + std::min<std::size_t>(half, 256), order.end(),
                      [&](std::size_t a, std::size_t b) { return mags[a] > mags[b]; });
    std::vector<std::size_t> picked;
    for (std::size_t idx : order) {
      bool close = false;
      for (std::size_t q : picked)
        if (std::llabs(static_cast<long long>(idx) - static_cast<long long>(q)) <= 2) close = true;
      if (close) continue;
      picked.push_back(idx);
      if (picked.size() == 10) break;
    }
    for (std::size_t t : picked) {
      double center = static_cast<double>(t) / static_cast<double>(grid);
      double w = 1.0 / static_cast<double>(grid);
      auto [theta, value] = golden_refine(f, center - w, center + w);
      if (value > scan.sup_value) {
        scan.sup_value = value;
        scan.argmax_theta = theta - std::floor(theta);
      }
    }
    scan.refined = true;
  }
  return scan;
}

double transference_deviation(const CyclicSignal& rho_ddagger, const IntSignal& rho_dagger,
                              std::uint64_t p, int m, std::span<const double> thetas) {
  const std::int64_t ip = static_cast<std::int64_t>(p);
  if (rho_ddagger.q != 3 * ip || rho_ddagger.m != m || rho_ddagger.index_origin != -ip)
    throw std::invalid_argument("transference_deviation: signal not built from this (p, m)");

  double worst = 0.0;
  std::vector<long double> freq(static_cast<std::size_t>(m));
  for (double theta : thetas) {
    // frequencies (theta, p theta, ..., p^{m-1} theta) reduced mod 1 per axis
    freq[0] = frac1(static_cast<long double>(theta));
    for (int j = 1; j < m; ++j) freq[static_cast<std::size_t>(j)] = frac1(freq[static_cast<std::size_t>(j - 1)] * static_cast<long double>(ip));

    long double re = 0, im = 0;
    for_each_coord(rho_ddagger.q, m, -ip, [&](std::int64_t flat, std::span<const std::int64_t> k) {
      const cplx v = rho_ddagger.values[static_cast<std::size_t>(flat)];
      if (v == cplx(0.0, 0.0)) return;
      long double ph = 0;
      for (int ax = 0; ax < m; ++ax)
        ph += frac1(static_cast<long double>(k[static_cast<std::size_t>(ax)]) * freq[static_cast<std::size_t>(ax)]);
      long double angle = -2.0L * std::numbers::pi_v<long double> * frac1(ph);
      re += v.real() * std::cos(angle);
      im += v.real() * std::sin(angle);
    });
    cplx rhs(static_cast<double>(re), static_cast<double>(im));
    cplx lhs = torus_eval(rho_dagger, theta);
    worst = std::max(worst, std::abs(lhs - rhs));
  }
  return worst;
}

LineFit decay_fit(std::span<const std::pair<double, double>> points) {
  if (points.size() < 3) throw std::invalid_argument("decay_fit: need at least 3 points");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double n = static_cast<double>(points.size());
  for (const auto& [p, sup] : points) {
    if (p <= 0 || sup <= 0) throw std::invalid_argument("decay_fit: points must be positive");
    double x = std::log(p), y = std::log(sup);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  double denom = n * sxx - sx * sx;
  if (denom == 0.0) throw std::invalid_argument("decay_fit: degenerate abscissae");
  LineFit fit;
  fit.slope = (n * sxy - sx * sy) / denom;
  fit.intercept = (sy - fit.slope * sx) / n;
  return fit;
}

SharpnessResult sharpness_check(const CyclicSignal& sigma, std::uint64_t p) {
  std::int64_t support = 0;
  double l1 = 0;
  for (const cplx& v : sigma.values) {
    if (v != cplx(0.0, 0.0)) ++support;
    l1 += std::abs(v);
  }
  if (support > static_cast<std::int64_t>(p))
    throw std::invalid_argument("sharpness_check: support larger than p");

  CyclicSignal hat = dft(sigma);
  std::vector<std::int64_t> zero(static_cast<std::size_t>(sigma.m), 0);
  const std::int64_t zero_flat = hat.flat_index(zero);
  double sup = 0;
  for (std::int64_t i = 0; i < hat.size(); ++i) {
    if (i == zero_flat) continue;
    sup = std::max(sup, std::abs(hat.values[static_cast<std::size_t>(i)]));
  }

  SharpnessResult r;
  r.lhs = l1;
  r.rhs = 2.0 * std::sqrt(static_cast<double>(p)) * std::sqrt(sup);
  r.pass = r.lhs <= r.rhs + 1e-9;
  return r;
}

}  // namespace maxavg
