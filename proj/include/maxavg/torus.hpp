#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "maxavg/cyclic_signal.hpp"
#include "maxavg/int_signal.hpp"

namespace maxavg {

struct TorusScan {
  std::int64_t grid_size = 0;
  bool refined = false;
  double sup_value = 0.0;
  double argmax_theta = 0.0;
  std::vector<std::pair<double, double>> samples;  // downsampled (theta, |value|)
};

// f_hat(theta) = sum_n f(n) e^{-2 pi i n theta}; n theta reduced mod 1 in
// long double before the trig call.
cplx torus_eval(const IntSignal& f, double theta);

// Lower estimate of sup_theta |f_hat|: FFT scan of oversample*(diameter+1)
// equispaced points, then golden-section refinement around the top values.
TorusScan grid_sup(const IntSignal& f, int oversample = 32, bool refine = true);

// Max over thetas of |torus_eval(rho_dagger, theta) -
// rho_ddagger_hat(theta, p theta, ..., p^{m-1} theta)|; the two sides are
// the pushforward identity evaluated by independent summation routes.
double transference_deviation(const CyclicSignal& rho_ddagger, const IntSignal& rho_dagger,
                              std::uint64_t p, int m, std::span<const double> thetas);

struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
};

// Least-squares fit of log(sup) against log(p) over (p, sup) points.
LineFit decay_fit(std::span<const std::pair<double, double>> points);

struct SharpnessResult {
  double lhs = 0.0;  // ||sigma||_1
  double rhs = 0.0;  // 2 sqrt(p) sup_{xi != 0} |sigma_hat(xi)|^{1/2}
  bool pass = false;
};

// The l1-vs-Fourier-decay constraint for measures with support size <= p.
SharpnessResult sharpness_check(const CyclicSignal& sigma, std::uint64_t p);

}  // namespace maxavg
