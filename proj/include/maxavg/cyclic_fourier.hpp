#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "maxavg/cyclic_signal.hpp"

namespace maxavg {

// f_hat(xi) = sum_k f(k) e^{-2 pi i k.xi / q}. Direct summation, one axis at
// a time; each phase is an exact integer (k xi mod q) before any trig call.
CyclicSignal dft(const CyclicSignal& f);

// Inverse: f(k) = q^{-m} sum_xi f_hat(xi) e^{+2 pi i k.xi / q}.
CyclicSignal idft(const CyclicSignal& f);

// Cyclic convolution f*g(x) = sum_y f(x-y) g(y); O(q^{2m}) direct sum.
CyclicSignal convolve(const CyclicSignal& f, const CyclicSignal& g);

// Table of e^{sign 2 pi i u / q} for u in [0, q).
std::vector<cplx> unit_root_table(std::int64_t q, int sign);

// sigma_hat_{p,m}(xi) = p^{-1} sum_{k=0}^{p-1} e^{-2 pi i (k xi_1 + ... + k^m xi_m)/p}.
// Requires p > m (throws std::domain_error otherwise).
cplx weil_value(std::uint64_t p, int m, std::span<const std::int64_t> xi);

// max over nonzero xi of |sigma_hat_{p,m}(xi)|; parallel sweep over the dual group.
double weil_sup(std::uint64_t p, int m, int workers = 0);

// sum_{n=0}^{p-1} e^{-2 pi i (a n + b n^2)/p}.
cplx gauss_sum(std::uint64_t p, std::int64_t a, std::int64_t b);

// p^{-d} sum_{n in [0,p-1]^d} e^{-2 pi i (n.xi' + |n|^2 xi_{d+1})/p},
// factored as a product of d Gauss sums. xi has d+1 entries.
cplx paraboloid_value(std::uint64_t p, int d, std::span<const std::int64_t> xi);

// max over nonzero xi in Z_p^{d+1} of |paraboloid_value|.
double paraboloid_sup(std::uint64_t p, int d);

}  // namespace maxavg
