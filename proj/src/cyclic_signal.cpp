#include "maxavg/cyclic_signal.hpp"

#include <cmath>
#include <stdexcept>

namespace maxavg {

std::int64_t cyclic_volume(std::int64_t q, int m) {
  if (q < 1 || m < 1) throw std::invalid_argument("cyclic_volume: q and m must be positive");
  std::int64_t total = 1;
  for (int i = 0; i < m; ++i) {
    if (total > CyclicSignal::kMaxValues / q)
      throw std::length_error("cyclic signal: q^m exceeds the 2^27 capacity guard");
    total *= q;
  }
  return total;
}

CyclicSignal::CyclicSignal(std::int64_t q_, int m_, std::int64_t origin)
    : q(q_), m(m_), index_origin(origin), values(static_cast<std::size_t>(cyclic_volume(q_, m_))) {}

std::int64_t CyclicSignal::flat_index(std::span<const std::int64_t> coords) const {
  std::int64_t flat = 0;
  for (int ax = 0; ax < m; ++ax) {
    std::int64_t i = (coords[static_cast<std::size_t>(ax)] - index_origin) % q;
    if (i < 0) i += q;
    flat = flat * q + i;
  }
  return flat;
}

cplx CyclicSignal::mass() const {
  cplx s = 0;
  for (const cplx& v : values) s += v;
  return s;
}

double CyclicSignal::norm_l2() const {
  double s = 0;
  for (const cplx& v : values) s += std::norm(v);
  return std::sqrt(s);
}

}  // namespace maxavg
