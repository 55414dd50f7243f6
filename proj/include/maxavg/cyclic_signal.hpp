#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

namespace maxavg {

using cplx = std::complex<double>;

// Dense complex function on Z_q^m, stored row-major over m axes.
// Axis coordinate c lives at storage index (c - index_origin) mod q, so
// Z_q may be labeled [0, q-1] (origin 0) or [-p, 2p-1] (origin -p, q = 3p).
struct CyclicSignal {
  std::int64_t q = 1;
  int m = 1;
  std::int64_t index_origin = 0;
  std::vector<cplx> values;

  static constexpr std::int64_t kMaxValues = std::int64_t{1} << 27;

  CyclicSignal() = default;
  CyclicSignal(std::int64_t q_, int m_, std::int64_t origin = 0);

  std::int64_t size() const { return static_cast<std::int64_t>(values.size()); }

  // Flat index of a multi-index of true coordinates (reduced mod q per axis).
  std::int64_t flat_index(std::span<const std::int64_t> coords) const;

  cplx& at(std::span<const std::int64_t> coords) { return values[flat_index(coords)]; }
  const cplx& at(std::span<const std::int64_t> coords) const {
    return values[flat_index(coords)];
  }

  cplx mass() const;
  double norm_l2() const;
};

// q^m with the capacity guard (throws std::length_error past 2^27 values).
std::int64_t cyclic_volume(std::int64_t q, int m);

// Iterate all multi-indices of [origin, origin+q-1]^m in storage order.
// fn(flat, coords) with coords a span of true coordinates.
template <typename Fn>
void for_each_coord(std::int64_t q, int m, std::int64_t origin, Fn&& fn) {
  std::vector<std::int64_t> c(static_cast<std::size_t>(m), origin);
  std::int64_t total = 1;
  for (int i = 0; i < m; ++i) total *= q;
  for (std::int64_t flat = 0; flat < total; ++flat) {
    fn(flat, std::span<const std::int64_t>(c));
    for (int ax = m - 1; ax >= 0; --ax) {
      if (++c[ax] < origin + q) break;
      c[ax] = origin;
    }
  }
}

}  // namespace maxavg
