#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "maxavg/rational.hpp"

namespace maxavg {

// Finitely supported real function on the integers. Dense window storage;
// canonical form has nonzero first and last entries (zero signal = empty).
struct IntSignal {
  std::int64_t offset = 0;  // position of values[0]
  std::vector<double> values;

  bool empty() const { return values.empty(); }
  std::int64_t first() const { return offset; }
  std::int64_t last() const { return offset + static_cast<std::int64_t>(values.size()) - 1; }

  double at(std::int64_t pos) const {
    std::int64_t i = pos - offset;
    if (i < 0 || i >= static_cast<std::int64_t>(values.size())) return 0.0;
    return values[static_cast<std::size_t>(i)];
  }

  // Drop leading/trailing zeros (restores the canonical form).
  void trim();

  double mass() const;     // sum of values
  double norm_l1() const;  // sum of |values|
  double norm_l2_sq() const;
  double sup_abs() const;

  // Sparse view: (position, value) for each nonzero entry.
  std::vector<std::pair<std::int64_t, double>> atoms() const;
  static IntSignal from_atoms(const std::vector<std::pair<std::int64_t, double>>& atoms);
};

IntSignal translate(const IntSignal& f, std::int64_t shift);
IntSignal add(const IntSignal& f, const IntSignal& g);
IntSignal subtract(const IntSignal& f, const IntSignal& g);
IntSignal abs_signal(const IntSignal& f);
IntSignal scale(const IntSignal& f, double c);

// Exact-rational twin of IntSignal, used along the transference pipeline
// so that lower bounds on measure atoms can be compared exactly.
struct RatSignal {
  std::int64_t offset = 0;
  std::vector<Rat> values;

  bool empty() const { return values.empty(); }
  std::int64_t first() const { return offset; }
  std::int64_t last() const { return offset + static_cast<std::int64_t>(values.size()) - 1; }

  Rat at(std::int64_t pos) const {
    std::int64_t i = pos - offset;
    if (i < 0 || i >= static_cast<std::int64_t>(values.size())) return Rat(0);
    return values[static_cast<std::size_t>(i)];
  }

  void trim();
  Rat mass() const;
  Rat sup_abs() const;

  // Conversion is entrywise and monotone, so exact inequalities between
  // rationals survive as double inequalities.
  IntSignal to_int_signal() const;
};

RatSignal rat_translate(const RatSignal& f, std::int64_t shift);
RatSignal rat_subtract(const RatSignal& f, const RatSignal& g);

}  // namespace maxavg
