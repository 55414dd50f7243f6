#pragma once

#include <boost/rational.hpp>

namespace maxavg {

// Exact rational arithmetic for cutoff values and measure atoms.
// Denominators stay within 64 bits for every parameter range this
// project accepts (p <= 250, dimension <= 4); see construction.cpp.
using Rat = boost::rational<long long>;

inline double to_double(const Rat& r) {
  return static_cast<double>(r.numerator()) / static_cast<double>(r.denominator());
}

}  // namespace maxavg
