#include "maxavg/int_signal.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace maxavg {

void IntSignal::trim() {
  std::size_t b = 0, e = values.size();
  while (b < e && values[b] == 0.0) ++b;
  while (e > b && values[e - 1] == 0.0) --e;
  if (b == 0 && e == values.size()) return;
  values = std::vector<double>(values.begin() + static_cast<std::ptrdiff_t>(b),
                               values.begin() + static_cast<std::ptrdiff_t>(e));
  offset += static_cast<std::int64_t>(b);
  if (values.empty()) offset = 0;
}

double IntSignal::mass() const {
  double s = 0;
  for (double v : values) s += v;
  return s;
}

double IntSignal::norm_l1() const {
  double s = 0;
  for (double v : values) s += std::abs(v);
  return s;
}

double IntSignal::norm_l2_sq() const {
  double s = 0;
  for (double v : values) s += v * v;
  return s;
}

double IntSignal::sup_abs() const {
  double s = 0;
  for (double v : values) s = std::max(s, std::abs(v));
  return s;
}

std::vector<std::pair<std::int64_t, double>> IntSignal::atoms() const {
  std::vector<std::pair<std::int64_t, double>> a;
  for (std::size_t i = 0; i < values.size(); ++i)
    if (values[i] != 0.0) a.emplace_back(offset + static_cast<std::int64_t>(i), values[i]);
  return a;
}

IntSignal IntSignal::from_atoms(const std::vector<std::pair<std::int64_t, double>>& atoms) {
  IntSignal f;
  if (atoms.empty()) return f;
  std::int64_t lo = atoms.front().first, hi = atoms.front().first;
  for (const auto& [pos, val] : atoms) {
    (void)val;
    lo = std::min(lo, pos);
    hi = std::max(hi, pos);
  }
  f.offset = lo;
  f.values.assign(static_cast<std::size_t>(hi - lo + 1), 0.0);
  for (const auto& [pos, val] : atoms) f.values[static_cast<std::size_t>(pos - lo)] += val;
  f.trim();
  return f;
}

IntSignal translate(const IntSignal& f, std::int64_t shift) {
  IntSignal g = f;
  if (!g.empty()) g.offset += shift;
  return g;
}

namespace {

IntSignal combine(const IntSignal& f, const IntSignal& g, double gsign) {
  if (f.empty()) return gsign == 1.0 ? g : scale(g, gsign);
  if (g.empty()) return f;
  std::int64_t lo = std::min(f.first(), g.first());
  std::int64_t hi = std::max(f.last(), g.last());
  IntSignal h;
  h.offset = lo;
  h.values.assign(static_cast<std::size_t>(hi - lo + 1), 0.0);
  for (std::size_t i = 0; i < f.values.size(); ++i)
    h.values[static_cast<std::size_t>(f.offset - lo) + i] += f.values[i];
  for (std::size_t i = 0; i < g.values.size(); ++i)
    h.values[static_cast<std::size_t>(g.offset - lo) + i] += gsign * g.values[i];
  h.trim();
  return h;
}

}  // namespace

IntSignal add(const IntSignal& f, const IntSignal& g) { return combine(f, g, 1.0); }

IntSignal subtract(const IntSignal& f, const IntSignal& g) { return combine(f, g, -1.0); }

IntSignal abs_signal(const IntSignal& f) {
  IntSignal g = f;
  for (double& v : g.values) v = std::abs(v);
  return g;
}

IntSignal scale(const IntSignal& f, double c) {
  IntSignal g = f;
  for (double& v : g.values) v *= c;
  g.trim();
  return g;
}

void RatSignal::trim() {
  std::size_t b = 0, e = values.size();
  while (b < e && values[b] == Rat(0)) ++b;
  while (e > b && values[e - 1] == Rat(0)) --e;
  if (b == 0 && e == values.size()) return;
  values = std::vector<Rat>(values.begin() + static_cast<std::ptrdiff_t>(b),
                            values.begin() + static_cast<std::ptrdiff_t>(e));
  offset += static_cast<std::int64_t>(b);
  if (values.empty()) offset = 0;
}

Rat RatSignal::mass() const {
  Rat s(0);
  for (const Rat& v : values) s += v;
  return s;
}

Rat RatSignal::sup_abs() const {
  Rat s(0);
  for (const Rat& v : values) {
    Rat a = v < Rat(0) ? -v : v;
    if (a > s) s = a;
  }
  return s;
}

IntSignal RatSignal::to_int_signal() const {
  IntSignal f;
  f.offset = offset;
  f.values.reserve(values.size());
  for (const Rat& v : values) f.values.push_back(to_double(v));
  f.trim();
  return f;
}

RatSignal rat_translate(const RatSignal& f, std::int64_t shift) {
  RatSignal g = f;
  if (!g.empty()) g.offset += shift;
  return g;
}

RatSignal rat_subtract(const RatSignal& f, const RatSignal& g) {
  if (f.empty() && g.empty()) return {};
  std::int64_t lo = f.empty() ? g.first() : (g.empty() ? f.first() : std::min(f.first(), g.first()));
  std::int64_t hi = f.empty() ? g.last() : (g.empty() ? f.last() : std::max(f.last(), g.last()));
  RatSignal h;
  h.offset = lo;
  h.values.assign(static_cast<std::size_t>(hi - lo + 1), Rat(0));
  for (std::size_t i = 0; i < f.values.size(); ++i)
    h.values[static_cast<std::size_t>(f.offset - lo) + i] += f.values[i];
  for (std::size_t i = 0; i < g.values.size(); ++i)
    h.values[static_cast<std::size_t>(g.offset - lo) + i] -= g.values[i];
  h.trim();
  return h;
}

}  // namespace maxavg
