#include "maxavg/numtheory.hpp"

#include <limits>
#include <stdexcept>

namespace maxavg {

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % m);
}

std::uint64_t powmod(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
  if (m == 1) return 0;
  std::uint64_t r = 1;
  base %= m;
  while (exp) {
    if (exp & 1) r = mulmod(r, base, m);
    base = mulmod(base, base, m);
    exp >>= 1;
  }
  return r;
}

namespace {

bool miller_rabin_witness(std::uint64_t n, std::uint64_t a, std::uint64_t d, int s) {
  std::uint64_t x = powmod(a % n, d, n);
  if (x == 1 || x == n - 1) return true;
  for (int i = 1; i < s; ++i) {
    x = mulmod(x, x, n);
    if (x == n - 1) return true;
  }
  return false;
}

}  // namespace

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t p : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    if (n % p == 0) return n == p;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  // Witness set covering all 64-bit integers (Sorenson & Webster).
  for (std::uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    if (!miller_rabin_witness(n, a, d, s)) return false;
  }
  return true;
}

std::uint64_t next_prime(std::uint64_t n) {
  if (n <= 2) return 2;
  if (n > (std::uint64_t{1} << 62)) throw std::overflow_error("next_prime: past 2^62");
  std::uint64_t c = n | 1;  // first odd >= n
  while (!is_prime(c)) c += 2;
  return c;
}

std::int64_t mod_residue_power(std::int64_t j, unsigned r, std::uint64_t p) {
  if (p < 3 || !is_prime(p)) throw std::invalid_argument("mod_residue_power: modulus must be an odd prime");
  if (r > 64) throw std::invalid_argument("mod_residue_power: exponent out of range");
  std::int64_t jm = j % static_cast<std::int64_t>(p);
  if (jm < 0) jm += static_cast<std::int64_t>(p);
  return static_cast<std::int64_t>(powmod(static_cast<std::uint64_t>(jm), r, p));
}

std::int64_t checked_ipow(std::int64_t base, int exp) {
  std::int64_t r = 1;
  for (int i = 0; i < exp; ++i) {
    if (base != 0 && std::numeric_limits<std::int64_t>::max() / (base < 0 ? -base : base) < (r < 0 ? -r : r))
      throw std::overflow_error("checked_ipow: 64-bit overflow");
    r *= base;
  }
  return r;
}

namespace {

// lhs >= factor * rhs with exact integer cross-multiplication.
bool ge_scaled(std::uint64_t lhs, const Rat& factor, std::uint64_t rhs) {
  return static_cast<__int128>(lhs) * factor.denominator() >=
         static_cast<__int128>(rhs) * factor.numerator();
}

bool le_scaled(std::uint64_t lhs, const Rat& factor, std::uint64_t rhs) {
  return static_cast<__int128>(lhs) * factor.denominator() <=
         static_cast<__int128>(rhs) * factor.numerator();
}

}  // namespace

PrimeSchedule build_prime_schedule(std::uint64_t p0, std::size_t count, const Rat& ratio) {
  if (count == 0) throw std::invalid_argument("build_prime_schedule: count must be positive");
  if (p0 < 5 || p0 % 2 == 0 || !is_prime(p0))
    throw std::invalid_argument("build_prime_schedule: p0 must be an odd prime >= 5");
  if (ratio < Rat(2)) throw std::invalid_argument("build_prime_schedule: ratio must be >= 2");

  PrimeSchedule s;
  s.delta = ratio - Rat(1);
  s.cap = Rat(2) * ratio;
  s.primes.reserve(count);
  std::uint64_t p = p0;
  s.primes.push_back(p);
  for (std::size_t k = 1; k < count; ++k) {
    // smallest prime >= ratio * p
    __int128 target128 = (static_cast<__int128>(p) * ratio.numerator() + ratio.denominator() - 1) /
                         ratio.denominator();
    if (target128 > (static_cast<__int128>(1) << 62))
      throw std::overflow_error("build_prime_schedule: schedule too long for 64 bits");
    p = next_prime(static_cast<std::uint64_t>(target128));
    s.primes.push_back(p);
  }
  return s;
}

void validate(const PrimeSchedule& s, int exponent_in_force) {
  if (s.primes.empty()) throw std::invalid_argument("prime schedule: empty");
  for (std::uint64_t p : s.primes) {
    if (p % 2 == 0 || !is_prime(p)) throw std::invalid_argument("prime schedule: non-prime or even entry");
    if (p <= static_cast<std::uint64_t>(exponent_in_force))
      throw std::invalid_argument("prime schedule: prime not greater than the exponent in force");
  }
  Rat one_plus_delta = Rat(1) + s.delta;
  for (std::size_t k = 0; k + 1 < s.primes.size(); ++k) {
    if (s.primes[k + 1] <= s.primes[k])
      throw std::invalid_argument("prime schedule: not strictly increasing");
    if (!ge_scaled(s.primes[k + 1], one_plus_delta, s.primes[k]))
      throw std::invalid_argument("prime schedule: lacunarity certificate failed");
    if (!le_scaled(s.primes[k + 1], s.cap, s.primes[k]))
      throw std::invalid_argument("prime schedule: growth cap certificate failed");
  }
}

OffsetSchedule build_offset_schedule(const PrimeSchedule& schedule, int m) {
  return build_offset_schedule(schedule, std::vector<int>(schedule.primes.size(), m));
}

OffsetSchedule build_offset_schedule(const PrimeSchedule& schedule,
                                     const std::vector<int>& exponents) {
  if (schedule.primes.empty()) throw std::invalid_argument("build_offset_schedule: empty schedule");
  if (exponents.size() != schedule.primes.size())
    throw std::invalid_argument("build_offset_schedule: one exponent per block required");
  for (int m : exponents) {
    if (m < 2) throw std::invalid_argument("build_offset_schedule: exponents must be >= 2");
  }

  OffsetSchedule o;
  o.exponent = exponents.front();
  bool uniform = true;
  for (int m : exponents) uniform = uniform && (m == exponents.front());
  if (!uniform) o.per_block = exponents;

  o.offsets.reserve(schedule.primes.size());
  std::int64_t a = checked_ipow(static_cast<std::int64_t>(schedule.primes[0]), exponents[0]);
  o.offsets.push_back(a);
  for (std::size_t k = 1; k < schedule.primes.size(); ++k) {
    std::int64_t pm = checked_ipow(static_cast<std::int64_t>(schedule.primes[k - 1]), exponents[k - 1]);
    if (a > std::numeric_limits<std::int64_t>::max() - pm - 1)
      throw std::overflow_error("build_offset_schedule: schedule too long");
    a = a + pm + 1;
    o.offsets.push_back(a);
  }

  Rat cap(0);
  for (std::size_t k = 0; k < o.offsets.size(); ++k) {
    std::int64_t pm = checked_ipow(static_cast<std::int64_t>(schedule.primes[k]), exponents[k]);
    Rat ratio(o.offsets[k], pm);
    if (ratio > cap) cap = ratio;
  }
  o.mass_cap = cap;
  return o;
}

void validate(const OffsetSchedule& o, const PrimeSchedule& s) {
  if (o.offsets.size() != s.primes.size())
    throw std::invalid_argument("offset schedule: size mismatch with prime schedule");
  for (std::size_t k = 0; k < o.offsets.size(); ++k) {
    if (o.offsets[k] <= 0) throw std::invalid_argument("offset schedule: offsets must be positive");
    std::int64_t pm = checked_ipow(static_cast<std::int64_t>(s.primes[k]), o.exponent_at(k));
    if (Rat(o.offsets[k], pm) > o.mass_cap)
      throw std::invalid_argument("offset schedule: mass cap certificate failed");
    if (k + 1 < o.offsets.size() && o.offsets[k + 1] <= o.offsets[k] + pm)
      throw std::invalid_argument("offset schedule: gap condition failed");
  }
}

}  // namespace maxavg
