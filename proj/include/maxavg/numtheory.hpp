#pragma once

#include <cstdint>
#include <vector>

#include "maxavg/rational.hpp"

namespace maxavg {

// Deterministic Miller-Rabin, valid for the full 64-bit range.
bool is_prime(std::uint64_t n);

// Smallest prime >= n. Throws std::overflow_error past 2^62.
std::uint64_t next_prime(std::uint64_t n);

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m);
std::uint64_t powmod(std::uint64_t base, std::uint64_t exp, std::uint64_t m);

// [j^r]_p: the unique element of {0,...,p-1} congruent to j^r mod p.
// j may be negative; r = 0 yields 1. p must be an odd prime.
std::int64_t mod_residue_power(std::int64_t j, unsigned r, std::uint64_t p);

// base^exp with overflow detection (throws std::overflow_error).
std::int64_t checked_ipow(std::int64_t base, int exp);

// Lacunary prime schedule: p_{k+1} >= (1+delta) p_k and p_{k+1} <= cap p_k.
struct PrimeSchedule {
  std::vector<std::uint64_t> primes;
  Rat delta{0};
  Rat cap{0};
};

// Offsets a_k with a_{k+1} > a_k + p_k^m and a_k <= mass_cap p_k^m.
// For mixed-exponent sequences per_block overrides `exponent` blockwise.
struct OffsetSchedule {
  std::vector<std::int64_t> offsets;
  int exponent = 2;
  std::vector<int> per_block;  // empty = uniform exponent
  Rat mass_cap{0};

  int exponent_at(std::size_t k) const {
    return per_block.empty() ? exponent : per_block.at(k);
  }
};

// p_{k+1} = smallest prime >= ratio p_k, starting at p0.
// Certifies delta = ratio - 1 and cap = 2 ratio (Bertrand margin).
PrimeSchedule build_prime_schedule(std::uint64_t p0, std::size_t count, const Rat& ratio);

// a_1 = p_1^m, a_{k+1} = a_k + p_k^m + 1 (the "+1" keeps the gap strict).
OffsetSchedule build_offset_schedule(const PrimeSchedule& schedule, int m);
OffsetSchedule build_offset_schedule(const PrimeSchedule& schedule,
                                     const std::vector<int>& exponents);

// Re-check the stored certificates; throws std::invalid_argument on failure.
// exponent_in_force: every prime must exceed the construction exponent.
void validate(const PrimeSchedule& s, int exponent_in_force);
void validate(const OffsetSchedule& o, const PrimeSchedule& s);

}  // namespace maxavg
