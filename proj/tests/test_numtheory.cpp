#include <doctest.h>

#include <stdexcept>

#include "maxavg/numtheory.hpp"
#include "maxavg/rng.hpp"
#include "oracles.hpp"

using namespace maxavg;

TEST_CASE("mod_residue_power matches hand values") {
  CHECK(mod_residue_power(2, 2, 3) == 1);   // 4 mod 3
  CHECK(mod_residue_power(4, 2, 5) == 1);   // 16 mod 5
  CHECK(mod_residue_power(2, 3, 3) == 2);   // 8 mod 3
  CHECK(mod_residue_power(7, 0, 5) == 1);   // j^0 = 1
  CHECK(mod_residue_power(0, 0, 5) == 1);
  CHECK(mod_residue_power(-1, 2, 7) == 1);  // (-1)^2 = 1
  CHECK_THROWS_AS(mod_residue_power(2, 2, 4), std::invalid_argument);
  CHECK_THROWS_AS(mod_residue_power(2, 2, 9), std::invalid_argument);
}

TEST_CASE("mod_residue_power is p-periodic in j") {
  CounterRng rng(0x5eed, 0);
  for (int t = 0; t < 200; ++t) {
    std::int64_t j = rng.next_range(-1000000, 1000000);
    unsigned r = static_cast<unsigned>(rng.next_range(0, 8));
    std::uint64_t p = 13;
    CHECK(mod_residue_power(j, r, p) == mod_residue_power(j % static_cast<std::int64_t>(p), r, p));
  }
}

TEST_CASE("deterministic primality agrees with trial division up to 10^6") {
  for (std::uint64_t n = 0; n <= 1000000; ++n) {
    if (is_prime(n) != oracles::trial_division_prime(n)) {
      CAPTURE(n);
      CHECK(is_prime(n) == oracles::trial_division_prime(n));
    }
  }
  CHECK(is_prime(2));
  CHECK_FALSE(is_prime(1));
  // a few larger known cases
  CHECK(is_prime(2147483647ULL));           // 2^31 - 1
  CHECK_FALSE(is_prime(2147483647ULL * 3));
  CHECK(is_prime(67280421310721ULL));       // factor of 2^128 + 1
}

TEST_CASE("build_prime_schedule follows the next-prime recurrence") {
  PrimeSchedule s = build_prime_schedule(5, 6, Rat(2));
  CHECK(s.primes == std::vector<std::uint64_t>{5, 11, 23, 47, 97, 197});
  CHECK(s.delta == Rat(1));
  CHECK(s.cap == Rat(4));
  CHECK_NOTHROW(validate(s, 2));

  // independent oracle: trial-division next-prime
  for (std::size_t k = 0; k + 1 < s.primes.size(); ++k)
    CHECK(s.primes[k + 1] == oracles::trial_division_next_prime(2 * s.primes[k]));

  CHECK(build_prime_schedule(5, 1, Rat(2)).primes == std::vector<std::uint64_t>{5});
  CHECK(build_prime_schedule(7, 2, Rat(3)).primes == std::vector<std::uint64_t>{7, 23});
}

TEST_CASE("build_prime_schedule rejects bad input and overflow") {
  CHECK_THROWS_AS(build_prime_schedule(4, 3, Rat(2)), std::invalid_argument);
  CHECK_THROWS_AS(build_prime_schedule(5, 3, Rat(3, 2)), std::invalid_argument);
  CHECK_THROWS_AS(build_prime_schedule(5, 0, Rat(2)), std::invalid_argument);
  CHECK_THROWS_AS(build_prime_schedule(5, 40, Rat(4)), std::overflow_error);
}

TEST_CASE("build_offset_schedule evaluates the recurrence") {
  PrimeSchedule s = build_prime_schedule(5, 6, Rat(2));
  OffsetSchedule o = build_offset_schedule(s, 2);
  CHECK(o.offsets == std::vector<std::int64_t>{25, 51, 173, 703, 2913, 12323});
  CHECK(o.mass_cap <= Rat(3));  // ratio-2 schedules stay under 3
  CHECK_NOTHROW(validate(o, s));

  PrimeSchedule single = build_prime_schedule(5, 1, Rat(2));
  CHECK(build_offset_schedule(single, 2).offsets == std::vector<std::int64_t>{25});

  PrimeSchedule two = build_prime_schedule(5, 2, Rat(2));
  OffsetSchedule cubes = build_offset_schedule(two, 3);
  CHECK(cubes.offsets == std::vector<std::int64_t>{125, 251});
}

TEST_CASE("schedule invariants re-validate exactly") {
  PrimeSchedule s = build_prime_schedule(5, 5, Rat(2));
  OffsetSchedule o = build_offset_schedule(s, 2);
  SUBCASE("tampered prime breaks lacunarity") {
    s.primes[2] = s.primes[1];  // not strictly increasing
    CHECK_THROWS_AS(validate(s, 2), std::invalid_argument);
  }
  SUBCASE("tampered offset breaks the gap condition") {
    o.offsets[1] = o.offsets[0] + 1;
    CHECK_THROWS_AS(validate(o, s), std::invalid_argument);
  }
  SUBCASE("prime must exceed the exponent in force") {
    PrimeSchedule tiny;
    tiny.primes = {3, 7};
    tiny.delta = Rat(1);
    tiny.cap = Rat(4);
    CHECK_THROWS_AS(validate(tiny, 3), std::invalid_argument);
  }
}

TEST_CASE("checked_ipow guards 64-bit overflow") {
  CHECK(checked_ipow(197, 2) == 38809);
  CHECK(checked_ipow(2, 62) == (std::int64_t{1} << 62));
  CHECK_THROWS_AS(checked_ipow(10, 19), std::overflow_error);
}
