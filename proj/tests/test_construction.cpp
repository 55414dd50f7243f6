#include <doctest.h>

#include <cmath>
#include <set>
#include <stdexcept>

#include "maxavg/construction.hpp"
#include "maxavg/cyclic_fourier.hpp"
#include "maxavg/rng.hpp"

using namespace maxavg;

TEST_CASE("power-diagonal sigma triple for p = 3, m = 2") {
  CyclicMeasureTriple t = make_sigma_triple(3, MeasureKind::PowerDiagonal, 2);
  std::vector<std::int64_t> a{0, 0}, b{1, 1}, c{2, 1};
  CHECK(t.sigma.at(a) == cplx(1.0 / 3.0, 0.0));
  CHECK(t.sigma.at(b) == cplx(1.0 / 3.0, 0.0));
  CHECK(t.sigma.at(c) == cplx(1.0 / 3.0, 0.0));
  std::int64_t nonzero = 0;
  for (const auto& v : t.sigma.values)
    if (v != cplx(0.0, 0.0)) ++nonzero;
  CHECK(nonzero == 3);
  for (const auto& v : t.sigma0.values) CHECK(v == cplx(1.0 / 9.0, 0.0));
  CHECK(std::abs(t.sigma_star.mass()) <= 1e-15 * 9.0);
  CHECK(t.sigma_exact.value_at(b) == Rat(1, 3));
  CHECK(t.sigma_star_exact.value_at(b) == Rat(1, 3) - Rat(1, 9));
  CHECK(t.sigma_star_exact.value_at(std::vector<std::int64_t>{0, 1}) == -Rat(1, 9));
}

TEST_CASE("paraboloid sigma triple for p = 3, d = 2") {
  CyclicMeasureTriple t = make_sigma_triple(3, MeasureKind::Paraboloid, 2);
  std::int64_t nonzero = 0;
  for (const auto& v : t.sigma.values)
    if (v != cplx(0.0, 0.0)) ++nonzero;
  CHECK(nonzero == 9);
  std::vector<std::int64_t> atom{1, 2, 2};  // |(1,2)|^2 = 5 = 2 mod 3
  CHECK(t.sigma.at(atom) == cplx(1.0 / 9.0, 0.0));
  for (const auto& v : t.sigma0.values) CHECK(v == cplx(1.0 / 27.0, 0.0));
}

TEST_CASE("make_sigma_triple rejects p <= m") {
  CHECK_THROWS_AS(make_sigma_triple(3, MeasureKind::PowerDiagonal, 3), std::invalid_argument);
  CHECK_THROWS_AS(make_sigma_triple(4, MeasureKind::PowerDiagonal, 2), std::invalid_argument);
}

TEST_CASE("cutoff profile for p = 5 matches the five cases") {
  CutoffProfile phi = make_cutoff(5);
  std::vector<Rat> expected{Rat(0), Rat(0),     Rat(0), Rat(1, 3), Rat(2, 3),
                            Rat(1), Rat(1),     Rat(1), Rat(1),    Rat(1),
                            Rat(1, 2), Rat(0),  Rat(0), Rat(0),    Rat(0)};
  for (std::int64_t i = -5; i <= 9; ++i) CHECK(phi.at(i) == expected[static_cast<std::size_t>(i + 5)]);
  CHECK(phi.at(0) == Rat(1));
  CHECK(phi.at(-5) == Rat(0));
  CHECK(phi.total() == Rat(13, 2));
  CHECK_THROWS_AS(make_cutoff(6), std::invalid_argument);
}

TEST_CASE("cutoff ramps are affine (vanishing second difference)") {
  for (std::uint64_t p : {5ULL, 7ULL, 11ULL, 13ULL}) {
    CutoffProfile phi = make_cutoff(p);
    const std::int64_t ip = static_cast<std::int64_t>(p);
    const std::int64_t h = (ip - 1) / 2;
    for (std::int64_t i = -ip + h + 1; i < 0; ++i)
      CHECK(phi.at(i + 1) - 2 * phi.at(i) + phi.at(i - 1) == Rat(0));
    for (std::int64_t i = ip; i < ip - 1 + h; ++i)
      CHECK(phi.at(i + 1) - 2 * phi.at(i) + phi.at(i - 1) == Rat(0));
    CHECK(phi.total() == Rat(3 * ip - 2, 2));
  }
}

TEST_CASE("gamma transfer mass accounting") {
  CyclicMeasureTriple t = make_sigma_triple(5, MeasureKind::PowerDiagonal, 2);
  CutoffProfile phi = make_cutoff(5);

  // mass(Gamma sigma0) = (sum phi)^m p^{-m} = (13/2)^2 / 25 = 169/100
  RatSignal nu = gamma_transfer_exact(t.sigma0_exact, phi);
  CHECK(nu.mass() == Rat(169, 100));

  // double route agrees
  IntSignal nu_d = gamma_transfer(t.sigma0, phi);
  CHECK(nu_d.mass() == doctest::Approx(1.69).epsilon(1e-12));

  // independent accounting: sum over the grid of phi-product times the measure
  RatSignal mu = gamma_transfer_exact(t.sigma_exact, phi);
  Rat expected(0);
  for (std::int64_t j = 0; j < 5; ++j) {
    Rat prod(1);
    for (int r = 1; r <= 2; ++r) {
      std::int64_t c = mod_residue_power(j, static_cast<unsigned>(r), 5);
      Rat psi = phi.at(c - 5) + phi.at(c) + phi.at(c + 5);  // periodized cutoff
      prod *= psi;
    }
    expected += prod * Rat(1, 5);
  }
  CHECK(mu.mass() == expected);
}

TEST_CASE("gamma of the zero measure is the zero signal") {
  CyclicSignal zero(5, 2);
  CutoffProfile phi = make_cutoff(5);
  CHECK(gamma_transfer(zero, phi).empty());
}

TEST_CASE("gamma transfer is linear") {
  CutoffProfile phi = make_cutoff(5);
  CounterRng rng(0x9a9a, 0);
  CyclicSignal f(5, 2), g(5, 2);
  for (auto& v : f.values) v = 2.0 * rng.next_unit() - 1.0;
  for (auto& v : g.values) v = 2.0 * rng.next_unit() - 1.0;
  const double alpha = 0.75, beta = -1.5;
  CyclicSignal combo(5, 2);
  for (std::size_t i = 0; i < combo.values.size(); ++i)
    combo.values[i] = alpha * f.values[i] + beta * g.values[i];
  IntSignal lhs = gamma_transfer(combo, phi);
  IntSignal rhs = add(scale(gamma_transfer(f, phi), alpha), scale(gamma_transfer(g, phi), beta));
  std::int64_t lo = std::min(lhs.first(), rhs.first());
  std::int64_t hi = std::max(lhs.last(), rhs.last());
  for (std::int64_t x = lo; x <= hi; ++x) CHECK(std::abs(lhs.at(x) - rhs.at(x)) <= 1e-12);
}

TEST_CASE("kappa spectrum vanishes off the 3-divisible lattice") {
  const std::uint64_t p = 5;
  const int m = 2;
  CyclicMeasureTriple t = make_sigma_triple(p, MeasureKind::PowerDiagonal, m);
  CyclicSignal kappa = periodize(t.sigma_star);
  CyclicSignal khat = dft(kappa);
  CyclicSignal shat = dft(t.sigma_star);

  const std::int64_t ip = static_cast<std::int64_t>(p);
  double bound = std::pow(3.0, m) * (m - 1) / std::sqrt(static_cast<double>(p));
  for_each_coord(3 * ip, m, -ip, [&](std::int64_t flat, std::span<const std::int64_t> xi) {
    const cplx v = khat.values[static_cast<std::size_t>(flat)];
    bool divisible = true;
    for (int ax = 0; ax < m; ++ax)
      if (xi[static_cast<std::size_t>(ax)] % 3 != 0) divisible = false;
    if (!divisible) {
      CHECK(std::abs(v) <= 1e-9);
    } else {
      std::vector<std::int64_t> xi3(static_cast<std::size_t>(m));
      for (int ax = 0; ax < m; ++ax) xi3[static_cast<std::size_t>(ax)] = xi[static_cast<std::size_t>(ax)] / 3;
      CHECK(std::abs(v - 9.0 * shat.at(xi3)) <= 1e-9);
    }
    CHECK(std::abs(v) <= bound + 1e-9);
  });
}

TEST_CASE("block elements match hand evaluation") {
  CHECK(block_elements(5, 2, 25).elements == std::vector<std::int64_t>{25, 31, 34, 47, 48});
  CHECK(block_elements(3, 3, 0).elements == std::vector<std::int64_t>{0, 13, 23});
  CHECK(block_elements(3, 2, 0).elements == std::vector<std::int64_t>{0, 4, 5});
  CHECK_THROWS_AS(block_elements(4, 2, 0), std::invalid_argument);
  CHECK_THROWS_AS(block_elements(5, 2, -1), std::invalid_argument);
}

TEST_CASE("variant block elements match hand evaluation") {
  CHECK(variant_block_elements(3, 2, 0).elements ==
        std::vector<std::int64_t>{0, 10, 11, 12, 15, 22, 23, 25, 26});
  CHECK(variant_block_elements(3, 1, 0).elements == std::vector<std::int64_t>{0, 4, 5});
  for (std::int64_t a : {0LL, 7LL, 100LL})
    CHECK(variant_block_elements(5, 2, a).elements.front() == a);
}

TEST_CASE("block triple bounds are exact") {
  const std::uint64_t p = 5;
  const int m = 2;
  const std::int64_t a = 25;
  BlockTriple bt = make_block_triple(p, m, a, MeasureKind::PowerDiagonal);
  SequenceBlock blk = block_elements(p, m, a);

  // mu_tilde >= p^{-1} on the shifted block set, exactly
  for (std::int64_t n : blk.elements) {
    CHECK(bt.mu_exact.at(n) >= Rat(1, 5));
    CHECK(bt.mu_exact.at(n) >= Rat(1, 25));  // the weaker p^{-m} bound
  }
  // mu_tilde >= 0 everywhere
  for (double v : bt.mu_tilde.values) CHECK(v >= 0.0);
  // support counting: at most 3^m p atoms
  std::int64_t support = 0;
  for (const Rat& v : bt.mu_exact.values)
    if (v != Rat(0)) ++support;
  CHECK(support <= 9 * 5);
  // nu bounds
  CHECK(bt.nu_exact.sup_abs() <= Rat(9, 25));
  CHECK(bt.nu.first() >= a - 2 * 25);
  CHECK(bt.nu.last() <= a + 2 * 25);
  // lambda = mu - nu, exactly as doubles
  std::int64_t lo = std::min(bt.mu_tilde.first(), bt.nu.first());
  std::int64_t hi = std::max(bt.mu_tilde.last(), bt.nu.last());
  for (std::int64_t x = lo; x <= hi; ++x) CHECK(bt.lambda.at(x) == bt.mu_tilde.at(x) - bt.nu.at(x));
  // mass of lambda equals mass(Gamma sigma) - mass(Gamma sigma0), exactly
  CHECK(bt.lambda_exact.mass() == bt.mu_exact.mass() - bt.nu_exact.mass());
}

TEST_CASE("six-block power-diagonal sequence") {
  PrimeSchedule s = build_prime_schedule(5, 6, Rat(2));
  OffsetSchedule o = build_offset_schedule(s, 2);
  SparseSequence seq = build_sequence(SequenceKind::PowerDiagonal, s, o, 2);
  CHECK(seq.merged.size() == 5u + 11 + 23 + 47 + 97 + 197);
  for (std::size_t i = 0; i + 1 < seq.merged.size(); ++i) CHECK(seq.merged[i] < seq.merged[i + 1]);
  CHECK(seq.growth_exponent == 2.0);
  CHECK(seq.growth_ratio <= 100.0);
  CHECK(seq.blocks.size() == 6);
  for (std::size_t k = 0; k < seq.blocks.size(); ++k) {
    CHECK(seq.blocks[k].elements.size() == s.primes[k]);
    const std::int64_t pm = checked_ipow(static_cast<std::int64_t>(s.primes[k]), 2);
    for (std::int64_t n : seq.blocks[k].elements) {
      CHECK(n >= o.offsets[k]);
      CHECK(n <= o.offsets[k] + pm);
    }
  }
}

TEST_CASE("single-block sequence merges to its elements") {
  PrimeSchedule s = build_prime_schedule(5, 1, Rat(2));
  OffsetSchedule o = build_offset_schedule(s, 2);
  SparseSequence seq = build_sequence(SequenceKind::PowerDiagonal, s, o, 2);
  CHECK(seq.merged == block_elements(5, 2, 25).elements);
}

TEST_CASE("mixed-exponent sequence reports a fitted growth exponent") {
  PrimeSchedule s = build_prime_schedule(5, 4, Rat(2));
  std::vector<int> pattern{2, 3, 2, 3};
  OffsetSchedule o = build_offset_schedule(s, pattern);
  SparseSequence seq = build_sequence(SequenceKind::Mixed, s, o, 0, pattern);
  CHECK(seq.merged.size() == 5u + 11 + 23 + 47);
  for (std::size_t i = 0; i + 1 < seq.merged.size(); ++i) CHECK(seq.merged[i] < seq.merged[i + 1]);
  CHECK(seq.growth_exponent > 1.0);
  CHECK(seq.growth_exponent < 4.0);
  CHECK(seq.growth_ratio > 0.0);
}

TEST_CASE("paraboloid sequence blocks have p^d elements") {
  PrimeSchedule s = build_prime_schedule(5, 3, Rat(2));
  OffsetSchedule o = build_offset_schedule(s, 3);  // d + 1 = 3
  SparseSequence seq = build_sequence(SequenceKind::Paraboloid, s, o, 2);
  CHECK(seq.blocks[0].elements.size() == 25);
  CHECK(seq.blocks[1].elements.size() == 121);
  CHECK(seq.blocks[2].elements.size() == 23 * 23);
  CHECK(seq.growth_exponent == doctest::Approx(1.5));
}
