#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "maxavg/maximal.hpp"
#include "maxavg/proof_lab.hpp"
#include "maxavg/rng.hpp"

using namespace maxavg;

namespace {

// blocks with their schedule offsets (25 and 51), so the element sets are
// disjoint: |S_1| + |S_2| = 16
std::vector<SequenceBlock> two_blocks() {
  return {block_elements(5, 2, 25), block_elements(11, 2, 51)};
}

}  // namespace

TEST_CASE("level decomposition brackets dyadic magnitudes") {
  IntSignal f = IntSignal::from_atoms({{0, 0.5}, {5, 3.0}, {9, 1.0}});
  LevelDecomposition d = level_decompose(f);
  REQUIRE(d.parts.size() == 3);
  CHECK(d.parts.at(-1).atoms() == std::vector<std::pair<std::int64_t, double>>{{0, 0.5}});
  CHECK(d.parts.at(1).atoms() == std::vector<std::pair<std::int64_t, double>>{{5, 3.0}});
  CHECK(d.parts.at(0).atoms() == std::vector<std::pair<std::int64_t, double>>{{9, 1.0}});

  CHECK(level_decompose(IntSignal{}).parts.empty());

  // dyadic values make the l1 partition exact
  double total = 0;
  for (const auto& [j, fj] : d.parts) total += fj.norm_l1();
  CHECK(total == f.norm_l1());

  CHECK(dyadic_level(1.0) == 0);
  CHECK(dyadic_level(0.5) == -1);
  CHECK(dyadic_level(3.0) == 1);
  CHECK(dyadic_level(-4.0) == 2);
  CHECK(dyadic_level(0.9999999) == -1);
}

TEST_CASE("exceptional sets follow the threshold arithmetic") {
  auto blocks = two_blocks();
  IntSignal f = IntSignal::from_atoms({{0, 1.0}});
  LevelDecomposition d = level_decompose(f);

  ScaleAssignment coarse{{5.0, 11.0}, 0.5, 0.5};
  ExceptionalSets none = exceptional_set(d, blocks, coarse);
  CHECK(none.total == 0);  // alpha^{-1} 2^0 = 2: no block scale is below 2

  ScaleAssignment fine{{5.0, 11.0}, 0.5, 0.01};
  ExceptionalSets both = exceptional_set(d, blocks, fine);
  CHECK(both.total == 16);  // S_1 and S_2 shifted by 0, disjoint: 5 + 11
  CHECK(both.sizes.at(0) == 16);

  // singleton support: E_j is a union of translates of the block sets
  IntSignal g = IntSignal::from_atoms({{100, 1.0}});
  ExceptionalSets shifted = exceptional_set(level_decompose(g), blocks, fine);
  CHECK(shifted.total == 16);

  ScaleAssignment bad{{5.0, 11.0}, 0.5, 0.0};
  CHECK_THROWS_AS(exceptional_set(d, blocks, bad), std::invalid_argument);
}

TEST_CASE("exceptional set size respects the ratio-2 bound") {
  PrimeSchedule s = build_prime_schedule(5, 5, Rat(2));
  OffsetSchedule o = build_offset_schedule(s, 2);
  SparseSequence seq = build_sequence(SequenceKind::PowerDiagonal, s, o, 2);
  CounterRng rng(0xe5e5, 0);
  for (int trial = 0; trial < 10; ++trial) {
    std::vector<std::pair<std::int64_t, double>> atoms;
    int n = 1 + static_cast<int>(rng.next_range(0, 11));
    for (int i = 0; i < n; ++i)
      atoms.emplace_back(rng.next_range(0, 999), std::ldexp(1.0, static_cast<int>(rng.next_range(-3, 3))));
    IntSignal f = IntSignal::from_atoms(atoms);
    for (double alpha : {0.01, 0.1, 1.0}) {
      ScaleAssignment scales = scales_from_schedule(s, 2, alpha);
      ExceptionalSets e = exceptional_set(level_decompose(f), seq.blocks, scales);
      CHECK(static_cast<double>(e.total) <= 8.0 / alpha * f.norm_l1() + 1e-9);
      std::int64_t sum = 0;
      for (const auto& [j, size] : e.sizes) sum += size;
      CHECK(e.total <= sum);  // |E| <= sum_j |E_j|
    }
  }
}

TEST_CASE("bracket level picks the unique dyadic bracket") {
  // x = scale * alpha * 2^{-s}; want unique j with x <= 2^j < 2x
  CHECK(bracket_level(8.0, 1.0, 0) == 3);     // x = 8 exactly
  CHECK(bracket_level(8.0, 1.0, 1) == 2);
  CHECK(bracket_level(5.0, 1.0, 0) == 3);     // 5 <= 8 < 10
  CHECK(bracket_level(5.0, 0.25, 0) == 1);    // 1.25 <= 2 < 2.5
  CHECK(bracket_level(5.0, 0.25, 3) == -2);   // 0.15625 <= 0.25 < 0.3125
  for (int s = 0; s < 10; ++s) {
    double x = 11.0 * 0.3 * std::ldexp(1.0, -s);
    int j = bracket_level(11.0, 0.3, s);
    CHECK(std::ldexp(1.0, j) >= x);
    CHECK(std::ldexp(1.0, j) < 2 * x);
  }
}

TEST_CASE("square function sums only matching brackets") {
  auto blocks = two_blocks();
  std::vector<IntSignal> lambdas;
  for (const auto& b : blocks) {
    BlockTriple bt = make_block_triple(b.p, 2, b.a, MeasureKind::PowerDiagonal);
    lambdas.push_back(bt.lambda);
  }
  std::vector<double> scales{5.0, 11.0};

  // single-level input: only blocks whose bracket hits level 0 contribute
  IntSignal f = IntSignal::from_atoms({{0, 1.0}, {7, 1.5}});
  LevelDecomposition d = level_decompose(f);
  const double alpha = 0.1;
  for (int s = 0; s <= 12; ++s) {
    IntSignal gs = square_function(d, lambdas, scales, alpha, s);
    bool hits = bracket_level(5.0, alpha, s) == 0 || bracket_level(11.0, alpha, s) == 0;
    CHECK(gs.empty() == !hits);
    if (!gs.empty()) {
      // ||G_s||^2 equals the sum over contributing blocks of ||f_j . lambda_k||^2
      double expect = 0;
      for (std::size_t k = 0; k < lambdas.size(); ++k) {
        if (bracket_level(scales[k], alpha, s) != 0) continue;
        expect += forward_average(d.parts.at(0), lambdas[k]).norm_l2_sq();
      }
      CHECK(gs.norm_l2_sq() == doctest::Approx(expect).epsilon(1e-12));
    }
  }

  std::vector<IntSignal> zero_lambdas{IntSignal{}, IntSignal{}};
  for (int s = 0; s <= 4; ++s)
    CHECK(square_function(d, zero_lambdas, scales, alpha, s).empty());
}

TEST_CASE("hypothesis check reports measured constants") {
  PrimeSchedule s = build_prime_schedule(5, 2, Rat(2));
  OffsetSchedule o = build_offset_schedule(s, 2);
  SparseSequence seq = build_sequence(SequenceKind::PowerDiagonal, s, o, 2);
  std::vector<BlockTriple> triples;
  for (std::size_t k = 0; k < s.primes.size(); ++k)
    triples.push_back(make_block_triple(s.primes[k], 2, o.offsets[k], MeasureKind::PowerDiagonal));
  ScaleAssignment scales = scales_from_schedule(s, 2, 0.25);

  HypothesisReport hr = hypothesis_check(seq.blocks, triples, scales);
  REQUIRE(hr.rows.size() == 2);
  CHECK(hr.support_ok);
  CHECK(hr.rows[0].support_size <= 45);  // 3^2 * 5
  CHECK(hr.rows[0].lambda_sup > 0.0);
  CHECK(hr.c_f > 0.0);
  CHECK(hr.hl_constant <= 11.0 * 9.0);

  // degenerate: zero lambda, zero nu
  std::vector<BlockTriple> zeros(2);
  zeros[0].p = 5;
  zeros[1].p = 11;
  zeros[0].param = zeros[1].param = 2;
  HypothesisReport hz = hypothesis_check(seq.blocks, zeros, scales);
  CHECK(hz.support_ok);
  CHECK(hz.c_f == 0.0);
  CHECK(hz.hl_constant == 0.0);
}

TEST_CASE("inspect_proof ties the chain together") {
  PrimeSchedule s = build_prime_schedule(5, 3, Rat(2));
  OffsetSchedule o = build_offset_schedule(s, 2);
  SparseSequence seq = build_sequence(SequenceKind::PowerDiagonal, s, o, 2);
  std::vector<IntSignal> lambdas;
  for (std::size_t k = 0; k < s.primes.size(); ++k)
    lambdas.push_back(
        make_block_triple(s.primes[k], 2, o.offsets[k], MeasureKind::PowerDiagonal).lambda);
  ScaleAssignment scales = scales_from_schedule(s, 2, 0.25);

  CounterRng rng(0x90f, 3);
  std::vector<std::pair<std::int64_t, double>> atoms;
  for (int i = 0; i < 10; ++i)
    atoms.emplace_back(rng.next_range(0, 500), static_cast<double>(rng.next_range(1, 8)));
  IntSignal f = IntSignal::from_atoms(atoms);

  ProofInspection pi = inspect_proof(f, seq.blocks, lambdas, scales, 20);
  CHECK(pi.exceptional_bound_ratio <= 8.0 + 1e-9);
  CHECK(pi.gs_norm_sq.size() == 21);
  CHECK(pi.gs_bound_constant > 0.0);
  CHECK(pi.generous_domination_ok);
  std::int64_t sum = 0;
  for (const auto& [j, size] : pi.exceptional_sizes) sum += size;
  CHECK(pi.exceptional_total <= sum);
}
