#include <doctest.h>

#include <thread>

#include "quatspin/reproduce.hpp"
#include "quatspin/spinor_search.hpp"
#include "test_support.hpp"

using namespace quatspin;
using quatspin::testing::Rng;

namespace {

const AlgebraParams& P() { return canonical_params(); }
SquareClass2 cls(int rep) { return SquareClass2::from_representative(rep); }

// No-pruning reference: scan every candidate with the exact check.
SearchOutcome naive_search(const KStarInstance& inst, int u) {
  const long limit = 1l << u;
  SearchOutcome outcome;
  outcome.bound_exponent = u;
  uint64_t rank = 0;
  for (long a = 0; a < limit; ++a) {
    for (long b = 0; b < limit; ++b) {
      for (long c = 0; c < limit; ++c) {
        for (long d = 0; d < limit; ++d) {
          ++rank;
          Quat r(P(), Rat(a), Rat(b), Rat(c), Rat(d));
          if (kstar_check(inst, r).pass()) {
            outcome.witness = r;
            outcome.candidates_scanned = rank;
            return outcome;
          }
        }
      }
    }
  }
  outcome.candidates_scanned = rank;
  return outcome;
}

}  // namespace

TEST_SUITE_BEGIN("spinor_search");

TEST_CASE("instance validation") {
  CHECK_THROWS_AS(KStarInstance(Quat::one(P()), 2), std::invalid_argument);
  CHECK_THROWS_AS(KStarInstance(Quat::zero(P()), 2), std::invalid_argument);
  CHECK_THROWS_AS(KStarInstance(Quat::unit_i(P()), 0), std::invalid_argument);
  CHECK(KStarInstance(Quat::unit_i(P()), 1).normalized());
  // Valuation 2 axis is pure but not normalized.
  CHECK_FALSE(KStarInstance(Quat::scalar(P(), 2) * Quat::unit_i(P()), 1).normalized());
  // Non-integral scale: still a valid instance, never a search input.
  CHECK_FALSE(KStarInstance(Rat(1, 2) * Quat::unit_i(P()), 1).normalized());
}

TEST_CASE("golden condition checks") {
  const Quat jij = table_representative(cls(5));
  const KStarInstance inst(jij, 2);
  KStarReport report = kstar_check(inst, Quat(P(), 1, 0, 0, 2));
  CHECK(report.pass());
  CHECK(report.n1mr == 8);
  CHECK(report.nz == 80);
  CHECK(report.spinor_class == cls(10));

  KStarReport degenerate = kstar_check(inst, Quat::one(P()));
  CHECK(degenerate.degenerate);
  CHECK_FALSE(degenerate.pass());
  CHECK_FALSE(degenerate.cond_hilbert);

  CHECK_THROWS_AS(kstar_check(inst, Quat(P(), Rat(1, 2), 0, 0, 0)),
                  std::invalid_argument);
}

TEST_CASE("hilbert condition equals escaping the axis norm group") {
  Rng rng(301);
  const Quat axes[] = {table_representative(cls(5)), table_representative(cls(1)),
                       table_representative(cls(-2)), table_representative(cls(10))};
  for (int k = 0; k < 400; ++k) {
    const Quat& a1 = axes[rng.integer(0, 3)];
    const KStarInstance inst(a1, 1 + static_cast<int>(rng.integer(0, 3)));
    Quat r = rng.integral_quat(P(), 12);
    KStarReport report = kstar_check(inst, r);
    if (report.degenerate) continue;
    const Rat d(square_class_2(-reduced_norm(a1)).representative());
    const bool outside =
        hilbert_2(Rat(report.spinor_class.representative()), d) == -1;
    CHECK(report.cond_hilbert == outside);
  }
}

TEST_CASE("bounds and justifications") {
  const KStarInstance u4(table_representative(cls(5)), 4);
  const KStarInstance u2(table_representative(cls(5)), 2);
  const KStarInstance u1(table_representative(cls(1)), 1);
  const KStarInstance p4(table_representative(cls(-2)), 4);
  CHECK(default_bound(u4, true) == 7);
  CHECK(default_bound(u2, false) == 8);
  CHECK(default_bound(u1, true) == 4);
  CHECK(classify_bound(u4, 7) == BoundJustification::kRefinedUnitNorm);
  CHECK(classify_bound(u4, 10) == BoundJustification::kTheorem);
  CHECK(classify_bound(u2, 5) == BoundJustification::kHeuristic);
  CHECK(classify_bound(p4, 7) == BoundJustification::kHeuristic);  // prime norm
  CHECK(classify_bound(p4, 10) == BoundJustification::kTheorem);
}

TEST_CASE("search finds the published minimal witness") {
  const KStarInstance inst(table_representative(cls(5)), 2);
  SearchOptions options;
  options.bound_exponent = 4;
  SearchOutcome outcome = search_witness(inst, options);
  REQUIRE(outcome.witness.has_value());
  CHECK(*outcome.witness == Quat(P(), 1, 0, 0, 2));
  CHECK(outcome.candidates_scanned == 4099);  // rank of (1,0,0,2) in [0,16)^4
}

TEST_CASE("search rejects invalid options") {
  const KStarInstance inst(table_representative(cls(5)), 2);
  SearchOptions options;
  options.bound_exponent = 0;
  CHECK_THROWS_AS(search_witness(inst, options), std::invalid_argument);
  options.bound_exponent = 17;
  CHECK_THROWS_AS(search_witness(inst, options), std::invalid_argument);
  options.bound_exponent = 4;
  const KStarInstance denorm(Quat::scalar(P(), 4) * Quat::unit_i(P()), 1);
  CHECK_THROWS_AS(search_witness(denorm, options), std::invalid_argument);
}

TEST_CASE("witness exists for the prime axis at t = 4") {
  const KStarInstance inst(table_representative(cls(-2)), 4);
  SearchOptions options;
  options.bound_exponent = 5;
  SearchOutcome outcome = search_witness(inst, options);
  REQUIRE(outcome.witness.has_value());
  // r = 15 + 8w passes, so the minimum is at most (15,8,0,0).
  CHECK(kstar_check(inst, *outcome.witness).pass());
  const Quat paper(P(), 15, 8, 0, 0);
  CHECK(outcome.candidates_scanned <= ((15ull << 5 | 8) << 10) + 1);
  CHECK(kstar_check(inst, paper).pass());
}

TEST_CASE("no witness for the unit axes at t = 3 below 2^6") {
  for (int rep : {5, 1}) {
    const KStarInstance inst(table_representative(cls(rep)), 3);
    SearchOptions options;
    options.bound_exponent = 6;
    SearchOutcome outcome = search_witness(inst, options);
    CHECK_FALSE(outcome.witness.has_value());
    CHECK(outcome.candidates_scanned == uint64_t{1} << 24);
  }
}

TEST_CASE("naive quadruple loop agrees with the optimized scan") {
  const Quat axes[] = {table_representative(cls(5)), table_representative(cls(1)),
                       table_representative(cls(-5)), table_representative(cls(-2))};
  for (const Quat& a1 : axes) {
    for (int t : {1, 3}) {
      const KStarInstance inst(a1, t);
      for (int u : {2, 3}) {
        SearchOptions options;
        options.bound_exponent = u;
        SearchOutcome fast = search_witness(inst, options);
        SearchOutcome reference = naive_search(inst, u);
        CHECK(fast.witness.has_value() == reference.witness.has_value());
        if (fast.witness.has_value()) {
          CHECK(*fast.witness == *reference.witness);
          CHECK(fast.candidates_scanned == reference.candidates_scanned);
        }
      }
    }
  }
}

TEST_CASE("scan is deterministic across parallelism levels") {
  const Quat axes[] = {table_representative(cls(5)), table_representative(cls(1)),
                       table_representative(cls(-2)), table_representative(cls(2))};
  for (const Quat& a1 : axes) {
    for (int t : {1, 2, 4}) {
      const KStarInstance inst(a1, t);
      SearchOptions base;
      base.bound_exponent = 5;
      base.jobs = 1;
      SearchOutcome expected = search_witness(inst, base);
      for (int jobs : {2, 8}) {
        SearchOptions options = base;
        options.jobs = jobs;
        SearchOutcome outcome = search_witness(inst, options);
        CHECK(outcome.witness.has_value() == expected.witness.has_value());
        if (expected.witness.has_value()) {
          CHECK(*outcome.witness == *expected.witness);
        }
        CHECK(outcome.candidates_scanned == expected.candidates_scanned);
      }
    }
  }
}

TEST_CASE("scaling the axis leaves the conditions unchanged") {
  Rng rng(302);
  const Quat jij = table_representative(cls(5));
  const KStarInstance inst(jij, 2);
  for (int k = 0; k < 300; ++k) {
    Quat r = rng.integral_quat(P(), 10);
    Rat c = rng.nonzero_rational(60);
    const KStarInstance scaled(c * jij, 2);
    KStarReport lhs = kstar_check(inst, r);
    KStarReport rhs = kstar_check(scaled, r);
    CHECK(lhs.cond_hilbert == rhs.cond_hilbert);
    CHECK(lhs.cond_square == rhs.cond_square);
    CHECK(lhs.cond_integral == rhs.cond_integral);
    CHECK(lhs.degenerate == rhs.degenerate);
  }
}

TEST_CASE("a witness for t keeps passing for smaller t") {
  const Quat paper(P(), 15, 8, 0, 0);
  for (int rep : {-2, 2, -10, 10}) {
    const Quat a1 = table_representative(cls(rep));
    REQUIRE(kstar_check(KStarInstance(a1, 4), paper).pass());
    for (int s : {1, 2, 3}) {
      CHECK(kstar_check(KStarInstance(a1, s), paper).pass());
    }
  }
  const Quat unit_witness(P(), 1, 0, 0, 2);
  REQUIRE(kstar_check(KStarInstance(table_representative(cls(5)), 2), unit_witness).pass());
  CHECK(kstar_check(KStarInstance(table_representative(cls(5)), 1), unit_witness).pass());
}

TEST_CASE("conditions depend only on r mod 2^(t+6)") {
  Rng rng(303);
  struct Sample {
    int rep;
    int t;
    Quat r;
  };
  const Sample samples[] = {
      {5, 2, Quat(P(), 1, 0, 0, 2)},
      {1, 2, Quat(P(), 1, 0, 2, 2)},
      {-2, 4, Quat(P(), 15, 8, 0, 0)},
      {10, 4, Quat(P(), 15, 8, 0, 0)},
  };
  for (const Sample& sample : samples) {
    const KStarInstance inst(table_representative(cls(sample.rep)), sample.t);
    REQUIRE(kstar_check(inst, sample.r).pass());
    const Rat modulus = pow2(sample.t + 6);
    for (int k = 0; k < 50; ++k) {
      Quat beta = rng.integral_quat(P(), 20);
      Quat shifted = sample.r + modulus * beta;
      CHECK(kstar_check(inst, shifted).pass());
    }
  }
}

TEST_CASE("aborted scans never report an outcome") {
  const KStarInstance inst(table_representative(cls(-5)), 1);
  SearchOptions options;
  options.bound_exponent = 6;
  options.max_candidates = 5000;
  SearchOutcome outcome = search_witness(inst, options);
  CHECK(outcome.aborted);
  CHECK_FALSE(outcome.witness.has_value());
  CHECK(outcome.candidates_scanned >= 5000);
  CHECK(outcome.candidates_scanned < uint64_t{1} << 24);
  CHECK_THROWS_AS(decide_H_binary(inst, options), SearchAbortedError);
}

TEST_CASE("cooperative cancellation") {
  const KStarInstance inst(table_representative(cls(-5)), 1);
  SearchControl control;
  control.cancel.store(true);
  SearchOptions options;
  options.bound_exponent = 6;
  options.control = &control;
  SearchOutcome outcome = search_witness(inst, options);
  CHECK(outcome.aborted);
}

TEST_CASE("decisions") {
  SearchOptions options;
  options.bound_exponent = 5;
  Decision full = decide_H_binary(KStarInstance(table_representative(cls(5)), 2), options);
  CHECK(full.image.is_full());

  options.bound_exponent = 6;
  Decision ng = decide_H_binary(KStarInstance(table_representative(cls(5)), 3), options);
  CHECK(ng.image == SpinorImage::norm_group(cls(-5)));
  CHECK(ng.justification == BoundJustification::kRefinedUnitNorm);

  options.bound_exponent = 6;
  Decision prime =
      decide_H_binary(KStarInstance(table_representative(cls(-2)), 3), options);
  CHECK(prime.image.is_full());
}

TEST_CASE("witness tables all verify") {
  const auto rows = verify_witness_tables();
  CHECK(rows.size() == 14);
  CHECK(all_rows_pass(rows));
  for (const auto& row : rows) {
    CAPTURE(row.table, row.label, row.detail);
    CHECK(row.pass);
  }
}

TEST_SUITE_END();
