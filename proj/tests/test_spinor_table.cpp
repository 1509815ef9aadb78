#include <doctest.h>

#include <algorithm>

#include "quatspin/reproduce.hpp"
#include "quatspin/spinor_table.hpp"
#include "test_support.hpp"

using namespace quatspin;
using quatspin::testing::Rng;

namespace {
const AlgebraParams& P() { return canonical_params(); }
SquareClass2 cls(int rep) { return SquareClass2::from_representative(rep); }
}  // namespace

TEST_SUITE_BEGIN("spinor_table");

TEST_CASE("image basics") {
  CHECK(SpinorImage::full().is_full());
  CHECK_THROWS_AS(SpinorImage::norm_group(cls(1)), std::invalid_argument);
  CHECK(image_contains(SpinorImage::norm_group(cls(5)), Rat(3)));
  CHECK_FALSE(image_contains(SpinorImage::norm_group(cls(5)), Rat(2)));
  CHECK_THROWS_AS(image_contains(SpinorImage::full(), Rat(0)), std::domain_error);

  Rng rng(401);
  for (int k = 0; k < 100; ++k) {
    CHECK(image_contains(SpinorImage::full(), rng.nonzero_rational(500)));
  }
}

TEST_CASE("every norm group has index 2") {
  for (SquareClass2 d : SquareClass2::all()) {
    if (d == cls(1)) continue;
    auto members = member_classes(SpinorImage::norm_group(d));
    CHECK(members.size() == 4);
    // Contains squares, closed under products.
    CHECK(std::find(members.begin(), members.end(), cls(1)) != members.end());
    for (SquareClass2 x : members) {
      for (SquareClass2 y : members) {
        CHECK(std::find(members.begin(), members.end(), x * y) != members.end());
      }
    }
  }
  CHECK(member_classes(SpinorImage::full()).size() == 8);
}

TEST_CASE("norm group of 5 is the even-valuation subgroup") {
  auto members = member_classes(SpinorImage::norm_group(cls(5)));
  for (SquareClass2 c : members) {
    CHECK(c.is_unit_class());
  }
}

TEST_CASE("level-2 generators span the image") {
  for (SquareClass2 d : SquareClass2::all()) {
    SpinorImage img =
        d == cls(1) ? SpinorImage::full() : SpinorImage::norm_group(d);
    auto gens = local_generators_at_2(img);
    // Close the generated subgroup and compare with the members.
    std::vector<SquareClass2> span = {cls(1)};
    for (const Rat& g : gens) {
      SquareClass2 gc = square_class_2(g);
      auto snapshot = span;
      for (SquareClass2 s : snapshot) {
        SquareClass2 prod = s * gc;
        if (std::find(span.begin(), span.end(), prod) == span.end()) {
          span.push_back(prod);
        }
      }
    }
    CHECK(span.size() == member_classes(img).size());
    for (SquareClass2 s : span) {
      CHECK(image_contains(img, Rat(s.representative())));
    }
  }
}

TEST_CASE("descriptor validation") {
  const Quat i = Quat::unit_i(P());
  CHECK_THROWS_AS(LatticeDescriptor(P(), {}, 0), std::invalid_argument);
  CHECK_THROWS_AS(LatticeDescriptor(P(), {Quat::one(P())}, 0), std::invalid_argument);
  CHECK_THROWS_AS(LatticeDescriptor(P(), {i}, -1), std::invalid_argument);
  // Decreasing valuations violate the scale ordering.
  CHECK_THROWS_AS(LatticeDescriptor(P(), {Rat(4) * i, i}, 0), std::invalid_argument);
  CHECK_NOTHROW(LatticeDescriptor(P(), {i, Rat(4) * i}, 0));
  CHECK_NOTHROW(LatticeDescriptor(P(), {}, 2));
}

TEST_CASE("classification") {
  const Quat jij = table_representative(cls(5));
  auto c1 = classify(binary_lattice(jij, 2));
  CHECK(c1.rank2_count == 0);
  CHECK(c1.norm_classes == std::vector<SquareClass2>{cls(5)});
  REQUIRE(c1.mu.has_value());
  CHECK(*c1.mu == 4);

  const Quat i = table_representative(cls(-2));
  for (int t : {1, 3, 5}) {
    auto c2 = classify(binary_lattice(i, t));
    CHECK(c2.norm_classes == std::vector<SquareClass2>{cls(-2)});
    CHECK(*c2.mu == 2 * t);
  }

  auto c3 = classify(LatticeDescriptor(P(), {table_representative(cls(1))}, 0));
  CHECK_FALSE(c3.mu.has_value());
  CHECK(c3.norm_classes == std::vector<SquareClass2>{cls(1)});
}

TEST_CASE("dispatch golden cases") {
  const Quat jij = table_representative(cls(5));
  const Quat i = table_representative(cls(-2));
  CHECK(spinor_image(binary_lattice(jij, 3)) == SpinorImage::norm_group(cls(-5)));
  CHECK(spinor_image(binary_lattice(i, 4)).is_full());
  CHECK(spinor_image(binary_lattice(i, 5)) == SpinorImage::norm_group(cls(2)));
}

TEST_CASE("curated truth table") {
  for (const DispatchCase& dispatch : dispatcher_truth_table()) {
    CAPTURE(dispatch.name);
    TableVerdict verdict = spinor_image_with_row(dispatch.desc);
    CHECK(verdict.image == dispatch.expected);
    CHECK(verdict.row == dispatch.expected_row);
  }
}

TEST_CASE("sublattice images sit inside the full image") {
  Rng rng(402);
  const Quat reps[] = {table_representative(cls(5)), table_representative(cls(1)),
                       table_representative(cls(-5)), table_representative(cls(-2)),
                       table_representative(cls(2)), table_representative(cls(10))};
  for (int k = 0; k < 200; ++k) {
    // Build a sorted random chain, then split it.
    const int n = static_cast<int>(rng.integer(2, 4));
    std::vector<Quat> components;
    long shift = 0;
    for (int m = 0; m < n; ++m) {
      shift += rng.integer(0, 4);
      components.push_back(pow2(shift) * reps[rng.integer(0, 5)]);
      shift += 1;  // keep valuations non-decreasing regardless of class
    }
    std::sort(components.begin(), components.end(), [](const Quat& x, const Quat& y) {
      return d_valuation(x) < d_valuation(y);
    });
    const int s = static_cast<int>(rng.integer(0, 1));
    LatticeDescriptor whole(P(), components, s);
    const SpinorImage whole_image = spinor_image(whole);

    const size_t cut = static_cast<size_t>(rng.integer(1, n - 1));
    std::vector<Quat> left(components.begin(), components.begin() + cut);
    std::vector<Quat> right(components.begin() + cut, components.end());
    for (const auto& part : {left, right}) {
      if (part.empty()) continue;
      SpinorImage part_image = spinor_image(LatticeDescriptor(P(), part, 0));
      for (SquareClass2 c : member_classes(part_image)) {
        CHECK(image_contains(whole_image, Rat(c.representative())));
      }
    }
  }
}

TEST_CASE("rescaling the lattice leaves the image unchanged") {
  Rng rng(403);
  const Quat reps[] = {table_representative(cls(5)), table_representative(cls(-5)),
                       table_representative(cls(-2)), table_representative(cls(10))};
  for (int k = 0; k < 100; ++k) {
    const Quat& a1 = reps[rng.integer(0, 3)];
    const int t = static_cast<int>(rng.integer(1, 6));
    Rat c = rng.nonzero_rational(40);
    SpinorImage base = spinor_image(binary_lattice(a1, t));
    SpinorImage scaled = spinor_image(
        LatticeDescriptor(P(), {c * a1, c * pow2(t) * a1}, 0));
    CHECK(base == scaled);
  }
}

TEST_CASE("non-pure components are rejected") {
  CHECK_THROWS_AS(LatticeDescriptor(P(), {Quat(P(), 1, 0, 1, 0)}, 0),
                  std::invalid_argument);
}

TEST_SUITE_END();
