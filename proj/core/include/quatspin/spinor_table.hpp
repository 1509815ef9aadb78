#pragma once

#include <optional>
#include <string>
#include <vector>

#include "quatspin/quatalg.hpp"

namespace quatspin {

// The image H(Lambda) of the local spinor norm: either all of Q_2^* or the
// norm group N(Q_2(sqrt(d))^*) = { x : (x, d)_2 = +1 }, an index-2 subgroup.
// NormGroup(5) is Z_2^* Q_2^{*2}, the even-valuation classes.
class SpinorImage {
 public:
  static SpinorImage full();
  // Throws std::invalid_argument for d = 1 (that would be the whole group).
  static SpinorImage norm_group(SquareClass2 d);

  bool is_full() const { return !d_.has_value(); }
  // The class d with H = NormGroup(d); empty when full.
  const std::optional<SquareClass2>& norm_class() const { return d_; }

  friend bool operator==(const SpinorImage&, const SpinorImage&) = default;

 private:
  SpinorImage() = default;
  std::optional<SquareClass2> d_;
};

std::ostream& operator<<(std::ostream& os, const SpinorImage& img);

// Membership of a nonzero rational: full images contain everything, norm
// groups contain x iff hilbert_2(x, d) = +1.
bool image_contains(const SpinorImage& img, const Rat& x);

// The square classes contained in the image (8 when full, 4 otherwise).
std::vector<SquareClass2> member_classes(const SpinorImage& img);

// A generator list for the image inside Q_2^*/Q_2^{*2}: {5, -1, 2} for the
// full group, two independent nontrivial members for a norm group. Used to
// feed local images into the spinor-class-field computation.
std::vector<Rat> local_generators_at_2(const SpinorImage& img);

// Jordan-type data of a skew-hermitian lattice: the rank-1 components'
// diagonal quaternions in order of non-increasing scale (non-decreasing
// D-valuation), plus the count of rank-2 indecomposable components. Rank-2
// Gram data is not carried; every dispatch row with rank-2 components
// present yields the full image.
class LatticeDescriptor {
 public:
  LatticeDescriptor(AlgebraParams params, std::vector<Quat> rank1_components,
                    int rank2_count);

  const AlgebraParams& params() const { return params_; }
  const std::vector<Quat>& rank1() const { return rank1_; }
  int rank2_count() const { return rank2_count_; }

 private:
  AlgebraParams params_;
  std::vector<Quat> rank1_;
  int rank2_count_;
};

struct Classification {
  int rank2_count = 0;
  // A = set of square classes of the rank-1 norms, canonically ordered.
  std::vector<SquareClass2> norm_classes;
  // Minimal D-valuation gap between consecutive rank-1 components; empty
  // when fewer than two rank-1 components exist.
  std::optional<long> mu;
};

Classification classify(const LatticeDescriptor& desc);

// Dispatches the full classification table:
//   rank-2 component present            -> full
//   more than one norm class            -> full
//   class -Delta (= -5)                 -> NormGroup(5)
//   unit class (1 or 5),  mu <  nu(8)   -> full
//   unit class (1 or 5),  mu >= nu(8)   -> NormGroup(class(-N(a_m)))
//   prime class,          mu <= nu(16)  -> full
//   prime class,          mu >  nu(16)  -> NormGroup(class(-N(a_m)))
// with nu(8) = 6, nu(16) = 8 in D-valuation units and mu = infinity routed
// to the norm-group rows.
SpinorImage spinor_image(const LatticeDescriptor& desc);

struct TableVerdict {
  SpinorImage image;
  // Stable identifier of the dispatch row, e.g. "unit-class-large-gap".
  std::string row;
};
TableVerdict spinor_image_with_row(const LatticeDescriptor& desc);

}  // namespace quatspin
