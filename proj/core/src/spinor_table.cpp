#include "quatspin/spinor_table.hpp"

#include <algorithm>
#include <ostream>
#include <stdexcept>

namespace quatspin {

namespace {

constexpr long kNu8 = 6;   // nu(8) = v_2(N(8)) = 6
constexpr long kNu16 = 8;  // nu(16) = 8

int canonical_index(SquareClass2 c) {
  const auto& all = SquareClass2::all();
  for (size_t k = 0; k < all.size(); ++k) {
    if (all[k] == c) return static_cast<int>(k);
  }
  return -1;
}

}  // namespace

SpinorImage SpinorImage::full() { return SpinorImage(); }

SpinorImage SpinorImage::norm_group(SquareClass2 d) {
  if (d == SquareClass2::from_representative(1)) {
    throw std::invalid_argument("norm group of the trivial class is the full group");
  }
  SpinorImage img;
  img.d_ = d;
  return img;
}

std::ostream& operator<<(std::ostream& os, const SpinorImage& img) {
  if (img.is_full()) return os << "Q_2^*";
  return os << "N(Q_2(sqrt(" << *img.norm_class() << "))^*)";
}

bool image_contains(const SpinorImage& img, const Rat& x) {
  if (is_zero(x)) throw std::domain_error("membership of zero");
  if (img.is_full()) return true;
  return hilbert_2(x, Rat(img.norm_class()->representative())) == 1;
}

std::vector<SquareClass2> member_classes(const SpinorImage& img) {
  std::vector<SquareClass2> members;
  for (SquareClass2 c : SquareClass2::all()) {
    if (image_contains(img, Rat(c.representative()))) members.push_back(c);
  }
  return members;
}

std::vector<Rat> local_generators_at_2(const SpinorImage& img) {
  if (img.is_full()) return {Rat(5), Rat(-1), Rat(2)};
  std::vector<Rat> gens;
  for (SquareClass2 c : member_classes(img)) {
    if (c == SquareClass2::from_representative(1)) continue;
    gens.emplace_back(c.representative());
    if (gens.size() == 2) break;
  }
  return gens;
}

LatticeDescriptor::LatticeDescriptor(AlgebraParams params,
                                     std::vector<Quat> rank1_components,
                                     int rank2_count)
    : params_(std::move(params)),
      rank1_(std::move(rank1_components)),
      rank2_count_(rank2_count) {
  if (rank2_count_ < 0) throw std::invalid_argument("negative rank-2 count");
  if (rank1_.empty() && rank2_count_ == 0) {
    throw std::invalid_argument("empty lattice descriptor");
  }
  long previous = 0;
  for (size_t m = 0; m < rank1_.size(); ++m) {
    const Quat& q = rank1_[m];
    if (!(q.params() == params_)) {
      throw std::invalid_argument("component lives in a different algebra");
    }
    if (!is_pure(q)) {
      throw std::invalid_argument("rank-1 components must be nonzero pure quaternions");
    }
    long nu = d_valuation(q);
    if (m > 0 && nu < previous) {
      throw std::invalid_argument("components must have non-increasing scales");
    }
    previous = nu;
  }
}

Classification classify(const LatticeDescriptor& desc) {
  Classification result;
  result.rank2_count = desc.rank2_count();
  std::vector<SquareClass2> classes;
  for (const Quat& q : desc.rank1()) {
    SquareClass2 c = square_class_2(reduced_norm(q));
    if (c == SquareClass2::from_representative(-1)) {
      throw std::domain_error("a pure quaternion cannot have norm class -1");
    }
    if (std::find(classes.begin(), classes.end(), c) == classes.end()) {
      classes.push_back(c);
    }
  }
  std::sort(classes.begin(), classes.end(), [](SquareClass2 lhs, SquareClass2 rhs) {
    return canonical_index(lhs) < canonical_index(rhs);
  });
  result.norm_classes = std::move(classes);
  if (desc.rank1().size() >= 2) {
    long best = 0;
    bool have = false;
    for (size_t m = 0; m + 1 < desc.rank1().size(); ++m) {
      long gap = d_valuation(desc.rank1()[m + 1]) - d_valuation(desc.rank1()[m]);
      if (!have || gap < best) {
        best = gap;
        have = true;
      }
    }
    result.mu = best;
  }
  return result;
}

TableVerdict spinor_image_with_row(const LatticeDescriptor& desc) {
  Classification cl = classify(desc);
  if (cl.rank2_count != 0) {
    return {SpinorImage::full(), "rank2-component"};
  }
  if (cl.norm_classes.size() > 1) {
    return {SpinorImage::full(), "mixed-norm-classes"};
  }
  SquareClass2 cls = cl.norm_classes.front();
  const Quat& a1 = desc.rank1().front();
  SquareClass2 d = square_class_2(-reduced_norm(a1));
  if (cls == SquareClass2::from_representative(-5)) {
    return {SpinorImage::norm_group(d), "minimal-defect-class"};
  }
  if (cls.is_unit_class()) {
    if (cl.mu.has_value() && *cl.mu < kNu8) {
      return {SpinorImage::full(), "unit-class-small-gap"};
    }
    return {SpinorImage::norm_group(d), "unit-class-large-gap"};
  }
  if (cl.mu.has_value() && *cl.mu <= kNu16) {
    return {SpinorImage::full(), "prime-class-small-gap"};
  }
  return {SpinorImage::norm_group(d), "prime-class-large-gap"};
}

SpinorImage spinor_image(const LatticeDescriptor& desc) {
  return spinor_image_with_row(desc).image;
}

}  // namespace quatspin
