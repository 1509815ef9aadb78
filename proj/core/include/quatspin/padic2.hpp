#pragma once

#include <array>
#include <iosfwd>

#include "quatspin/rat.hpp"

namespace quatspin {

// One of the eight classes of Q_2^*/Q_2^{*2}, held as its canonical
// representative in {1, 5, -1, -5, 2, 10, -2, -10}. The class of a nonzero
// rational is determined by the parity of its 2-adic valuation together with
// its unit part mod 8, so equality of classes is a plain value comparison.
class SquareClass2 {
 public:
  // Throws std::invalid_argument unless rep is one of the eight canonical
  // representatives.
  static SquareClass2 from_representative(int rep);

  int representative() const { return rep_; }
  bool is_unit_class() const { return rep_ % 2 != 0; }

  friend SquareClass2 operator*(SquareClass2 lhs, SquareClass2 rhs);
  friend bool operator==(SquareClass2 lhs, SquareClass2 rhs) = default;

  // All eight classes in canonical order.
  static const std::array<SquareClass2, 8>& all();

 private:
  explicit SquareClass2(int rep) : rep_(rep) {}
  int rep_;
};

std::ostream& operator<<(std::ostream& os, SquareClass2 c);

// Classification of a 2-adic unit by its quadratic defect:
//   Square        <=>  u = 1 (mod 8)
//   MinimalDefect <=>  u = 5 (mod 8)
//   NonMinimal    <=>  u = +-3 (mod 8)
enum class UnitDefectClass { kSquare, kMinimalDefect, kNonMinimal };

// p-adic valuation of a nonzero rational. p = 2 is allowed.
// Throws std::domain_error for x = 0 and std::invalid_argument for p not
// prime.
long vp(const Rat& x, const Int& p);

// (x / p^vp(x)) mod p^k, computed as numerator * denominator^{-1} in Z/p^k
// after removing the p-powers from both. Result lies in [0, p^k).
Int unit_part_mod(const Rat& x, const Int& p, unsigned k);

SquareClass2 square_class_2(const Rat& x);

// True iff v_2(x) is even and the unit part of x is 1 mod 8; equivalent to
// square_class_2(x) == 1 (Local Square Theorem at this precision).
bool is_square_2(const Rat& x);

// Requires v_2(u) = 0, otherwise throws std::invalid_argument.
UnitDefectClass classify_unit_defect(const Rat& u);

// 2-adic Hilbert symbol. For a = 2^alpha u, b = 2^beta v the result is
// (-1)^{eps(u)eps(v) + alpha*omega(v) + beta*omega(u)} with
// eps(u) = (u-1)/2 mod 2 and omega(u) = (u^2-1)/8 mod 2.
int hilbert_2(const Rat& a, const Rat& b);

// Hilbert symbol at an odd prime p. For a = p^alpha u, b = p^beta v the
// result is (-1)^{alpha beta eps(p)} (u|p)^beta (v|p)^alpha.
int hilbert_p(const Rat& a, const Rat& b, const Int& p);

// Hilbert symbol at the real place: -1 iff both arguments are negative.
int hilbert_real(const Rat& a, const Rat& b);

}  // namespace quatspin
