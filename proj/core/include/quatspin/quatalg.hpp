#pragma once

#include <iosfwd>
#include <string>

#include "quatspin/padic2.hpp"
#include "quatspin/rat.hpp"

namespace quatspin {

// Parameters of the quaternion division algebra D = (pi, Delta / Q_2) with
// i^2 = pi, j^2 = Delta = 1 + 4*delta and ij = -ji. Requires v_2(pi) = 1 and
// v_2(delta) = 0; any unit delta makes Delta a unit of minimal quadratic
// defect.
struct AlgebraParams {
  Rat pi;
  Rat delta;

  AlgebraParams(Rat pi_in, Rat delta_in);

  friend bool operator==(const AlgebraParams&, const AlgebraParams&) = default;
};

// Returns (2, 1), i.e. D = (2, 5 / Q_2).
const AlgebraParams& canonical_params();

// Element of D in coordinates over the ordered basis {1, w, i, i*w} of the
// maximal order, w = (1+j)/2. Coordinates are unrestricted rationals;
// integrality is a queryable predicate, not a type constraint.
class Quat {
 public:
  Quat(AlgebraParams params, Rat a, Rat b, Rat c, Rat d);

  static Quat zero(const AlgebraParams& p) { return Quat(p, 0, 0, 0, 0); }
  static Quat one(const AlgebraParams& p) { return Quat(p, 1, 0, 0, 0); }
  static Quat scalar(const AlgebraParams& p, Rat s) { return Quat(p, std::move(s), 0, 0, 0); }
  static Quat omega(const AlgebraParams& p) { return Quat(p, 0, 1, 0, 0); }
  static Quat unit_i(const AlgebraParams& p) { return Quat(p, 0, 0, 1, 0); }
  static Quat unit_iw(const AlgebraParams& p) { return Quat(p, 0, 0, 0, 1); }
  // j = 2w - 1.
  static Quat unit_j(const AlgebraParams& p) { return Quat(p, -1, 2, 0, 0); }

  const AlgebraParams& params() const { return params_; }
  const Rat& a() const { return a_; }
  const Rat& b() const { return b_; }
  const Rat& c() const { return c_; }
  const Rat& d() const { return d_; }

  bool is_zero() const;
  // True iff all four coordinates have nonnegative 2-adic valuation, i.e. the
  // element lies in the maximal order.
  bool is_integral() const;

  friend bool operator==(const Quat&, const Quat&);

 private:
  AlgebraParams params_;
  Rat a_, b_, c_, d_;
};

Quat operator+(const Quat& x, const Quat& y);
Quat operator-(const Quat& x, const Quat& y);
Quat operator-(const Quat& x);
// Ring product, computed through the two-level form q = x0 + i*x1 with
// x0, x1 in Q_2[w], w^2 = w + delta and i*s = conj(s)*i.
// Throws std::invalid_argument on mismatched params.
Quat operator*(const Quat& x, const Quat& y);
Quat operator*(const Rat& s, const Quat& x);

// Canonical involution: (a, b, c, d) -> (a+b, -b, -c, -d).
Quat conj(const Quat& q);

// T(q) = 2a + b, the scalar part of q + conj(q).
Rat reduced_trace(const Quat& q);

// N(q) = a^2 + ab - delta b^2 - pi (c^2 + cd - delta d^2), the scalar
// q * conj(q). The closed form and the multiplication path are independent
// and cross-checked in the tests.
Rat reduced_norm(const Quat& q);

// nu(q) = v_2(N(q)); nu(i) = 1 and nu(2) = 2. Throws std::domain_error on 0.
long d_valuation(const Quat& q);

// True iff reduced_trace(q) = 0 and q != 0.
bool is_pure(const Quat& q);

// z = a1 - r * a1 * conj(r); pure whenever a1 is pure.
// Throws std::invalid_argument unless a1 is pure and params match.
Quat z_of(const Quat& a1, const Quat& r);

// Smallest integral pure quaternion q = b*j + c*i + d*i*w (scanned over
// growing coordinate boxes in a fixed order) whose norm matches the target
// class: for unit targets N(q) = rep (mod 8), for prime targets
// N(q) = rep (mod 16). The class -1 is unrepresentable by pure quaternions
// and throws std::domain_error.
Quat pure_with_norm_class(const AlgebraParams& params, SquareClass2 target);

// q = i * (alpha_a + alpha_b * w) with q^2 = prime_pi, i.e.
// N(q) = -prime_pi, exactly when an integer alpha exists; otherwise N(q) is
// -prime_pi times a square with N(q) = -prime_pi (mod 16).
struct IPiConstruction {
  Quat q;
  Rat alpha_a;
  Rat alpha_b;
  bool exact_norm;
};
IPiConstruction i_pi(const AlgebraParams& params, const Rat& prime_pi);

// Renders the element as "a + b*w + c*i + d*i*w" with exact rationals,
// omitting zero terms; the zero element renders as "0".
std::string to_text(const Quat& q);
std::ostream& operator<<(std::ostream& os, const Quat& q);

}  // namespace quatspin
