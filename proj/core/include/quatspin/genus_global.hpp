#pragma once

#include <map>
#include <optional>
#include <vector>

#include "quatspin/padic2.hpp"
#include "quatspin/rat.hpp"

namespace quatspin {

// Per-place generators of the local spinor images, the input to the
// spinor-class-field computation. Finite places map to nonempty lists of
// nonzero rationals generating H_v modulo squares. An absent odd prime
// defaults to the unit classes Z_p^* Q_p^{*2}; an absent 2 likewise defaults
// to the unit classes. When positive_at_infinity is set, the class field is
// constrained to be real ("inf": "positive"), so only positive discriminants
// are admitted.
struct LocalImageSpec {
  std::map<long, std::vector<Rat>> places;
  bool positive_at_infinity = false;
};

// Least positive quadratic nonresidue mod the odd prime p; its class
// generates the unit classes of Q_p^*/Q_p^{*2}.
long least_positive_nonresidue(long p);

// Whether Q(sqrt(m)) lies inside the spinor class field described by spec:
// every generator of every local image must be a local norm from
// Q_v(sqrt(m)), checked through Hilbert symbols at the places of spec and at
// every prime dividing 2m (defaults applied for absent places), plus the
// positivity constraint at infinity. Requires m squarefree, m != 0, 1;
// throws std::invalid_argument otherwise.
bool field_in_sigma(const LocalImageSpec& spec, const Int& m);

struct ClassFieldResult {
  // Independent squarefree discriminants m with Q(sqrt(m)) inside the class
  // field; pairwise independent modulo squares.
  std::vector<long> discriminants;
  // [Sigma : Q] = 2^(number of independent discriminants).
  unsigned long spinor_genera = 1;
  // Present only when the caller asserts that class and spinor genus
  // coincide (indefinite archimedean condition); then it equals
  // spinor_genera.
  std::optional<unsigned long> class_number;
};

// Tests every squarefree m != 1 composed of -1 and the support primes.
// Requires support to contain 2 and every prime of the spec.
ClassFieldResult spinor_class_field(const LocalImageSpec& spec,
                                    const std::vector<long>& support,
                                    bool class_equals_spinor_genus = false);

}  // namespace quatspin
