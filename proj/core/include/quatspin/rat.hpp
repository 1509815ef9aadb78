#pragma once

#include <gmpxx.h>

#include <string>

namespace quatspin {

// Exact arbitrary-precision integers and rationals. Every predicate in this
// library depends only on a valuation and a unit residue, both of which are
// computable exactly from a rational; no truncated p-adic representation
// exists anywhere.
using Int = mpz_class;
using Rat = mpq_class;

inline bool is_zero(const Rat& x) { return sgn(x) == 0; }

// Parses "n" or "n/d" in base 10. Throws std::invalid_argument on malformed
// input or a zero denominator. The result is in lowest terms.
Rat rat_from_string(const std::string& s);

std::string to_string(const Rat& x);
std::string to_string(const Int& x);

// 2^e as an exact rational, e may be negative.
Rat pow2(long e);

}  // namespace quatspin
