#pragma once

#include <cstdint>
#include <cstdlib>
#include <random>
#include <vector>

#include "quatspin/quatalg.hpp"
#include "quatspin/rat.hpp"

namespace quatspin::testing {

// ---------------------------------------------------------------------------
// Independent solvability oracle for the 2-adic Hilbert symbol.
//
// Decides whether z^2 = a x^2 + b y^2 has a solution mod 2^k with not all of
// x, y, z even. A primitive solution has an odd coordinate, and each parity
// case reduces to a bounded residue check:
//
//   z odd:  exists x, y with a x^2 + b y^2 = 1 (mod 8), since the odd squares
//           mod 2^k (k >= 3) are exactly the residues 1 mod 8;
//   x odd:  exists y, z with z^2 - b y^2 = a (mod 2^m), m = min(k, v2(a)+3),
//           because a * (odd square) ranges over a + 2^{v2(a)+3} Z exactly;
//   y odd:  symmetric with b.
//
// The reductions are exercised against direct triple enumeration in the test
// suite for small k.
// ---------------------------------------------------------------------------

inline std::vector<uint32_t> squares_mod_2k(int m) {
  const uint32_t mod_mask = (1u << m) - 1;
  std::vector<bool> seen(1u << m, false);
  std::vector<uint32_t> list;
  for (uint32_t t = 0; t < (1u << m); ++t) {
    uint32_t s = (t * t) & mod_mask;
    if (!seen[s]) {
      seen[s] = true;
      list.push_back(s);
    }
  }
  return list;
}

inline int v2_of(long long n) { return __builtin_ctzll(static_cast<uint64_t>(n)); }

inline bool primitive_solution_mod_2k(long long a, long long b, int k) {
  auto reduce = [](long long v, int m) -> uint32_t {
    const long long mod = 1ll << m;
    return static_cast<uint32_t>(((v % mod) + mod) % mod);
  };

  // z odd.
  {
    const uint32_t a8 = reduce(a, 3), b8 = reduce(b, 3);
    for (uint32_t sx : {0u, 1u, 4u}) {
      for (uint32_t sy : {0u, 1u, 4u}) {
        if ((a8 * sx + b8 * sy) % 8 == 1) return true;
      }
    }
  }

  // x odd (and symmetrically y odd): z^2 - (other) y^2 = coefficient
  // (mod 2^m).
  auto odd_coef_case = [&](long long coef, long long other, int m) {
    const uint32_t mask = (1u << m) - 1;
    const uint32_t coef_m = reduce(coef, m);
    const uint32_t other_m = reduce(other, m);
    const std::vector<uint32_t> squares = squares_mod_2k(m);
    std::vector<bool> is_square(1u << m, false);
    for (uint32_t s : squares) is_square[s] = true;
    for (uint32_t sy : squares) {
      // z^2 = coef + other * sy (mod 2^m)
      if (is_square[(coef_m + other_m * sy) & mask]) return true;
    }
    return false;
  };

  if (odd_coef_case(a, b, std::min(k, v2_of(a) + 3))) return true;
  if (odd_coef_case(b, a, std::min(k, v2_of(b) + 3))) return true;
  return false;
}

// The oracle at the modulus the equivalence property pins.
inline bool hilbert2_solvability_oracle(long long a, long long b) {
  return primitive_solution_mod_2k(a, b, v2_of(a) + v2_of(b) + 6);
}

// Direct triple enumeration for small k; validates the case reduction.
inline bool primitive_solution_direct(long long a, long long b, int k) {
  const long long mod = 1ll << k;
  auto reduce = [&](long long v) { return ((v % mod) + mod) % mod; };
  for (long long x = 0; x < mod; ++x) {
    for (long long y = 0; y < mod; ++y) {
      const long long rhs = reduce(a * x * x + b * y * y);
      for (long long z = 0; z < mod; ++z) {
        if (x % 2 == 0 && y % 2 == 0 && z % 2 == 0) continue;
        if (reduce(z * z) == rhs) return true;
      }
    }
  }
  return false;
}

// ---------------------------------------------------------------------------
// Fixed-seed generators.
// ---------------------------------------------------------------------------

class Rng {
 public:
  explicit Rng(uint64_t seed) : engine_(seed) {}

  long integer(long lo, long hi) {
    return std::uniform_int_distribution<long>(lo, hi)(engine_);
  }

  long nonzero_integer(long bound) {
    for (;;) {
      long v = integer(-bound, bound);
      if (v != 0) return v;
    }
  }

  Rat nonzero_rational(long bound) {
    Rat r(nonzero_integer(bound), integer(1, bound));
    r.canonicalize();
    return r;
  }

  // Nonzero rational with support in the fixed prime list, for product
  // formula checks.
  Rat smooth_rational() {
    static const long primes[] = {2, 3, 5, 7, 11, 13};
    Rat value = integer(0, 1) == 0 ? 1 : -1;
    for (long p : primes) {
      long e = integer(-3, 3);
      Rat f = 1;
      for (long k = 0; k < labs(e); ++k) f *= p;
      value *= e >= 0 ? f : 1 / f;
    }
    return value;
  }

  Quat integral_quat(const AlgebraParams& params, long bound) {
    return Quat(params, Rat(integer(-bound, bound)), Rat(integer(-bound, bound)),
                Rat(integer(-bound, bound)), Rat(integer(-bound, bound)));
  }

  Quat nonzero_integral_quat(const AlgebraParams& params, long bound) {
    for (;;) {
      Quat q = integral_quat(params, bound);
      if (!q.is_zero()) return q;
    }
  }

  Quat rational_quat(const AlgebraParams& params, long bound) {
    return Quat(params, nonzero_rational(bound), nonzero_rational(bound),
                nonzero_rational(bound), nonzero_rational(bound));
  }

 private:
  std::mt19937_64 engine_;
};

inline const std::vector<long> kSmoothPrimes = {2, 3, 5, 7, 11, 13};

}  // namespace quatspin::testing
