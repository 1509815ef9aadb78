#include "quatspin/genus_global.hpp"

#include <algorithm>
#include <cstdlib>
#include <set>
#include <stdexcept>
#include <utility>

namespace quatspin {

namespace {

bool is_squarefree(const Int& m) {
  Int n = abs(m);
  if (n == 0) return false;
  for (Int f = 2; f * f <= n; ++f) {
    if (n % (f * f) == 0) return false;
    while (n % f == 0) n /= f;
  }
  return true;
}

std::set<long> prime_factors(const Int& m) {
  std::set<long> factors;
  Int n = abs(m);
  for (Int f = 2; f * f <= n; ++f) {
    if (n % f == 0) {
      factors.insert(f.get_si());
      while (n % f == 0) n /= f;
    }
  }
  if (n > 1) factors.insert(n.get_si());
  return factors;
}

std::vector<Rat> default_generators(long p) {
  if (p == 2) return {Rat(5), Rat(-1)};
  return {Rat(least_positive_nonresidue(p))};
}

}  // namespace

long least_positive_nonresidue(long p) {
  if (p < 3 || p % 2 == 0) {
    throw std::invalid_argument("nonresidue lookup requires an odd prime");
  }
  Int prime(p);
  for (long n = 2; n < p; ++n) {
    Int candidate(n);
    if (mpz_legendre(candidate.get_mpz_t(), prime.get_mpz_t()) == -1) return n;
  }
  throw std::logic_error("no nonresidue below p");
}

bool field_in_sigma(const LocalImageSpec& spec, const Int& m) {
  if (m == 0 || m == 1) {
    throw std::invalid_argument("discriminant must be a squarefree integer != 0, 1");
  }
  if (!is_squarefree(m)) {
    throw std::invalid_argument("discriminant must be squarefree, got " + to_string(m));
  }
  if (spec.positive_at_infinity && m < 0) return false;

  std::set<long> places_to_check;
  for (const auto& [p, gens] : spec.places) {
    if (gens.empty()) throw std::invalid_argument("empty generator list in local spec");
    places_to_check.insert(p);
  }
  places_to_check.insert(2);
  for (long p : prime_factors(m)) places_to_check.insert(p);

  const Rat mq(m);
  for (long p : places_to_check) {
    auto it = spec.places.find(p);
    const std::vector<Rat> gens =
        it != spec.places.end() ? it->second : default_generators(p);
    for (const Rat& g : gens) {
      int symbol = p == 2 ? hilbert_2(g, mq) : hilbert_p(g, mq, Int(p));
      if (symbol != 1) return false;
    }
  }
  return true;
}

ClassFieldResult spinor_class_field(const LocalImageSpec& spec,
                                    const std::vector<long>& support,
                                    bool class_equals_spinor_genus) {
  std::vector<long> primes = support;
  std::sort(primes.begin(), primes.end());
  primes.erase(std::unique(primes.begin(), primes.end()), primes.end());
  if (std::find(primes.begin(), primes.end(), 2l) == primes.end()) {
    throw std::invalid_argument("support must contain 2");
  }
  for (const auto& [p, gens] : spec.places) {
    if (std::find(primes.begin(), primes.end(), p) == primes.end()) {
      throw std::invalid_argument("support must contain every prime of the spec, missing " +
                                  std::to_string(p));
    }
  }

  // All squarefree products of -1 and the support primes, skipping 1.
  std::vector<long> admitted;
  const size_t n = primes.size();
  for (unsigned long mask = 0; mask < (1ul << n); ++mask) {
    for (int sign = 1; sign >= -1; sign -= 2) {
      long m = sign;
      for (size_t k = 0; k < n; ++k) {
        if (mask & (1ul << k)) m *= primes[k];
      }
      if (m == 1) continue;
      if (field_in_sigma(spec, Int(m))) admitted.push_back(m);
    }
  }
  std::sort(admitted.begin(), admitted.end(), [](long lhs, long rhs) {
    return std::make_pair(labs(lhs), lhs < 0) < std::make_pair(labs(rhs), rhs < 0);
  });

  // Extract independent generators over GF(2); the admitted set is a group
  // modulo squares, so greedy elimination on exponent vectors suffices.
  auto exponent_vector = [&](long m) {
    unsigned long bits = m < 0 ? 1ul : 0ul;
    long n0 = labs(m);
    for (size_t k = 0; k < n; ++k) {
      if (n0 % primes[k] == 0) bits |= 1ul << (k + 1);
    }
    return bits;
  };
  ClassFieldResult result;
  std::vector<unsigned long> slot(n + 1, 0);  // basis vector per leading bit
  size_t rank = 0;
  for (long m : admitted) {
    unsigned long vec = exponent_vector(m);
    bool independent = false;
    for (size_t bit = n + 1; bit-- > 0;) {
      if ((vec >> bit & 1ul) == 0) continue;
      if (slot[bit] == 0) {
        slot[bit] = vec;
        independent = true;
        break;
      }
      vec ^= slot[bit];
    }
    if (independent) {
      ++rank;
      result.discriminants.push_back(m);
    }
  }
  result.spinor_genera = 1ul << rank;
  if (class_equals_spinor_genus) result.class_number = result.spinor_genera;
  return result;
}

}  // namespace quatspin
