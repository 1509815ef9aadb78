#include "quatspin/rat.hpp"

#include <stdexcept>

namespace quatspin {

Rat rat_from_string(const std::string& s) {
  mpq_class q;
  if (s.empty() || mpq_set_str(q.get_mpq_t(), s.c_str(), 10) != 0) {
    throw std::invalid_argument("malformed rational literal: '" + s + "'");
  }
  if (sgn(q.get_den()) == 0) {
    throw std::invalid_argument("zero denominator in rational literal: '" + s + "'");
  }
  q.canonicalize();
  return q;
}

std::string to_string(const Rat& x) { return x.get_str(); }

std::string to_string(const Int& x) { return x.get_str(); }

Rat pow2(long e) {
  Rat r = 1;
  if (e >= 0) {
    mpz_ui_pow_ui(r.get_num_mpz_t(), 2, static_cast<unsigned long>(e));
  } else {
    mpz_ui_pow_ui(r.get_den_mpz_t(), 2, static_cast<unsigned long>(-e));
  }
  return r;
}

}  // namespace quatspin
