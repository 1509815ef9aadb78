#include "quatspin/padic2.hpp"

#include <ostream>
#include <stdexcept>

namespace quatspin {

namespace {

bool is_prime(const Int& p) {
  if (p < 2) return false;
  return mpz_probab_prime_p(p.get_mpz_t(), 40) != 0;
}

void require_nonzero(const Rat& x, const char* what) {
  if (is_zero(x)) throw std::domain_error(std::string(what) + " of zero");
}

// eps(u) = (u-1)/2 mod 2 for odd u in [0,8).
int eps8(unsigned long u) { return (u == 3 || u == 7) ? 1 : 0; }

// omega(u) = (u^2-1)/8 mod 2 for odd u in [0,8).
int omega8(unsigned long u) { return (u == 3 || u == 5) ? 1 : 0; }

// Legendre symbol of the unit part of x at the odd prime p.
int legendre_unit(const Rat& x, const Int& p) {
  Int n, d;
  mpz_remove(n.get_mpz_t(), x.get_num().get_mpz_t(), p.get_mpz_t());
  mpz_remove(d.get_mpz_t(), x.get_den().get_mpz_t(), p.get_mpz_t());
  return mpz_legendre(n.get_mpz_t(), p.get_mpz_t()) *
         mpz_legendre(d.get_mpz_t(), p.get_mpz_t());
}

}  // namespace

SquareClass2 SquareClass2::from_representative(int rep) {
  switch (rep) {
    case 1:
    case 5:
    case -1:
    case -5:
    case 2:
    case 10:
    case -2:
    case -10:
      return SquareClass2(rep);
    default:
      throw std::invalid_argument("not a canonical square-class representative: " +
                                  std::to_string(rep));
  }
}

SquareClass2 operator*(SquareClass2 lhs, SquareClass2 rhs) {
  return square_class_2(Rat(lhs.rep_) * Rat(rhs.rep_));
}

const std::array<SquareClass2, 8>& SquareClass2::all() {
  static const std::array<SquareClass2, 8> classes = {
      SquareClass2(1),  SquareClass2(5),  SquareClass2(-1), SquareClass2(-5),
      SquareClass2(2),  SquareClass2(10), SquareClass2(-2), SquareClass2(-10)};
  return classes;
}

std::ostream& operator<<(std::ostream& os, SquareClass2 c) {
  return os << c.representative();
}

long vp(const Rat& x, const Int& p) {
  require_nonzero(x, "valuation");
  if (!is_prime(p)) {
    throw std::invalid_argument("valuation requires a prime, got " + to_string(p));
  }
  Int tmp;
  long vnum = static_cast<long>(
      mpz_remove(tmp.get_mpz_t(), x.get_num().get_mpz_t(), p.get_mpz_t()));
  long vden = static_cast<long>(
      mpz_remove(tmp.get_mpz_t(), x.get_den().get_mpz_t(), p.get_mpz_t()));
  return vnum - vden;
}

Int unit_part_mod(const Rat& x, const Int& p, unsigned k) {
  require_nonzero(x, "unit part");
  if (!is_prime(p)) {
    throw std::invalid_argument("unit_part_mod requires a prime, got " + to_string(p));
  }
  if (k == 0) throw std::invalid_argument("unit_part_mod requires k >= 1");
  Int n, d;
  mpz_remove(n.get_mpz_t(), x.get_num().get_mpz_t(), p.get_mpz_t());
  mpz_remove(d.get_mpz_t(), x.get_den().get_mpz_t(), p.get_mpz_t());
  Int modulus;
  mpz_pow_ui(modulus.get_mpz_t(), p.get_mpz_t(), k);
  Int dinv;
  if (mpz_invert(dinv.get_mpz_t(), d.get_mpz_t(), modulus.get_mpz_t()) == 0) {
    throw std::logic_error("denominator not invertible after removing p-powers");
  }
  Int r = n * dinv;
  mpz_mod(r.get_mpz_t(), r.get_mpz_t(), modulus.get_mpz_t());
  return r;
}

SquareClass2 square_class_2(const Rat& x) {
  require_nonzero(x, "square class");
  long v = vp(x, 2);
  unsigned long u = unit_part_mod(x, 2, 3).get_ui();
  int rep;
  switch (u) {
    case 1: rep = 1; break;
    case 3: rep = -5; break;
    case 5: rep = 5; break;
    default: rep = -1; break;  // u == 7
  }
  if ((v % 2 + 2) % 2 == 1) rep *= 2;
  return SquareClass2::from_representative(rep);
}

bool is_square_2(const Rat& x) {
  return square_class_2(x) == SquareClass2::from_representative(1);
}

UnitDefectClass classify_unit_defect(const Rat& u) {
  require_nonzero(u, "quadratic defect");
  if (vp(u, 2) != 0) throw std::invalid_argument("classify_unit_defect: not a unit");
  switch (unit_part_mod(u, 2, 3).get_ui()) {
    case 1: return UnitDefectClass::kSquare;
    case 5: return UnitDefectClass::kMinimalDefect;
    default: return UnitDefectClass::kNonMinimal;
  }
}

int hilbert_2(const Rat& a, const Rat& b) {
  require_nonzero(a, "Hilbert symbol");
  require_nonzero(b, "Hilbert symbol");
  long alpha = vp(a, 2);
  long beta = vp(b, 2);
  unsigned long u = unit_part_mod(a, 2, 3).get_ui();
  unsigned long v = unit_part_mod(b, 2, 3).get_ui();
  long e = eps8(u) * eps8(v) + alpha * omega8(v) + beta * omega8(u);
  return (e % 2 + 2) % 2 == 0 ? 1 : -1;
}

int hilbert_p(const Rat& a, const Rat& b, const Int& p) {
  require_nonzero(a, "Hilbert symbol");
  require_nonzero(b, "Hilbert symbol");
  if (p == 2 || !is_prime(p)) {
    throw std::invalid_argument("hilbert_p requires an odd prime, got " + to_string(p));
  }
  long alpha = vp(a, p);
  long beta = vp(b, p);
  int eps_p = mpz_fdiv_ui(p.get_mpz_t(), 4) == 3 ? 1 : 0;
  int result = 1;
  if ((alpha & 1) && (beta & 1) && eps_p) result = -result;
  if ((beta & 1) && legendre_unit(a, p) < 0) result = -result;
  if ((alpha & 1) && legendre_unit(b, p) < 0) result = -result;
  return result;
}

int hilbert_real(const Rat& a, const Rat& b) {
  require_nonzero(a, "Hilbert symbol");
  require_nonzero(b, "Hilbert symbol");
  return (sgn(a) < 0 && sgn(b) < 0) ? -1 : 1;
}

}  // namespace quatspin
