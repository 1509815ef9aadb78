#include "quatspin/quatalg.hpp"

#include <algorithm>
#include <cstdlib>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <utility>

namespace quatspin {

namespace {

// Element x + y*w of Q_2[w], w^2 = w + delta.
struct KjElem {
  Rat x;
  Rat y;
};

KjElem kj_mul(const KjElem& lhs, const KjElem& rhs, const Rat& delta) {
  // (a + bw)(c + dw) = (ac + delta*bd) + (ad + bc + bd) w
  return {lhs.x * rhs.x + delta * lhs.y * rhs.y,
          lhs.x * rhs.y + lhs.y * rhs.x + lhs.y * rhs.y};
}

KjElem kj_conj(const KjElem& e) { return {e.x + e.y, -e.y}; }

void require_same_params(const Quat& x, const Quat& y) {
  if (!(x.params() == y.params())) {
    throw std::invalid_argument("quaternions live in different algebras");
  }
}

}  // namespace

AlgebraParams::AlgebraParams(Rat pi_in, Rat delta_in)
    : pi(std::move(pi_in)), delta(std::move(delta_in)) {
  if (is_zero(pi) || vp(pi, 2) != 1) {
    throw std::invalid_argument("algebra parameter pi must be a prime of Q_2 (v_2 = 1)");
  }
  if (is_zero(delta) || vp(delta, 2) != 0) {
    throw std::invalid_argument("algebra parameter delta must be a 2-adic unit");
  }
}

const AlgebraParams& canonical_params() {
  static const AlgebraParams params(2, 1);
  return params;
}

Quat::Quat(AlgebraParams params, Rat a, Rat b, Rat c, Rat d)
    : params_(std::move(params)),
      a_(std::move(a)),
      b_(std::move(b)),
      c_(std::move(c)),
      d_(std::move(d)) {}

bool Quat::is_zero() const {
  return quatspin::is_zero(a_) && quatspin::is_zero(b_) && quatspin::is_zero(c_) &&
         quatspin::is_zero(d_);
}

bool Quat::is_integral() const {
  for (const Rat* coord : {&a_, &b_, &c_, &d_}) {
    if (!quatspin::is_zero(*coord) && vp(*coord, 2) < 0) return false;
  }
  return true;
}

bool operator==(const Quat& x, const Quat& y) {
  return x.params_ == y.params_ && x.a_ == y.a_ && x.b_ == y.b_ && x.c_ == y.c_ &&
         x.d_ == y.d_;
}

Quat operator+(const Quat& x, const Quat& y) {
  require_same_params(x, y);
  return Quat(x.params(), x.a() + y.a(), x.b() + y.b(), x.c() + y.c(), x.d() + y.d());
}

Quat operator-(const Quat& x, const Quat& y) {
  require_same_params(x, y);
  return Quat(x.params(), x.a() - y.a(), x.b() - y.b(), x.c() - y.c(), x.d() - y.d());
}

Quat operator-(const Quat& x) {
  return Quat(x.params(), -x.a(), -x.b(), -x.c(), -x.d());
}

Quat operator*(const Quat& x, const Quat& y) {
  require_same_params(x, y);
  const Rat& pi = x.params().pi;
  const Rat& delta = x.params().delta;
  // q = x0 + i x1:  (x0 + i x1)(y0 + i y1)
  //               = (x0 y0 + pi conj(x1) y1) + i (conj(x0) y1 + x1 y0)
  KjElem x0{x.a(), x.b()}, x1{x.c(), x.d()};
  KjElem y0{y.a(), y.b()}, y1{y.c(), y.d()};
  KjElem scalar_part = kj_mul(x0, y0, delta);
  KjElem cross = kj_mul(kj_conj(x1), y1, delta);
  scalar_part.x += pi * cross.x;
  scalar_part.y += pi * cross.y;
  KjElem i_part = kj_mul(kj_conj(x0), y1, delta);
  KjElem i_part2 = kj_mul(x1, y0, delta);
  i_part.x += i_part2.x;
  i_part.y += i_part2.y;
  return Quat(x.params(), scalar_part.x, scalar_part.y, i_part.x, i_part.y);
}

Quat operator*(const Rat& s, const Quat& x) {
  return Quat(x.params(), s * x.a(), s * x.b(), s * x.c(), s * x.d());
}

Quat conj(const Quat& q) {
  return Quat(q.params(), q.a() + q.b(), -q.b(), -q.c(), -q.d());
}

Rat reduced_trace(const Quat& q) { return 2 * q.a() + q.b(); }

Rat reduced_norm(const Quat& q) {
  const Rat& delta = q.params().delta;
  Rat n0 = q.a() * q.a() + q.a() * q.b() - delta * q.b() * q.b();
  Rat n1 = q.c() * q.c() + q.c() * q.d() - delta * q.d() * q.d();
  return n0 - q.params().pi * n1;
}

long d_valuation(const Quat& q) {
  if (q.is_zero()) throw std::domain_error("valuation of the zero quaternion");
  return vp(reduced_norm(q), 2);
}

bool is_pure(const Quat& q) {
  return !q.is_zero() && quatspin::is_zero(reduced_trace(q));
}

Quat z_of(const Quat& a1, const Quat& r) {
  require_same_params(a1, r);
  if (!is_pure(a1)) throw std::invalid_argument("z_of requires a pure axis a1");
  return a1 - r * a1 * conj(r);
}

Quat pure_with_norm_class(const AlgebraParams& params, SquareClass2 target) {
  if (target == SquareClass2::from_representative(-1)) {
    throw std::domain_error("a pure quaternion cannot have norm class -1");
  }
  const bool unit_target = target.is_unit_class();
  const Int modulus = unit_target ? 8 : 16;
  Int want(target.representative());
  mpz_mod(want.get_mpz_t(), want.get_mpz_t(), modulus.get_mpz_t());

  // Integral pure elements are exactly b*j + c*i + d*i*w with integer
  // coordinates; j = 2w - 1.
  for (long box = 0; box <= 64; ++box) {
    for (long b = -box; b <= box; ++b) {
      for (long c = -box; c <= box; ++c) {
        for (long d = -box; d <= box; ++d) {
          if (std::max({labs(b), labs(c), labs(d)}) != box) continue;
          Quat q(params, Rat(-b), Rat(2 * b), Rat(c), Rat(d));
          if (q.is_zero()) continue;
          Rat n = reduced_norm(q);
          if (is_zero(n)) continue;
          if (unit_target && vp(n, 2) != 0) continue;
          Int residue = n.get_num();
          mpz_mod(residue.get_mpz_t(), residue.get_mpz_t(), modulus.get_mpz_t());
          if (residue != want) continue;
          if (!(square_class_2(n) == target)) continue;
          return q;
        }
      }
    }
  }
  throw std::domain_error("no pure quaternion with the requested norm class in search box");
}

IPiConstruction i_pi(const AlgebraParams& params, const Rat& prime_pi) {
  if (is_zero(prime_pi) || vp(prime_pi, 2) != 1) {
    throw std::invalid_argument("i_pi requires a prime of Q_2 (v_2 = 1)");
  }
  // q = i * alpha with alpha = a + b*w in Z[w]; N(q) = -pi * n(alpha), so we
  // need n(alpha) = prime_pi / pi, a unit.
  const Rat ratio = prime_pi / params.pi;
  const Rat& delta = params.delta;
  auto norm_kj = [&](long a, long b) { return Rat(a) * a + Rat(a) * b - delta * b * b; };

  for (int pass = 0; pass < 2; ++pass) {
    const bool exact = pass == 0;
    for (long box = 0; box <= 64; ++box) {
      for (long a = -box; a <= box; ++a) {
        for (long b = -box; b <= box; ++b) {
          if (std::max(labs(a), labs(b)) != box) continue;
          Rat n = norm_kj(a, b);
          if (is_zero(n)) continue;
          if (exact) {
            if (n != ratio) continue;
          } else {
            // Class match with N(i*alpha) = -prime_pi (mod 16), i.e.
            // n(alpha) = ratio (mod 8) for unit ratio.
            if (vp(n, 2) != 0) continue;
            Rat rel = n / ratio;
            if (vp(rel, 2) != 0 || unit_part_mod(rel, 2, 3) != 1) continue;
          }
          Quat q = Quat::unit_i(params) * Quat(params, Rat(a), Rat(b), 0, 0);
          return IPiConstruction{q, Rat(a), Rat(b), exact};
        }
      }
    }
  }
  throw std::domain_error("no integral alpha with n(alpha) in the required class");
}

std::string to_text(const Quat& q) {
  if (q.is_zero()) return "0";
  static const char* const basis[] = {"", "*w", "*i", "*i*w"};
  const Rat* coords[] = {&q.a(), &q.b(), &q.c(), &q.d()};
  std::ostringstream os;
  bool first = true;
  for (int k = 0; k < 4; ++k) {
    if (is_zero(*coords[k])) continue;
    Rat v = *coords[k];
    if (first) {
      first = false;
    } else {
      os << (sgn(v) < 0 ? " - " : " + ");
      if (sgn(v) < 0) v = -v;
    }
    os << to_string(v) << basis[k];
  }
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const Quat& q) { return os << to_text(q); }

}  // namespace quatspin
