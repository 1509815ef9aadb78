#include "quatspin/spinor_search.hpp"

#include <algorithm>
#include <array>
#include <thread>
#include <utility>
#include <vector>

namespace quatspin {

namespace {

constexpr uint64_t kNoWitness = ~0ull;

uint64_t pack_candidate(uint64_t a, uint64_t b, uint64_t c, uint64_t d) {
  return (a << 48) | (b << 32) | (c << 16) | d;
}

bool fits_small_int(const Rat& x, int64_t* out) {
  if (x.get_den() != 1) return false;
  if (!x.get_num().fits_slong_p()) return false;
  *out = x.get_num().get_si();
  return true;
}

// ---------------------------------------------------------------------------
// Fast scan path: int64 coordinates, __int128 norms. Valid for any bound
// exponent u <= 16 given a normalized instance with small integer data; the
// coordinates of z stay below 2^{2u+10} and its norm below 2^{90}.
// ---------------------------------------------------------------------------

struct Q64 {
  int64_t a = 0, b = 0, c = 0, d = 0;
};

struct FastAlgebra {
  int64_t pi = 0, delta = 0;
};

Q64 qmul64(const Q64& x, const Q64& y, const FastAlgebra& alg) {
  auto kj = [&](int64_t ax, int64_t ay, int64_t bx, int64_t by) {
    return std::pair<int64_t, int64_t>{ax * bx + alg.delta * ay * by,
                                       ax * by + ay * bx + ay * by};
  };
  auto [s0, s1] = kj(x.a, x.b, y.a, y.b);
  auto [t0, t1] = kj(x.c + x.d, -x.d, y.c, y.d);
  auto [u0, u1] = kj(x.a + x.b, -x.b, y.c, y.d);
  auto [v0, v1] = kj(x.c, x.d, y.a, y.b);
  return Q64{s0 + alg.pi * t0, s1 + alg.pi * t1, u0 + v0, u1 + v1};
}

Q64 qsub64(const Q64& x, const Q64& y) {
  return Q64{x.a - y.a, x.b - y.b, x.c - y.c, x.d - y.d};
}

Q64 qadd64(const Q64& x, const Q64& y) {
  return Q64{x.a + y.a, x.b + y.b, x.c + y.c, x.d + y.d};
}

__int128 qnorm128(const Q64& q, const FastAlgebra& alg) {
  __int128 n0 = static_cast<__int128>(q.a) * q.a + static_cast<__int128>(q.a) * q.b -
                static_cast<__int128>(alg.delta) * q.b * q.b;
  __int128 n1 = static_cast<__int128>(q.c) * q.c + static_cast<__int128>(q.c) * q.d -
                static_cast<__int128>(alg.delta) * q.d * q.d;
  return n0 - static_cast<__int128>(alg.pi) * n1;
}

int ctz128(__int128 x) {
  auto u = static_cast<unsigned __int128>(x);
  auto lo = static_cast<uint64_t>(u);
  if (lo != 0) return __builtin_ctzll(lo);
  return 64 + __builtin_ctzll(static_cast<uint64_t>(u >> 64));
}

struct FastInstance {
  FastAlgebra alg;
  Q64 a1;
  int64_t na1 = 0;
  int v_na1 = 0;
  long need_vz = 0;  // 2t + v_2(N(a1))
  // pass_hilbert[v_2(N(1-r)) mod 2][N(1-r) unit part mod 8] <=> symbol is -1.
  bool pass_hilbert[2][8] = {};
};

bool build_fast_instance(const KStarInstance& inst, FastInstance* out) {
  int64_t pi, delta, a, b, c, d;
  if (!fits_small_int(inst.a1().params().pi, &pi)) return false;
  if (!fits_small_int(inst.a1().params().delta, &delta)) return false;
  if (!fits_small_int(inst.a1().a(), &a)) return false;
  if (!fits_small_int(inst.a1().b(), &b)) return false;
  if (!fits_small_int(inst.a1().c(), &c)) return false;
  if (!fits_small_int(inst.a1().d(), &d)) return false;
  // Keep the overflow analysis honest: with data below 2^10 and coordinates
  // below 2^16 every intermediate fits __int128 with room to spare.
  for (int64_t v : {pi, delta, a, b, c, d}) {
    if (v > 1024 || v < -1024) return false;
  }
  out->alg = FastAlgebra{pi, delta};
  out->a1 = Q64{a, b, c, d};
  __int128 na1 = qnorm128(out->a1, out->alg);
  out->na1 = static_cast<int64_t>(na1);
  out->v_na1 = ctz128(na1);
  out->need_vz = 2l * inst.t() + out->v_na1;

  auto eps = [](int u) { return (u == 3 || u == 7) ? 1 : 0; };
  auto omega = [](int u) { return (u == 3 || u == 5) ? 1 : 0; };
  int64_t g = -out->na1;
  int vg = __builtin_ctzll(static_cast<uint64_t>(g));
  int ug = static_cast<int>((g >> vg) & 7);
  for (int parity = 0; parity < 2; ++parity) {
    for (int u8 = 1; u8 < 8; u8 += 2) {
      int e = (eps(u8) & eps(ug)) ^ (parity & omega(ug)) ^ ((vg & 1) & omega(u8));
      out->pass_hilbert[parity][u8] = e == 1;
    }
  }
  return true;
}

struct SlabResult {
  bool found = false;
  int64_t b = 0, c = 0, d = 0;
};

// Scans the slab with fixed outer coordinate a in lexicographic (b, c, d)
// order and stops at the first passing candidate, which is the slab minimum.
// Returns false when the scan was interrupted.
bool scan_slab(const FastInstance& fi, int u, int64_t slab_a, SearchControl* control,
               uint64_t max_candidates, SlabResult* result) {
  const int64_t limit = int64_t{1} << u;
  const int64_t pi = fi.alg.pi;
  const int64_t delta = fi.alg.delta;
  const Q64 unit_i{0, 0, 1, 0};
  const Q64 unit_iw{0, 0, 0, 1};

  for (int64_t b = 0; b < limit; ++b) {
    const Q64 w{slab_a, b, 0, 0};
    const Q64 wbar{slab_a + b, -b, 0, 0};
    const Q64 wa = qmul64(w, fi.a1, fi.alg);
    const Q64 ia = qmul64(unit_i, fi.a1, fi.alg);
    const Q64 iwa = qmul64(unit_iw, fi.a1, fi.alg);
    const Q64 k0 = qsub64(fi.a1, qmul64(wa, wbar, fi.alg));
    const Q64 kc = qsub64(qmul64(wa, unit_i, fi.alg), qmul64(ia, wbar, fi.alg));
    const Q64 kd = qsub64(qmul64(wa, unit_iw, fi.alg), qmul64(iwa, wbar, fi.alg));
    const Q64 kcc = qmul64(ia, unit_i, fi.alg);
    const Q64 kcd = qadd64(qmul64(ia, unit_iw, fi.alg), qmul64(iwa, unit_i, fi.alg));
    const Q64 kdd = qmul64(iwa, unit_iw, fi.alg);
    // N(1-r) = P(a-1, b) - pi P(c, d) with P(x, y) = x^2 + xy - delta y^2.
    const int64_t h0 =
        (slab_a - 1) * (slab_a - 1) + (slab_a - 1) * b - delta * b * b;

    for (int64_t c = 0; c < limit; ++c) {
      const int64_t e0a = k0.a + c * (kc.a + c * kcc.a);
      const int64_t e0b = k0.b + c * (kc.b + c * kcc.b);
      const int64_t e0c = k0.c + c * (kc.c + c * kcc.c);
      const int64_t e0d = k0.d + c * (kc.d + c * kcc.d);
      const int64_t e1a = kd.a + c * kcd.a;
      const int64_t e1b = kd.b + c * kcd.b;
      const int64_t e1c = kd.c + c * kcd.c;
      const int64_t e1d = kd.d + c * kcd.d;
      const int64_t g0 = h0 - pi * c * c;
      const int64_t g1 = -pi * c;
      const int64_t g2 = pi * delta;

      for (int64_t d = 0; d < limit; ++d) {
        const int64_t n1r = g0 + d * (g1 + g2 * d);
        if (n1r == 0) continue;  // r = 1, no rotation
        const int v1 = __builtin_ctzll(static_cast<uint64_t>(n1r));
        if (!fi.pass_hilbert[v1 & 1][(n1r >> v1) & 7]) continue;

        const Q64 z{e0a + d * (e1a + d * kdd.a), e0b + d * (e1b + d * kdd.b),
                    e0c + d * (e1c + d * kdd.c), e0d + d * (e1d + d * kdd.d)};
        const __int128 nz = qnorm128(z, fi.alg);
        if (nz == 0) continue;  // degenerate: r centralizes a1
        const int vz = ctz128(nz);
        if (vz < fi.need_vz) continue;
        const __int128 s = nz * fi.na1;
        if (s < 0) continue;
        const int vs = vz + fi.v_na1;
        if ((vs & 1) != 0) continue;
        if (((s >> vs) & 7) != 1) continue;

        if (control != nullptr) {
          control->scanned.fetch_add(static_cast<uint64_t>(d) + 1,
                                     std::memory_order_relaxed);
        }
        result->found = true;
        result->b = b;
        result->c = c;
        result->d = d;
        return true;
      }

      if (control != nullptr) {
        uint64_t done = control->scanned.fetch_add(static_cast<uint64_t>(limit),
                                                   std::memory_order_relaxed) +
                        static_cast<uint64_t>(limit);
        if (control->cancel.load(std::memory_order_relaxed)) return false;
        if (max_candidates != 0 && done >= max_candidates) return false;
      }
    }
  }
  return true;
}

// Exact fallback used when the instance does not fit the int64 fast path.
// Same candidate order; single-threaded.
bool scan_exact_slab(const KStarInstance& inst, int u, int64_t slab_a,
                     SearchControl* control, uint64_t max_candidates,
                     SlabResult* result) {
  const int64_t limit = int64_t{1} << u;
  const AlgebraParams& params = inst.a1().params();
  for (int64_t b = 0; b < limit; ++b) {
    for (int64_t c = 0; c < limit; ++c) {
      for (int64_t d = 0; d < limit; ++d) {
        Quat r(params, Rat(slab_a), Rat(b), Rat(c), Rat(d));
        if (kstar_check(inst, r).pass()) {
          if (control != nullptr) {
            control->scanned.fetch_add(static_cast<uint64_t>(d) + 1,
                                       std::memory_order_relaxed);
          }
          result->found = true;
          result->b = b;
          result->c = c;
          result->d = d;
          return true;
        }
      }
      if (control != nullptr) {
        uint64_t done = control->scanned.fetch_add(static_cast<uint64_t>(limit),
                                                   std::memory_order_relaxed) +
                        static_cast<uint64_t>(limit);
        if (control->cancel.load(std::memory_order_relaxed)) return false;
        if (max_candidates != 0 && done >= max_candidates) return false;
      }
    }
  }
  return true;
}

}  // namespace

KStarInstance::KStarInstance(Quat a1, int t) : a1_(std::move(a1)), t_(t) {
  if (!is_pure(a1_)) {
    throw std::invalid_argument("k-star instance requires a nonzero pure axis");
  }
  if (t_ < 1) throw std::invalid_argument("k-star instance requires t >= 1");
}

bool KStarInstance::normalized() const {
  return a1_.is_integral() && d_valuation(a1_) <= 1;
}

KStarReport kstar_check(const KStarInstance& inst, const Quat& r) {
  if (!(r.params() == inst.a1().params())) {
    throw std::invalid_argument("candidate lives in a different algebra");
  }
  if (!r.is_integral()) {
    throw std::invalid_argument("candidate rotation parameter must be integral");
  }
  KStarReport report;
  const Quat one = Quat::one(r.params());
  report.n1mr = reduced_norm(one - r);
  const Quat z = z_of(inst.a1(), r);
  report.nz = reduced_norm(z);
  const Rat na1 = reduced_norm(inst.a1());
  if (!is_zero(report.n1mr)) {
    report.spinor_class = square_class_2(na1 * report.n1mr);
  }
  if (is_zero(report.n1mr) || z.is_zero()) {
    report.degenerate = true;
    return report;
  }
  report.cond_hilbert = hilbert_2(report.n1mr, -na1) == -1;
  report.cond_square = is_square_2(report.nz * na1);
  report.cond_integral = vp(report.nz, 2) >= 2l * inst.t() + vp(na1, 2);
  return report;
}

const char* to_string(BoundJustification j) {
  switch (j) {
    case BoundJustification::kTheorem:
      return "theorem:u=t+6e";
    case BoundJustification::kRefinedUnitNorm:
      return "refined:unit-norm,t in {3,4},u=t+3";
    default:
      return "heuristic:unproven-bound";
  }
}

int default_bound(const KStarInstance& inst, bool refined) {
  return inst.t() + (refined ? 3 : 6);
}

BoundJustification classify_bound(const KStarInstance& inst, int u) {
  if (u >= inst.t() + 6) return BoundJustification::kTheorem;
  SquareClass2 cls = square_class_2(reduced_norm(inst.a1()));
  const bool unit_norm = cls == SquareClass2::from_representative(1) ||
                         cls == SquareClass2::from_representative(5);
  if (u >= inst.t() + 3 && unit_norm && (inst.t() == 3 || inst.t() == 4)) {
    return BoundJustification::kRefinedUnitNorm;
  }
  return BoundJustification::kHeuristic;
}

SearchOutcome search_witness(const KStarInstance& inst, const SearchOptions& options) {
  const int u = options.bound_exponent;
  if (u < 1 || u > 16) {
    throw std::invalid_argument("bound exponent must lie in [1, 16]");
  }
  if (!inst.normalized()) {
    throw std::invalid_argument(
        "search requires a normalized instance (integral axis, valuation <= 1)");
  }
  const int jobs = std::clamp(options.jobs, 1, 64);

  SearchControl local_control;
  SearchControl* control = options.control != nullptr ? options.control : &local_control;

  FastInstance fi;
  const bool fast = build_fast_instance(inst, &fi);

  const auto start = std::chrono::steady_clock::now();
  const int64_t slabs = int64_t{1} << u;
  std::atomic<int64_t> next_slab{0};
  std::atomic<uint64_t> best{kNoWitness};
  std::atomic<bool> interrupted{false};

  auto worker = [&]() {
    for (;;) {
      const int64_t a = next_slab.fetch_add(1, std::memory_order_relaxed);
      if (a >= slabs) return;
      if (pack_candidate(static_cast<uint64_t>(a), 0, 0, 0) >
          best.load(std::memory_order_relaxed)) {
        return;  // no candidate in this or any later slab can improve
      }
      SlabResult result;
      const bool completed =
          fast ? scan_slab(fi, u, a, control, options.max_candidates, &result)
               : scan_exact_slab(inst, u, a, control, options.max_candidates, &result);
      if (!completed) {
        interrupted.store(true, std::memory_order_relaxed);
        return;
      }
      if (result.found) {
        const uint64_t packed =
            pack_candidate(static_cast<uint64_t>(a), static_cast<uint64_t>(result.b),
                           static_cast<uint64_t>(result.c),
                           static_cast<uint64_t>(result.d));
        uint64_t current = best.load(std::memory_order_relaxed);
        while (packed < current &&
               !best.compare_exchange_weak(current, packed, std::memory_order_relaxed)) {
        }
      }
    }
  };

  if (jobs == 1 || !fast) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<size_t>(jobs));
    for (int k = 0; k < jobs; ++k) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }

  SearchOutcome outcome;
  outcome.bound_exponent = u;
  outcome.elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(
      std::chrono::steady_clock::now() - start);
  if (interrupted.load()) {
    outcome.aborted = true;
    outcome.candidates_scanned = control->scanned.load(std::memory_order_relaxed);
    return outcome;
  }
  const uint64_t packed = best.load(std::memory_order_relaxed);
  if (packed == kNoWitness) {
    outcome.candidates_scanned = u == 16 ? ~0ull : uint64_t{1} << (4 * u);
    return outcome;
  }
  const uint64_t a = packed >> 48;
  const uint64_t b = (packed >> 32) & 0xffff;
  const uint64_t c = (packed >> 16) & 0xffff;
  const uint64_t d = packed & 0xffff;
  Quat witness(inst.a1().params(), Rat(static_cast<long>(a)), Rat(static_cast<long>(b)),
               Rat(static_cast<long>(c)), Rat(static_cast<long>(d)));
  if (!kstar_check(inst, witness).pass()) {
    throw std::logic_error("scan produced a candidate the exact check rejects");
  }
  outcome.witness = witness;
  outcome.candidates_scanned = (((a << u | b) << u | c) << u | d) + 1;
  return outcome;
}

Decision decide_H_binary(const KStarInstance& inst, const SearchOptions& options) {
  SearchOutcome outcome = search_witness(inst, options);
  if (outcome.aborted) throw SearchAbortedError(outcome.candidates_scanned);
  Decision decision{SpinorImage::full(), std::move(outcome),
                    classify_bound(inst, options.bound_exponent)};
  if (!decision.outcome.witness.has_value()) {
    decision.image = SpinorImage::norm_group(square_class_2(-reduced_norm(inst.a1())));
  }
  return decision;
}

Quat table_representative(SquareClass2 norm_class) {
  const AlgebraParams& p = canonical_params();
  switch (norm_class.representative()) {
    case 5:
      return Quat(p, -1, 2, -1, 2);  // j + ij
    case 1:
      return Quat(p, -1, 2, 1, 0);  // i + j
    case -5:
      return Quat(p, -1, 2, 0, 2);  // j + 2iw
    case -2:
      return Quat(p, 0, 0, 1, 0);  // i
    case 2:
      return Quat(p, 0, 0, 0, 1);  // iw
    case -10:
      return Quat(p, 0, 0, 2, 1);  // 2i + iw
    case 10:
      return Quat(p, 0, 0, 1, 3);  // i + 3iw
    default:
      throw std::invalid_argument("no pure representative for class -1");
  }
}

namespace {

void check(bool ok, const char* what, WitnessRowResult* row) {
  if (!ok) {
    row->pass = false;
    if (!row->detail.empty()) row->detail += "; ";
    row->detail += what;
  }
}

// Rows with nu(1-r) pinned and the strict unit condition
// N(z) N(2^t q)^{-1} in Z_2^*.
struct StrictRow {
  int cls;
  int t;
  long r[4];
  long expected_nu_1mr;
};

constexpr StrictRow kStrictRows[] = {
    {5, 3, {-1, 0, -4, -4}, 2},   {5, 3, {1, -14, -1, -10}, 1},
    {5, 4, {-1, 0, -8, -8}, 2},   {5, 4, {1, -6, -13, -6}, 1},
    {1, 3, {-1, 0, 0, -4}, 2},    {1, 3, {1, -2, -1, 0}, 1},
    {1, 4, {-1, 0, 0, -8}, 2},    {1, 4, {-1, -6, -3, 0}, 1},
};

// Unit-class k-star witnesses at t = 2 with all table values pinned.
struct UnitKStarRow {
  int cls;
  long r[4];
  long n1mr;
  long z[4];
  long nzna1;
};

constexpr UnitKStarRow kUnitKStarRows[] = {
    {5, {1, 0, 0, 2}, 8, {-4, 8, -16, -28}, 400},
    {1, {1, 0, 2, 2}, -8, {4, -8, 12, 12}, 2576},
};

// Prime-class k-star witnesses at t = 4: r = 15 + 8w for every i_pi, with
// z = i_pi * (-592 + 304 w) and N(1-r) = 244 pinned.
struct PrimeKStarRow {
  int pi_target;
  long nzna1;
};

constexpr PrimeKStarRow kPrimeKStarRows[] = {
    {2, 312320},
    {-2, 312320},
    {10, 7808000},
    {-10, 7808000},
};

}  // namespace

std::vector<WitnessRowResult> verify_witness_tables() {
  std::vector<WitnessRowResult> rows;
  const AlgebraParams& params = canonical_params();

  for (const StrictRow& row : kStrictRows) {
    const Quat q = table_representative(SquareClass2::from_representative(row.cls));
    const Quat r(params, Rat(row.r[0]), Rat(row.r[1]), Rat(row.r[2]), Rat(row.r[3]));
    const Quat z = z_of(q, r);
    const Rat nq = reduced_norm(q);
    const Rat nz = reduced_norm(z);
    WitnessRowResult out{"unit-strict",
                         "class " + std::to_string(row.cls) + ", t=" +
                             std::to_string(row.t) + ", nu(1-r)=" +
                             std::to_string(row.expected_nu_1mr),
                         r,
                         z,
                         reduced_norm(Quat::one(params) - r),
                         nz * nq,
                         true,
                         ""};
    check(d_valuation(Quat::one(params) - r) == row.expected_nu_1mr,
          "valuation of 1-r differs", &out);
    check(is_square_2(out.nzna1), "N(z)N(q) not a square", &out);
    check(vp(nz, 2) == 2l * row.t + vp(nq, 2), "N(z)N(2^t q)^{-1} not a unit", &out);
    rows.push_back(std::move(out));
  }

  for (const UnitKStarRow& row : kUnitKStarRows) {
    const Quat q = table_representative(SquareClass2::from_representative(row.cls));
    const Quat r(params, Rat(row.r[0]), Rat(row.r[1]), Rat(row.r[2]), Rat(row.r[3]));
    const KStarInstance inst(q, 2);
    const Quat z = z_of(q, r);
    WitnessRowResult out{"unit-kstar",
                         "class " + std::to_string(row.cls) + ", t=2",
                         r,
                         z,
                         reduced_norm(Quat::one(params) - r),
                         reduced_norm(z) * reduced_norm(q),
                         true,
                         ""};
    check(out.n1mr == Rat(row.n1mr), "N(1-r) differs from table", &out);
    check(out.z == Quat(params, Rat(row.z[0]), Rat(row.z[1]), Rat(row.z[2]),
                        Rat(row.z[3])),
          "z differs from table", &out);
    check(out.nzna1 == Rat(row.nzna1), "N(z)N(a1) differs from table", &out);
    check(kstar_check(inst, r).pass(), "k-star conditions fail", &out);
    rows.push_back(std::move(out));
  }

  for (const PrimeKStarRow& row : kPrimeKStarRows) {
    const SquareClass2 cls = square_class_2(Rat(-row.pi_target));
    const Quat a1 = table_representative(cls);
    const Quat r(params, 15, 8, 0, 0);
    const KStarInstance inst(a1, 4);
    const Quat z = z_of(a1, r);
    WitnessRowResult out{"prime-kstar",
                         "pi=" + std::to_string(row.pi_target) + ", t=4",
                         r,
                         z,
                         reduced_norm(Quat::one(params) - r),
                         reduced_norm(z) * reduced_norm(a1),
                         true,
                         ""};
    check(reduced_norm(a1) == Rat(-row.pi_target), "N(i_pi) != -pi", &out);
    check(out.n1mr == Rat(244), "N(1-r) differs from table", &out);
    check(out.z == a1 * Quat(params, -592, 304, 0, 0), "z differs from table", &out);
    check(out.nzna1 == Rat(row.nzna1), "N(z)N(a1) differs from table", &out);
    check(kstar_check(inst, r).pass(), "k-star conditions fail", &out);
    rows.push_back(std::move(out));
  }

  return rows;
}

bool all_rows_pass(const std::vector<WitnessRowResult>& rows) {
  return std::all_of(rows.begin(), rows.end(),
                     [](const WitnessRowResult& row) { return row.pass; });
}

}  // namespace quatspin
