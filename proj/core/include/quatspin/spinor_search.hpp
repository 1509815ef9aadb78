#pragma once

#include <atomic>
#include <chrono>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "quatspin/quatalg.hpp"
#include "quatspin/spinor_table.hpp"

namespace quatspin {

// A binary decision instance: the pure axis a1 and the exponent t with
// mu(Lambda) = nu(pi^t) = 2t for Lambda = <a1> | <pi^t a1>.
class KStarInstance {
 public:
  // Throws std::invalid_argument unless a1 is a nonzero pure quaternion and
  // t >= 1.
  KStarInstance(Quat a1, int t);

  const Quat& a1() const { return a1_; }
  int t() const { return t_; }

  // The normalization assumed by the search theorems: a1 integral with
  // D-valuation 0 or 1. Scale-invariant checks accept any instance;
  // searches and decisions require a normalized one.
  bool normalized() const;

 private:
  Quat a1_;
  int t_;
};

// Result of checking the three conditions on a candidate rotation r:
//   cond_hilbert:  (N(1-r), -N(a1))_2 = -1
//   cond_square:   N(z) N(a1) is a square, z = a1 - r a1 conj(r) != 0
//   cond_integral: v_2(N(z)) >= 2t + v_2(N(a1))
// A candidate with 1-r = 0 or z = 0 produces no rotation; it is reported
// all-false with the degenerate flag set.
struct KStarReport {
  bool cond_hilbert = false;
  bool cond_square = false;
  bool cond_integral = false;
  bool degenerate = false;
  Rat n1mr;  // N(1-r)
  Rat nz;    // N(z)
  // Class of N(a1) N(1-r), the spinor norm of the induced rotation.
  SquareClass2 spinor_class = SquareClass2::from_representative(1);

  bool pass() const {
    return !degenerate && cond_hilbert && cond_square && cond_integral;
  }
};

// Throws std::invalid_argument unless r is integral with matching params.
KStarReport kstar_check(const KStarInstance& inst, const Quat& r);

// How a "no witness below the bound" outcome is justified:
//  kTheorem:         u >= t + 6e (e = 1), valid for every instance
//  kRefinedUnitNorm: u >= t + 3, backed only for unit-norm axes with
//                    t in {3, 4}
//  kHeuristic:       anything smaller; the outcome is indicative, not proven
enum class BoundJustification { kTheorem, kRefinedUnitNorm, kHeuristic };

const char* to_string(BoundJustification j);

// t + 6 (refined = false) or t + 3 (refined = true).
int default_bound(const KStarInstance& inst, bool refined);

// The strongest justification the pair (inst, u) supports.
BoundJustification classify_bound(const KStarInstance& inst, int u);

// Shared observable state for a running search: a monotone progress counter
// and a cooperative cancellation flag.
struct SearchControl {
  std::atomic<uint64_t> scanned{0};
  std::atomic<bool> cancel{false};
};

struct SearchOptions {
  int bound_exponent = 0;  // u; candidates are (a,b,c,d) in [0, 2^u)^4
  int jobs = 1;
  // Abort once this many candidates have been examined (0 = no limit).
  uint64_t max_candidates = 0;
  SearchControl* control = nullptr;  // optional; owned by the caller
};

struct SearchOutcome {
  std::optional<Quat> witness;
  int bound_exponent = 0;
  // Lexicographic rank of the witness when found, 2^{4u} when the space was
  // exhausted, and the actual progress count when aborted.
  uint64_t candidates_scanned = 0;
  std::chrono::milliseconds elapsed{0};
  bool aborted = false;
};

class SearchAbortedError : public std::runtime_error {
 public:
  explicit SearchAbortedError(uint64_t scanned)
      : std::runtime_error("search aborted after " + std::to_string(scanned) +
                           " candidates"),
        scanned_(scanned) {}
  uint64_t scanned() const { return scanned_; }

 private:
  uint64_t scanned_;
};

// Scans r = a + b*w + c*i + d*i*w over all (a,b,c,d) in [0, 2^u)^4 in
// lexicographic order (logically) and returns the smallest candidate passing
// kstar_check, or none. The result is independent of the parallelism level.
// Requires 1 <= u <= 16 and a normalized instance.
SearchOutcome search_witness(const KStarInstance& inst, const SearchOptions& options);

struct Decision {
  SpinorImage image;
  SearchOutcome outcome;
  BoundJustification justification;
};

// Full image if a witness exists below the bound, otherwise
// NormGroup(class(-N(a1))). An aborted search propagates as
// SearchAbortedError; no conclusion is emitted.
Decision decide_H_binary(const KStarInstance& inst, const SearchOptions& options);

// The named axes used throughout the verification tables, over the canonical
// algebra (2, 5/Q_2):
//   class 5   -> j + i*j        class 1   -> i + j
//   class -5  -> j + 2*i*w
//   class -2  -> i              class 2   -> i*w
//   class -10 -> 2*i + i*w      class 10  -> i + 3*i*w
// Throws std::invalid_argument for class -1.
Quat table_representative(SquareClass2 norm_class);

struct WitnessRowResult {
  std::string table;  // "unit-strict", "unit-kstar" or "prime-kstar"
  std::string label;
  Quat r;
  Quat z;
  Rat n1mr;
  Rat nzna1;
  bool pass = false;
  std::string detail;  // empty when the row passes
};

// Recomputes every row of the three built-in witness tables and reports
// pass/fail per row together with the recomputed N(1-r), z and N(z)N(a1).
std::vector<WitnessRowResult> verify_witness_tables();

bool all_rows_pass(const std::vector<WitnessRowResult>& rows);

}  // namespace quatspin
