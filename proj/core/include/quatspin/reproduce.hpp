#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "quatspin/genus_global.hpp"
#include "quatspin/spinor_search.hpp"
#include "quatspin/spinor_table.hpp"

namespace quatspin {

// The full verification suite behind `reproduce`: the fast tier runs the
// witness tables, the small-exponent searches and the class-field examples;
// the full tier adds the exhaustive non-existence scans and the slow halves
// of the dispatcher/search cross-validation.
enum class Tier { kFast, kFull };

struct CheckResult {
  std::string id;
  bool pass = false;
  std::string details;
};

struct ReproduceOptions {
  Tier tier = Tier::kFast;
  int jobs = 1;
  SearchControl* control = nullptr;
  // Invoked as each check finishes, for streamed reporting.
  std::function<void(const CheckResult&)> on_check;
};

// Runs the suite. Aborted searches propagate as SearchAbortedError.
std::vector<CheckResult> run_reproduction(const ReproduceOptions& options);

bool all_checks_pass(const std::vector<CheckResult>& checks);

// <a1> | <2^t a1>.
LatticeDescriptor binary_lattice(const Quat& a1, int t);

// The curated descriptor set exercising every dispatch row, both valuation
// boundaries, the mu = infinity convention, mixed classes and rank-2
// components.
struct DispatchCase {
  std::string name;
  LatticeDescriptor desc;
  SpinorImage expected;
  std::string expected_row;
};
std::vector<DispatchCase> dispatcher_truth_table();

// The two worked class-number examples: a unit-class lattice with gap nu(8)
// whose class field is Q (class number 1), and the prime-class family
// <i> | <2^t i> whose class field is Q for t <= 4 and Q(sqrt(2)) with class
// number 2 for t >= 5. The level-2 generators are produced by the dispatcher,
// so these exercise the lattice-to-class-number pipeline end to end.
struct ClassFieldExample {
  std::string name;
  LocalImageSpec spec;
  std::vector<long> support;
  bool class_equals_spinor_genus = false;
  std::vector<long> expected_discriminants;
  unsigned long expected_spinor_genera = 1;
  std::optional<unsigned long> expected_class_number;
};
std::vector<ClassFieldExample> class_field_examples();

}  // namespace quatspin
