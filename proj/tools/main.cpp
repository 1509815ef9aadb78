#include <CLI11.hpp>

#include <atomic>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>

#include "quatspin/json_io.hpp"
#include "quatspin/reproduce.hpp"
#include "quatspin/spinor_search.hpp"

namespace {

using namespace quatspin;

constexpr int kExitOk = 0;
constexpr int kExitMismatch = 1;
constexpr int kExitUsage = 2;
constexpr int kExitAborted = 3;

int env_jobs() {
  const char* env = std::getenv("QUATSPIN_JOBS");
  if (env == nullptr) return 1;
  int v = std::atoi(env);
  return v >= 1 ? v : 1;
}

// Accepts an inline JSON literal or a path to a JSON file.
json parse_json_arg(const std::string& arg, const char* what) {
  std::string text = arg;
  if (arg.empty()) throw std::invalid_argument(std::string(what) + ": empty argument");
  if (arg[0] != '{' && arg[0] != '[') {
    std::ifstream in(arg);
    if (!in) {
      throw std::invalid_argument(std::string(what) + ": cannot open file '" + arg + "'");
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    text = ss.str();
  }
  try {
    return json::parse(text);
  } catch (const json::parse_error& err) {
    throw std::invalid_argument(std::string(what) + ": " + err.what());
  }
}

// A quaternion argument: JSON (inline or file) or a square-class token, in
// which case the canonical table representative with that norm class is used.
Quat parse_axis(const std::string& arg) {
  if (!arg.empty() && (arg[0] == '{' || std::ifstream(arg).good())) {
    return quat_from_json(parse_json_arg(arg, "axis"));
  }
  try {
    int rep = std::stoi(arg);
    return table_representative(SquareClass2::from_representative(rep));
  } catch (const std::invalid_argument&) {
    throw;
  } catch (const std::exception&) {
    throw std::invalid_argument("axis: expected quaternion JSON or a class token, got '" +
                                arg + "'");
  }
}

// Heartbeat lines on stderr while a scan runs, so long searches stay
// observable without polluting the machine-readable output.
class ProgressHeartbeat {
 public:
  ProgressHeartbeat(SearchControl* control, bool enabled) {
    if (!enabled) return;
    thread_ = std::thread([this, control] {
      uint64_t last = 0;
      while (!stop_.load(std::memory_order_relaxed)) {
        std::this_thread::sleep_for(std::chrono::milliseconds(500));
        uint64_t now = control->scanned.load(std::memory_order_relaxed);
        if (now != last) {
          std::cerr << "progress scanned=" << now << std::endl;
          last = now;
        }
      }
    });
  }
  ~ProgressHeartbeat() {
    stop_.store(true, std::memory_order_relaxed);
    if (thread_.joinable()) thread_.join();
  }

 private:
  std::atomic<bool> stop_{false};
  std::thread thread_;
};

void print_report(bool json_format, const std::string& command, const json& inputs,
                  const json& verdict, const json& citations,
                  std::chrono::milliseconds elapsed, const std::string& text) {
  if (json_format) {
    json report{{"schema", 1},
                {"command", command},
                {"inputs", inputs},
                {"verdict", verdict},
                {"citations", citations},
                {"timing", {{"elapsed_ms", std::to_string(elapsed.count())}}}};
    std::cout << report.dump(2) << "\n";
  } else {
    std::cout << text;
  }
}

struct CommonFlags {
  std::string format = "text";
  int jobs = env_jobs();
  bool progress = false;

  bool json_format() const { return format == "json"; }
  void attach(CLI::App* cmd) {
    cmd->add_option("--format", format, "Output format")
        ->check(CLI::IsMember({"json", "text"}));
    cmd->add_option("--jobs", jobs, "Worker threads for searches")
        ->check(CLI::PositiveNumber);
    cmd->add_flag("--progress", progress, "Emit scanned-count heartbeats on stderr");
  }
};

json kstar_verdict_json(const KStarReport& report) {
  return json{{"pass", report.pass()},
              {"degenerate", report.degenerate},
              {"cond_hilbert", report.cond_hilbert},
              {"cond_square", report.cond_square},
              {"cond_integral", report.cond_integral},
              {"n1mr", to_string(report.n1mr)},
              {"nz", to_string(report.nz)},
              {"spinor_class", std::to_string(report.spinor_class.representative())}};
}

int run_kstar_check(const std::string& a1_arg, int t, const std::string& r_arg,
                    const CommonFlags& flags) {
  const auto start = std::chrono::steady_clock::now();
  const Quat a1 = parse_axis(a1_arg);
  const Quat r = quat_from_json(parse_json_arg(r_arg, "rotation parameter"));
  const KStarInstance inst(a1, t);
  const KStarReport report = kstar_check(inst, r);
  const auto elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(
      std::chrono::steady_clock::now() - start);

  std::ostringstream text;
  text << (report.pass() ? "pass" : "fail") << (report.degenerate ? " (degenerate)" : "")
       << "\n"
       << "  hilbert:  " << (report.cond_hilbert ? "yes" : "no") << "\n"
       << "  square:   " << (report.cond_square ? "yes" : "no") << "\n"
       << "  integral: " << (report.cond_integral ? "yes" : "no") << "\n"
       << "  N(1-r) = " << to_string(report.n1mr) << ", N(z) = " << to_string(report.nz)
       << ", spinor class " << report.spinor_class << "\n";
  print_report(flags.json_format(), "kstar-check",
               json{{"a1", quat_to_json(a1)}, {"t", std::to_string(t)},
                    {"r", quat_to_json(r)}},
               kstar_verdict_json(report), json::array({"binary-kstar-conditions"}),
               elapsed, text.str());
  return kExitOk;
}

int run_search(const std::string& a1_arg, int t, int bound, bool refined,
               uint64_t max_candidates, const CommonFlags& flags) {
  const Quat a1 = parse_axis(a1_arg);
  const KStarInstance inst(a1, t);
  const int u = bound > 0 ? bound : default_bound(inst, refined);

  SearchControl control;
  ProgressHeartbeat heartbeat(&control, flags.progress);
  SearchOptions options;
  options.bound_exponent = u;
  options.jobs = flags.jobs;
  options.max_candidates = max_candidates;
  options.control = &control;

  const SearchOutcome outcome = search_witness(inst, options);
  if (outcome.aborted) throw SearchAbortedError(outcome.candidates_scanned);
  const BoundJustification justification = classify_bound(inst, u);
  const SpinorImage image =
      outcome.witness.has_value()
          ? SpinorImage::full()
          : SpinorImage::norm_group(square_class_2(-reduced_norm(a1)));

  json verdict{{"witness",
                outcome.witness.has_value() ? quat_to_json(*outcome.witness) : json()},
               {"bound", std::to_string(u)},
               {"justification", to_string(justification)},
               {"scanned", std::to_string(outcome.candidates_scanned)},
               {"elapsed_ms", std::to_string(outcome.elapsed.count())},
               {"decision", image_to_json(image)}};

  std::ostringstream text;
  if (outcome.witness.has_value()) {
    text << "witness r = " << *outcome.witness << "\nH(Lambda) = Q_2^*\n";
  } else {
    text << "no witness below 2^" << u << "\nH(Lambda) = " << image << "  ["
         << to_string(justification) << "]\n";
  }
  text << "scanned " << outcome.candidates_scanned << " candidates in "
       << outcome.elapsed.count() << " ms\n";
  print_report(flags.json_format(), "search",
               json{{"a1", quat_to_json(a1)},
                    {"t", std::to_string(t)},
                    {"bound", std::to_string(u)}},
               verdict, json::array({"bounded-residue-search", to_string(justification)}),
               outcome.elapsed, text.str());
  return kExitOk;
}

// Golden-vector rows loaded from a JSON file:
// {"rows": [{"a1": <quat>, "t": 2, "r": <quat>,
//            "expect": {"n1mr": "8", "nzna1": "400"}}]}
int check_rows_file(const json& doc, bool json_format, json* verdict_out,
                    std::string* text_out) {
  if (!doc.is_object() || !doc.contains("rows") || !doc["rows"].is_array()) {
    throw std::invalid_argument("rows file: expected {\"rows\": [...]}");
  }
  int failures = 0;
  json results = json::array();
  std::ostringstream text;
  size_t index = 0;
  for (const json& row : doc["rows"]) {
    const Quat a1 = quat_from_json(row.at("a1"));
    const Quat r = quat_from_json(row.at("r"));
    const int t = row.at("t").is_string() ? std::stoi(row.at("t").get<std::string>())
                                          : row.at("t").get<int>();
    const KStarInstance inst(a1, t);
    const KStarReport report = kstar_check(inst, r);
    std::string mismatch;
    if (row.contains("expect")) {
      const json& expect = row["expect"];
      if (expect.contains("n1mr") && rat_from_json(expect["n1mr"]) != report.n1mr) {
        mismatch += "N(1-r) differs (got " + to_string(report.n1mr) + "); ";
      }
      if (expect.contains("nzna1") &&
          rat_from_json(expect["nzna1"]) != report.nz * reduced_norm(a1)) {
        mismatch += "N(z)N(a1) differs (got " +
                    to_string(report.nz * reduced_norm(a1)) + "); ";
      }
      if (expect.contains("pass") && expect["pass"].get<bool>() != report.pass()) {
        mismatch += std::string("pass flag differs (got ") +
                    (report.pass() ? "true" : "false") + "); ";
      }
    } else if (!report.pass()) {
      mismatch = "k-star conditions fail; ";
    }
    const bool ok = mismatch.empty();
    failures += ok ? 0 : 1;
    results.push_back(json{{"row", index}, {"pass", ok}, {"detail", mismatch}});
    text << (ok ? "ok  " : "FAIL") << " row " << index;
    if (!ok) text << "  " << mismatch;
    text << "\n";
    ++index;
  }
  if (!json_format) *text_out += text.str();
  (*verdict_out)["rows"] = results;
  (*verdict_out)["failures"] = std::to_string(failures);
  return failures;
}

int run_verify_tables(const std::string& rows_file, const CommonFlags& flags) {
  const auto start = std::chrono::steady_clock::now();
  int failures = 0;
  json verdict;
  std::string text;

  if (rows_file.empty()) {
    const auto rows = verify_witness_tables();
    json row_json = json::array();
    std::ostringstream os;
    for (const WitnessRowResult& row : rows) {
      failures += row.pass ? 0 : 1;
      row_json.push_back(json{{"table", row.table},
                              {"label", row.label},
                              {"pass", row.pass},
                              {"r", quat_to_json(row.r)},
                              {"n1mr", to_string(row.n1mr)},
                              {"nzna1", to_string(row.nzna1)},
                              {"detail", row.detail}});
      os << (row.pass ? "ok  " : "FAIL") << " [" << row.table << "] " << row.label;
      if (!row.pass) os << "  " << row.detail;
      os << "\n";
    }
    os << (failures == 0 ? "all witness rows verified\n"
                         : std::to_string(failures) + " rows deviate\n");
    text = os.str();
    verdict = json{{"rows", row_json}, {"failures", std::to_string(failures)}};
  } else {
    failures = check_rows_file(parse_json_arg(rows_file, "rows file"),
                               flags.json_format(), &verdict, &text);
  }

  const auto elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(
      std::chrono::steady_clock::now() - start);
  print_report(flags.json_format(), "verify-tables",
               rows_file.empty() ? json::object() : json{{"rows_file", rows_file}},
               verdict,
               json::array({"unit-strict", "unit-kstar", "prime-kstar"}), elapsed, text);
  return failures == 0 ? kExitOk : kExitMismatch;
}

int run_spinor_image(const std::string& lattice_arg, const CommonFlags& flags) {
  const auto start = std::chrono::steady_clock::now();
  const json lattice_json = parse_json_arg(lattice_arg, "lattice");
  const LatticeDescriptor desc = lattice_from_json(lattice_json);
  const TableVerdict verdict = spinor_image_with_row(desc);
  const auto elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(
      std::chrono::steady_clock::now() - start);

  json verdict_json = image_to_json(verdict.image);
  verdict_json["row"] = verdict.row;
  std::ostringstream text;
  text << "H(Lambda) = " << verdict.image << "  [" << verdict.row << "]\n";
  print_report(flags.json_format(), "spinor-image", lattice_to_json(desc), verdict_json,
               json::array({verdict.row}), elapsed, text.str());
  return kExitOk;
}

int run_class_field(const std::string& spec_arg, std::vector<long> support,
                    bool indefinite, const CommonFlags& flags) {
  const auto start = std::chrono::steady_clock::now();
  const LocalImageSpec spec = spec_from_json(parse_json_arg(spec_arg, "spec"));
  const ClassFieldResult result = spinor_class_field(spec, support, indefinite);
  const auto elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(
      std::chrono::steady_clock::now() - start);

  json gens = json::array();
  for (long m : result.discriminants) gens.push_back(std::to_string(m));
  json verdict{{"sigma_generators", gens},
               {"spinor_genera", std::to_string(result.spinor_genera)}};
  std::ostringstream text;
  text << "Sigma = Q";
  for (long m : result.discriminants) text << " (sqrt(" << m << "))";
  text << "\nspinor genera: " << result.spinor_genera << "\n";
  if (result.class_number.has_value()) {
    verdict["class_number"] = std::to_string(*result.class_number);
    text << "class number: " << *result.class_number << "\n";
  }
  print_report(flags.json_format(), "class-field", spec_to_json(spec), verdict,
               json::array({"quadratic-norm-membership"}), elapsed, text.str());
  return kExitOk;
}

int run_reproduce(const std::string& tier, const std::string& tables_file,
                  const CommonFlags& flags) {
  const auto start = std::chrono::steady_clock::now();
  SearchControl control;
  ProgressHeartbeat heartbeat(&control, flags.progress);

  ReproduceOptions options;
  options.tier = tier == "full" ? Tier::kFull : Tier::kFast;
  options.jobs = flags.jobs;
  options.control = &control;
  const bool json_format = flags.json_format();
  if (!json_format) {
    options.on_check = [](const CheckResult& check) {
      std::cout << (check.pass ? "ok  " : "FAIL") << " " << check.id;
      if (!check.details.empty()) std::cout << "  (" << check.details << ")";
      std::cout << "\n";
    };
  }

  const auto checks = run_reproduction(options);
  int failures = 0;
  json check_json = json::array();
  for (const CheckResult& check : checks) {
    failures += check.pass ? 0 : 1;
    check_json.push_back(
        json{{"id", check.id}, {"pass", check.pass}, {"details", check.details}});
  }

  json verdict{{"tier", tier}, {"checks", check_json}};
  std::string extra_text;
  if (!tables_file.empty()) {
    json rows_verdict;
    failures += check_rows_file(parse_json_arg(tables_file, "tables file"), json_format,
                                &rows_verdict, &extra_text);
    verdict["tables_file"] = rows_verdict;
  }
  verdict["failures"] = std::to_string(failures);

  const auto elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(
      std::chrono::steady_clock::now() - start);
  std::ostringstream text;
  text << extra_text << checks.size() << " checks, " << failures << " deviations, "
       << elapsed.count() << " ms\n";
  print_report(json_format, "reproduce",
               json{{"tier", tier},
                    {"jobs", std::to_string(flags.jobs)}},
               verdict, json::array({"verification-suite"}), elapsed, text.str());
  return failures == 0 ? kExitOk : kExitMismatch;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Exact local spinor-norm computations for quaternionic skew-hermitian "
      "lattices over Q_2: k-star condition checks, bounded witness searches, the "
      "full classification table and spinor class fields over Q."};
  app.require_subcommand(1);
  app.failure_message(CLI::FailureMessage::help);

  std::string a1_arg, r_arg, lattice_arg, spec_arg, rows_file, tables_file;
  std::string tier = "fast";
  int t = 1;
  int bound = 0;
  bool refined = false;
  bool indefinite = false;
  uint64_t max_candidates = 0;
  std::vector<long> support;

  CommonFlags kstar_flags, search_flags, tables_flags, image_flags, field_flags,
      repro_flags;

  CLI::App* kstar = app.add_subcommand(
      "kstar-check", "Check the three rotation conditions for a candidate r");
  kstar->add_option("--a1", a1_arg, "Axis: quaternion JSON or class token")->required();
  kstar->add_option("--t", t, "Scale-gap exponent, mu = 2t")
      ->required()
      ->check(CLI::PositiveNumber);
  kstar->add_option("--r", r_arg, "Candidate quaternion JSON")->required();
  kstar_flags.attach(kstar);

  CLI::App* search = app.add_subcommand(
      "search", "Exhaustively search residue representatives for a witness");
  search->add_option("--a1", a1_arg, "Axis: quaternion JSON or class token")->required();
  search->add_option("--t", t, "Scale-gap exponent, mu = 2t")
      ->required()
      ->check(CLI::PositiveNumber);
  search->add_option("--bound", bound, "Bound exponent u (candidates in [0,2^u)^4)")
      ->check(CLI::Range(1, 16));
  search->add_flag("--refined", refined, "Use the refined default bound t+3");
  search->add_option("--max-candidates", max_candidates,
                     "Abort after this many candidates (exit 3)");
  search_flags.attach(search);

  CLI::App* tables = app.add_subcommand(
      "verify-tables", "Recompute every built-in witness-table row");
  tables->add_option("--rows", rows_file, "Check rows from a JSON file instead");
  tables_flags.attach(tables);

  CLI::App* image = app.add_subcommand(
      "spinor-image", "Classify a lattice descriptor through the dispatch table");
  image->add_option("--lattice", lattice_arg, "Lattice JSON (inline or file)")
      ->required();
  image_flags.attach(image);

  CLI::App* field = app.add_subcommand(
      "class-field", "Compute the spinor class field from local image generators");
  field->add_option("--spec", spec_arg, "Local image spec JSON (inline or file)")
      ->required();
  field->add_option("--support", support, "Candidate primes (must include 2)")
      ->required()
      ->delimiter(',');
  field->add_flag("--indefinite", indefinite,
                  "Assert class = spinor genus and emit the class number");
  field_flags.attach(field);

  CLI::App* repro = app.add_subcommand(
      "reproduce", "Run the verification suite (fast or full tier)");
  repro->add_option("tier", tier, "fast or full")
      ->check(CLI::IsMember({"fast", "full"}));
  repro->add_option("--tables", tables_file, "Also check golden rows from a JSON file");
  repro_flags.attach(repro);

  try {
    app.parse(argc, argv);
    if (kstar->parsed()) return run_kstar_check(a1_arg, t, r_arg, kstar_flags);
    if (search->parsed()) {
      return run_search(a1_arg, t, bound, refined, max_candidates, search_flags);
    }
    if (tables->parsed()) return run_verify_tables(rows_file, tables_flags);
    if (image->parsed()) return run_spinor_image(lattice_arg, image_flags);
    if (field->parsed()) {
      return run_class_field(spec_arg, support, indefinite, field_flags);
    }
    if (repro->parsed()) return run_reproduce(tier, tables_file, repro_flags);
    return kExitUsage;
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  } catch (const quatspin::SearchAbortedError& e) {
    std::cerr << "aborted: " << e.what() << "\n";
    return kExitAborted;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::domain_error& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitMismatch;
  }
}
