#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "advcalc/io.hpp"

namespace advcalc::suite {

using io::json;

// Result of evaluating one case description.
struct Outcome {
  bool pass = true;
  std::string lhs;
  std::string rhs;
  double violation = 0;
};

// Evaluates a self-contained case {"suite", "family", ...}. A case with
// "fault": true has a far-away point added to one side of every comparison,
// which turns it into a genuine failure. Throws ParseError when malformed.
Outcome evaluate_case(const json& c);

struct CaseRecord {
  std::string case_id;
  Outcome outcome;
  json input;
  std::string witness_path;  // relative to the output directory, set by write_suite
};

struct FamilyResult {
  std::string suite;
  std::string family;
  std::size_t cases = 0;
  std::size_t failures = 0;
  double max_violation = 0;
  std::vector<CaseRecord> records;
  std::string label() const { return suite + "." + family; }
};

struct SuiteResult {
  std::string name;
  std::vector<FamilyResult> families;
  bool passed() const;
};

struct SuiteOptions {
  std::uint64_t seed = 7;
  std::optional<std::size_t> cases;   // overrides the per-family count of random families
  std::optional<std::string> inject;  // family whose first case is marked "fault"
  unsigned threads = 0;               // 0: hardware concurrency
};

// identities, grid, risk, optimize, gauge, strings
const std::vector<std::string>& suite_names();

// Case descriptions in evaluation order; depends only on name and options.
std::vector<std::pair<std::string, std::vector<json>>> generate_suite(const std::string& name,
                                                                      const SuiteOptions& opts);
// Throws Error for an unknown suite name.
SuiteResult run_suite(const std::string& name, const SuiteOptions& opts);

enum class Format { kCsv, kJson };
Format parse_format(std::string_view s);

// Writes summary.{csv,json} (suite, cases, failures, max_violation),
// cases.{csv,json} (suite, case_id, status, lhs, rhs, witness_path) and one
// witnesses/<suite>.<family>.<case>.json per failure. Returns the exit code:
// 0 when every case passed, else 1.
int write_suite(const SuiteResult& r, const std::filesystem::path& out_dir, Format format);

enum class ReplayStatus { kHolds = 0, kReproduced = 1, kMalformed = 2 };
struct Replay {
  ReplayStatus status = ReplayStatus::kMalformed;
  Outcome outcome;
  std::string message;
};
Replay replay_witness(const std::filesystem::path& path);

// Shortest round-trip decimal for a double.
std::string format_double(double x);

}  // namespace advcalc::suite
