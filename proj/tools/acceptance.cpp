// One pass/fail line per acceptance criterion. Exit status 0 iff all pass.

#include <chrono>
#include <cstdio>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <unistd.h>

#include "advcalc/suite.hpp"

namespace {

namespace fs = std::filesystem;
using namespace advcalc;

struct Expect {
  std::string family;
  std::size_t cases;
};

struct Line {
  bool pass;
  std::string detail;
};

// Runs a suite with seed 7 and checks every family is present with the
// expected number of cases, has no failures, and the run fits the budget.
Line suite_criterion(const std::string& name, const std::vector<Expect>& expect, double budget_s) {
  const auto t0 = std::chrono::steady_clock::now();
  suite::SuiteResult r;
  try {
    r = suite::run_suite(name, {});
  } catch (const std::exception& e) {
    return {false, std::string("suite threw: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  std::map<std::string, const suite::FamilyResult*> by_name;
  for (const auto& f : r.families) by_name[f.family] = &f;

  bool pass = secs < budget_s;
  std::size_t cases = 0, failures = 0;
  std::ostringstream problems;
  for (const auto& e : expect) {
    auto it = by_name.find(e.family);
    if (it == by_name.end()) {
      pass = false;
      problems << " missing " << e.family << ";";
      continue;
    }
    const auto& f = *it->second;
    cases += f.cases;
    failures += f.failures;
    if (f.cases != e.cases) {
      pass = false;
      problems << " " << e.family << " ran " << f.cases << " cases, expected " << e.cases << ";";
    }
    if (f.failures) {
      pass = false;
      problems << " " << e.family << " " << f.failures << " failures (max violation "
               << suite::format_double(f.max_violation) << ");";
    }
  }
  std::ostringstream detail;
  detail << name << ": " << expect.size() << " families, " << cases << " cases, " << failures << " failures, "
         << suite::format_double(std::round(secs * 100) / 100) << " s (budget " << budget_s << " s)"
         << problems.str();
  return {pass, detail.str()};
}

int run(const std::vector<std::string>& args) {
  const pid_t pid = fork();
  if (pid == 0) {
    std::vector<char*> argv;
    for (const auto& a : args) argv.push_back(const_cast<char*>(a.c_str()));
    argv.push_back(nullptr);
    if (!freopen("/dev/null", "w", stdout)) _exit(127);
    execv(argv[0], argv.data());
    _exit(127);
  }
  int status = 0;
  waitpid(pid, &status, 0);
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

// Last field of the first failing row of cases.csv.
std::string first_witness(const fs::path& cases_csv) {
  std::istringstream in(slurp(cases_csv));
  std::string line;
  while (std::getline(in, line)) {
    if (line.find(",fail,") == std::string::npos) continue;
    return line.substr(line.rfind(',') + 1);
  }
  return {};
}

Line determinism_criterion(const std::string& cli) {
  const fs::path root = fs::temp_directory_path() / ("advcalc_acceptance_" + std::to_string(getpid()));
  fs::remove_all(root);
  const std::string a = (root / "a").string(), b = (root / "b").string(), c = (root / "c").string();
  std::ostringstream detail;
  bool pass = true;

  const int ra = run({cli, "--seed", "7", "--out", a, "suite", "--name", "identities"});
  const int rb = run({cli, "--seed", "7", "--out", b, "suite", "--name", "identities"});
  const bool same = fs::exists(fs::path(a) / "cases.csv") &&
                    slurp(fs::path(a) / "summary.csv") == slurp(fs::path(b) / "summary.csv") &&
                    slurp(fs::path(a) / "cases.csv") == slurp(fs::path(b) / "cases.csv");
  pass = pass && ra == 0 && rb == 0 && same;
  detail << "identities twice with seed 7: exit " << ra << "/" << rb << ", CSVs "
         << (same ? "byte-identical" : "DIFFER");

  const int rc = run({cli, "--seed", "7", "--out", c, "suite", "--name", "identities", "--inject", "compose_dilate"});
  const std::string witness = first_witness(fs::path(c) / "cases.csv");
  const bool has_witness = !witness.empty() && fs::exists(fs::path(c) / witness);
  const int rr = has_witness ? run({cli, "replay", (fs::path(c) / witness).string()}) : -1;
  pass = pass && rc == 1 && has_witness && rr == 1;
  detail << "; forced failure: exit " << rc << ", witness " << (has_witness ? witness : "missing")
         << ", replay exit " << rr << " (1 = reproduced)";
  fs::remove_all(root);
  return {pass, detail.str()};
}

}  // namespace

int main(int argc, char** argv) {
  const std::string cli = argc > 1 ? argv[1] : ADVCALC_CLI;
  struct Criterion {
    int id;
    std::function<Line()> run;
  };
  const std::vector<Criterion> criteria{
      {1,
       [] {
         return suite_criterion("identities",
                                {{"compose_dilate", 1000},
                                 {"compose_erode", 1000},
                                 {"opening_decomposition", 1000},
                                 {"closing_decomposition", 1000},
                                 {"dilate_idempotence", 1000},
                                 {"erode_idempotence", 1000},
                                 {"family_relations", 1000},
                                 {"empty_fringes", 1000}},
                                30);
       }},
      {2,
       [] {
         return suite_criterion("grid",
                                {{"extensive", 500},
                                 {"monotone", 500},
                                 {"padding", 500},
                                 {"compose", 500},
                                 {"l2_counterexample", 1}},
                                30);
       }},
      {3,
       [] {
         std::vector<Expect> e;
         for (const char* f : {"closing", "opening", "mollify", "monotone", "zero", "modes"}) {
           e.push_back({std::string(f) + "_line", 500});
           e.push_back({std::string(f) + "_grid", 500});
         }
         return suite_criterion("risk", e, 60);
       }},
      {4,
       [] {
         return suite_criterion(
             "optimize",
             {{"oracle_gray", 50}, {"mollified_minimizer", 50}, {"greedy_fixed_point", 50}, {"two_atom", 1}}, 300);
       }},
      {5,
       [] {
         return suite_criterion("gauge",
                                {{"concavity", 4},
                                 {"covariance", 1000},
                                 {"approximation", 4},
                                 {"polytope_continuity", 100},
                                 {"midpoint", 100}},
                                60);
       }},
      {6,
       [] {
         return suite_criterion("strings",
                                {{"involution", 200},
                                 {"union", 200},
                                 {"decreasing_intersection", 200},
                                 {"ab_ba", 1},
                                 {"risk_decrease", 200}},
                                30);
       }},
      {7, [&cli] { return determinism_criterion(cli); }},
  };

  bool all = true;
  for (const auto& c : criteria) {
    const Line l = c.run();
    all = all && l.pass;
    std::cout << "criterion " << c.id << ": " << (l.pass ? "PASS" : "FAIL") << "  " << l.detail << std::endl;
  }
  return all ? 0 : 1;
}
