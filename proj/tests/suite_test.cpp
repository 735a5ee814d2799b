#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <unistd.h>

#include "advcalc/errors.hpp"
#include "advcalc/suite.hpp"

namespace advcalc::suite {
namespace {

namespace fs = std::filesystem;

fs::path scratch(const std::string& name) {
  fs::path p = fs::temp_directory_path() / ("advcalc_suite_test_" + std::to_string(getpid())) / name;
  fs::remove_all(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

SuiteOptions small(std::size_t cases, unsigned threads = 0) {
  SuiteOptions o;
  o.cases = cases;
  o.threads = threads;
  return o;
}

TEST(SuiteTest, NamesAndUnknowns) {
  EXPECT_EQ(suite_names(), (std::vector<std::string>{"identities", "grid", "risk", "optimize", "gauge", "strings"}));
  EXPECT_THROW(run_suite("nope", {}), Error);
  SuiteOptions o = small(2);
  o.inject = "no_such_family";
  EXPECT_THROW(generate_suite("strings", o), Error);
}

TEST(SuiteTest, GenerationIsSeeded) {
  auto a = generate_suite("identities", small(5));
  auto b = generate_suite("identities", small(5));
  ASSERT_EQ(a.size(), 8u);
  EXPECT_EQ(a, b);
  SuiteOptions other = small(5);
  other.seed = 8;
  EXPECT_NE(generate_suite("identities", other), a);
}

TEST(SuiteTest, ThreadCountDoesNotChangeResults) {
  for (const char* name : {"grid", "strings"}) {
    auto one = run_suite(name, small(12, 1));
    auto many = run_suite(name, small(12, 4));
    ASSERT_EQ(one.families.size(), many.families.size());
    for (std::size_t f = 0; f < one.families.size(); ++f) {
      ASSERT_EQ(one.families[f].records.size(), many.families[f].records.size());
      for (std::size_t i = 0; i < one.families[f].records.size(); ++i) {
        EXPECT_EQ(one.families[f].records[i].outcome.lhs, many.families[f].records[i].outcome.lhs);
        EXPECT_EQ(one.families[f].records[i].outcome.rhs, many.families[f].records[i].outcome.rhs);
      }
    }
  }
}

TEST(SuiteTest, EverySuitePassesOnSmallRuns) {
  for (const auto& name : suite_names()) {
    auto r = run_suite(name, small(6));
    for (const auto& f : r.families) EXPECT_EQ(f.failures, 0u) << f.label();
    EXPECT_TRUE(r.passed()) << name;
  }
}

// The fault marker must turn every family's first case into a real failure.
TEST(SuiteTest, FaultFailsEveryFamily) {
  for (const auto& name : suite_names()) {
    for (auto& [family, cases] : generate_suite(name, small(1))) {
      ASSERT_FALSE(cases.empty());
      json c = cases.front();
      EXPECT_TRUE(evaluate_case(c).pass) << name << "." << family;
      c["fault"] = true;
      const Outcome o = evaluate_case(c);
      EXPECT_FALSE(o.pass) << name << "." << family;
      EXPECT_GT(o.violation, 0) << name << "." << family;
    }
  }
}

TEST(SuiteTest, GenuineFailureIsReported) {
  // composition is not exact for the Euclidean lattice ball
  json c = {{"suite", "grid"},
            {"family", "compose"},
            {"grid", {{"origin", {"0", "0"}}, {"cell", "1"}, {"lo", {0, 0}}, {"extent", {1, 1}}, {"cells", {{0, 0}}}}},
            {"norm", "l2"},
            {"eps1", "1"},
            {"eps2", "2"}};
  const Outcome o = evaluate_case(c);
  EXPECT_FALSE(o.pass);
  EXPECT_EQ(o.lhs.rfind("25 cells", 0), 0u) << o.lhs;
  EXPECT_EQ(o.rhs, "29 cells");
  EXPECT_EQ(o.violation, 4);
}

TEST(SuiteTest, MalformedCases) {
  EXPECT_THROW(evaluate_case(json::array()), ParseError);
  EXPECT_THROW(evaluate_case({{"suite", "grid"}}), ParseError);
  EXPECT_THROW(evaluate_case({{"suite", "grid"}, {"family", "nope"}}), ParseError);
  EXPECT_THROW(evaluate_case({{"suite", "identities"}, {"family", "compose_dilate"}, {"set", {{"0", "1"}}},
                              {"eps", {"-1"}}}),
               ParseError);
  EXPECT_THROW(evaluate_case({{"suite", "identities"}, {"family", "compose_dilate"}, {"eps", {"1"}}}), ParseError);
}

TEST(SuiteTest, WriteAndReplay) {
  SuiteOptions o = small(4);
  o.inject = "union";
  auto r = run_suite("strings", o);
  EXPECT_FALSE(r.passed());
  const fs::path out = scratch("strings");
  EXPECT_EQ(write_suite(r, out, Format::kCsv), 1);

  const std::string summary = slurp(out / "summary.csv");
  EXPECT_EQ(summary.substr(0, summary.find('\n')), "suite,cases,failures,max_violation");
  EXPECT_NE(summary.find("strings.union,4,1,"), std::string::npos);
  const std::string cases = slurp(out / "cases.csv");
  EXPECT_EQ(cases.substr(0, cases.find('\n')), "suite,case_id,status,lhs,rhs,witness_path");
  EXPECT_NE(cases.find(",fail,"), std::string::npos);

  const fs::path witness = out / "witnesses" / "strings.union.0.json";
  ASSERT_TRUE(fs::exists(witness));
  EXPECT_EQ(replay_witness(witness).status, ReplayStatus::kReproduced);

  json w = io::read_json(witness);
  w.erase("fault");
  io::write_json(out / "fixed.json", w);
  EXPECT_EQ(replay_witness(out / "fixed.json").status, ReplayStatus::kHolds);

  std::ofstream(out / "broken.json") << "{\"suite\": ";
  EXPECT_EQ(replay_witness(out / "broken.json").status, ReplayStatus::kMalformed);
  EXPECT_EQ(replay_witness(out / "missing.json").status, ReplayStatus::kMalformed);

  // a clean rerun clears stale witnesses and reports success
  EXPECT_EQ(write_suite(run_suite("strings", small(4)), out, Format::kCsv), 0);
  EXPECT_FALSE(fs::exists(witness));
}

TEST(SuiteTest, JsonFormat) {
  const fs::path out = scratch("json");
  EXPECT_EQ(write_suite(run_suite("optimize", small(2)), out, Format::kJson), 0);
  json s = io::read_json(out / "summary.json");
  ASSERT_EQ(s.size(), 4u);
  EXPECT_EQ(s[3]["suite"], "optimize.two_atom");
  EXPECT_EQ(s[3]["failures"], 0);
  EXPECT_EQ(parse_format("csv"), Format::kCsv);
  EXPECT_THROW(parse_format("xml"), ParseError);
}

TEST(SuiteTest, FormatDouble) {
  EXPECT_EQ(format_double(0), "0");
  EXPECT_EQ(format_double(0.1), "0.1");
  EXPECT_EQ(format_double(1e-12), "1e-12");
}

}  // namespace
}  // namespace advcalc::suite
