#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <sys/wait.h>
#include <unistd.h>

namespace {

namespace fs = std::filesystem;

const fs::path& dir() {
  static const fs::path d = [] {
    fs::path p = fs::temp_directory_path() / ("advcalc_cli_test_" + std::to_string(getpid()));
    fs::remove_all(p);
    fs::create_directories(p);
    return p;
  }();
  return d;
}

struct CliResult {
  int code;
  std::string out;
};

CliResult cli(const std::string& args) {
  const fs::path log = dir() / "stdout.txt";
  const std::string cmd = std::string(ADVCALC_CLI) + " " + args + " > " + log.string() + " 2>&1";
  const int status = std::system(cmd.c_str());
  std::ifstream in(log);
  std::ostringstream s;
  s << in.rdbuf();
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, s.str()};
}

std::string write(const std::string& name, const std::string& text) {
  const fs::path p = dir() / name;
  std::ofstream(p) << text;
  return p.string();
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

TEST(CliTest, MorphAndRisk) {
  const std::string a = write("a.json", R"([["0","1"]])");
  EXPECT_EQ(cli("morph --op dilate --eps 1/2 --in " + a).out, "[-1/2, 3/2]\n");
  const std::string out = (dir() / "e.json").string();
  EXPECT_EQ(cli("--out " + out + " morph --op erode --eps 1/2 --in " + a).code, 0);
  EXPECT_EQ(slurp(out), "[\n  [\n    \"1/2\",\n    \"1/2\"\n  ]\n]\n");

  const std::string d = write("d.json", R"([{"x":["0"],"p":"1/2","eta":"1"},{"x":["1"],"p":"1/2","eta":"0"}])");
  const CliResult r = cli("risk --set " + a + " --dist " + d + " --eps 1/2");
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("adversarial_risk 1 1\n"), std::string::npos) << r.out;
}

TEST(CliTest, MalformedInputsExitTwo) {
  const std::string a = write("a2.json", R"([["0","1"]])");
  const std::string cfg = write("neg.json", R"({"eps": "-1"})");
  EXPECT_EQ(cli("--config " + cfg + " morph --op dilate --eps 1/2 --in " + a).code, 2);
  EXPECT_EQ(cli("morph --op dilate --eps -1 --in " + a).code, 2);
  EXPECT_EQ(cli("morph --op spin --eps 1 --in " + a).code, 2);
  EXPECT_EQ(cli("morph --op dilate --eps 1 --in " + (dir() / "missing.json").string()).code, 2);
  EXPECT_EQ(cli("suite --name nope").code, 2);
  EXPECT_EQ(cli("--format xml suite --name strings").code, 2);
  EXPECT_EQ(cli("--config " + write("bad.json", R"({"bogus": 1})") + " suite --name strings").code, 2);
}

TEST(CliTest, ConfigOverridesFlags) {
  const std::string a = write("a3.json", R"([["0","1"]])");
  const std::string cfg = write("eps.json", R"({"eps": "1"})");
  EXPECT_EQ(cli("--config " + cfg + " morph --op dilate --eps 1/2 --in " + a).out, "[-1, 2]\n");
}

TEST(CliTest, IdentitiesSuiteIsDeterministic) {
  const fs::path a = dir() / "run_a", b = dir() / "run_b";
  EXPECT_EQ(cli("--seed 7 --out " + a.string() + " suite --name identities --cases 1000").code, 0);
  EXPECT_EQ(cli("--seed 7 --out " + b.string() + " suite --name identities --cases 1000").code, 0);
  const std::string summary = slurp(a / "summary.csv");
  EXPECT_EQ(summary, slurp(b / "summary.csv"));
  EXPECT_EQ(slurp(a / "cases.csv"), slurp(b / "cases.csv"));
  // header plus one row per identity family
  EXPECT_EQ(std::count(summary.begin(), summary.end(), '\n'), 9);
  EXPECT_NE(summary.find("identities.compose_dilate,1000,0,0\n"), std::string::npos);
}

TEST(CliTest, InjectedFailureShipsReplayableWitness) {
  const fs::path out = dir() / "inject";
  EXPECT_EQ(cli("--out " + out.string() + " suite --name optimize --inject two_atom").code, 1);
  const fs::path witness = out / "witnesses" / "optimize.two_atom.0.json";
  ASSERT_TRUE(fs::exists(witness));
  const CliResult replay = cli("replay " + witness.string());
  EXPECT_EQ(replay.code, 1);
  EXPECT_EQ(replay.out.rfind("failure reproduced", 0), 0u) << replay.out;
  EXPECT_EQ(cli("replay " + write("junk.json", "[1, 2]")).code, 2);
}

TEST(CliTest, StringsAndOptimize) {
  const std::string d = write("sd.json", R"([{"x":"ab","p":"1/2","eta":"1"},{"x":"ba","p":"1/2","eta":"0"}])");
  EXPECT_EQ(cli("strings --alphabet ab --maxlen 2 --swaps 1,2 --dist " + d + " --mode oracle").out,
            "best_risk 1/2 0.5\nbest_set {}\n");
  EXPECT_EQ(cli("strings --alphabet ab --maxlen 2 --swaps 1,2 --dist " + d + " --mode risk --set ab").out,
            "adversarial_risk 1 1\n");

  const std::string two = write("two.json", R"([{"x":["0"],"p":"1/2","eta":"1"},{"x":["1"],"p":"1/2","eta":"0"}])");
  const fs::path res = dir() / "opt.json";
  const CliResult r = cli("--out " + res.string() + " optimize --mode oracle --dist " + two + " --eps 3/5 --cells 8");
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "best_risk 1/2 0.5\n");
  EXPECT_NE(slurp(res).find("\"best_risk\": \"1/2\""), std::string::npos);
  EXPECT_TRUE(fs::exists(dir() / "opt.trace.csv"));
}

TEST(CliTest, RenderAndGauge) {
  const std::string a = write("r.json", R"([["0","1"]])");
  const fs::path svg = dir() / "r.svg";
  EXPECT_EQ(cli("--out " + svg.string() + " render --in " + a + " --eps 1/2").code, 0);
  EXPECT_NE(slurp(svg).find("<svg"), std::string::npos);

  const std::string body = write("disc.json", R"({"type":"ball","center":[0,0],"radius":1})");
  EXPECT_EQ(cli("gauge --body " + body + " --x 0,0 --v 1,0").out, "lambda 1\nrange -1 1\n");
  EXPECT_EQ(cli("gauge --body " + body + " --x 3,0 --v 0,1").code, 2);
}

}  // namespace
