#include "oracle.hpp"

#include "dualpair/cli.hpp"

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace dualpair;
using nlohmann::ordered_json;

namespace {

struct Outcome {
  int code;
  std::string out, err;
};

Outcome run_cli(std::vector<std::string> args) {
  args.insert(args.begin(), "dualpair");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli::main(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

cli::ParseResult parse(std::vector<std::string> args) {
  args.insert(args.begin(), "dualpair");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  return cli::parse_args(static_cast<int>(argv.size()), argv.data());
}

std::filesystem::path temp_file(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("dualpair_test_" + name + ".json");
}

ordered_json read_json(const std::filesystem::path& p) {
  std::ifstream f(p);
  return ordered_json::parse(f);
}

void strip_timing(ordered_json& j) {
  if (j.is_object()) {
    j.erase("elapsed_ms");
    for (auto& [k, v] : j.items()) strip_timing(v);
  } else if (j.is_array()) {
    for (auto& v : j) strip_timing(v);
  }
}

bool has_check(const ordered_json& j, const std::string& name) {
  for (const auto& c : j["checks"])
    if (c["name"] == name) return true;
  return false;
}

} // namespace

TEST(ParseArgs, Defaults) {
  const auto r = parse({"verify", "all"});
  ASSERT_TRUE(r.config.has_value()) << r.message;
  const RunConfig& c = *r.config;
  EXPECT_EQ(c.suites, std::vector<std::string>{"all"});
  EXPECT_EQ(c.n_pairs, 3);
  EXPECT_EQ(c.max_degree, 4);
  EXPECT_EQ(c.laurent_bound, 4);
  EXPECT_EQ(c.k_values, (std::vector<Rational>{Rational(1, 2), Rational(3, 2), Rational(5, 2)}));
  EXPECT_EQ(c.jobs, default_jobs());
  EXPECT_GE(c.jobs, 1u);
  EXPECT_FALSE(c.inject_fault);
  EXPECT_TRUE(c.report_path.empty());
}

TEST(ParseArgs, Examples) {
  {
    const auto r = parse({"verify", "bi", "--pairs", "3", "--max-degree", "4"});
    ASSERT_TRUE(r.config.has_value()) << r.message;
    EXPECT_EQ(r.config->suites, std::vector<std::string>{"bi"});
    EXPECT_EQ(r.config->n_pairs, 3);
    EXPECT_EQ(r.config->max_degree, 4);
  }
  {
    const auto r = parse({"verify", "dimred", "--k", "1/2,3/2,5/2", "--window", "4"});
    ASSERT_TRUE(r.config.has_value()) << r.message;
    EXPECT_EQ(r.config->k_values, (std::vector<Rational>{Rational(1, 2), Rational(3, 2), Rational(5, 2)}));
    EXPECT_EQ(r.config->laurent_bound, 4);
  }
  {
    const auto r = parse({"verify", "clifford", "racah", "--jobs", "3", "--quiet", "--inject-fault", "--report", "x.json"});
    ASSERT_TRUE(r.config.has_value()) << r.message;
    EXPECT_EQ(r.config->suites, (std::vector<std::string>{"clifford", "racah"}));
    EXPECT_EQ(r.config->jobs, 3u);
    EXPECT_TRUE(r.config->quiet);
    EXPECT_TRUE(r.config->inject_fault);
    EXPECT_EQ(r.config->report_path, "x.json");
  }
}

TEST(ParseArgs, UsageErrors) {
  const std::vector<std::vector<std::string>> bad{
      {"verify", "bi", "--pairs", "0"},
      {"verify", "bi", "--pairs", "7"},
      {"verify", "bi", "--max-degree", "0"},
      {"verify", "dimred", "--window", "1"},
      {"verify", "dimred", "--k", "1/0"},
      {"verify", "dimred", "--k", "a"},
      {"verify", "dimred", "--k", "1/2,"},
      {"verify", "dimred", "--k", ""},
      {"verify", "all", "--jobs", "0"},
      {"verify", "nosuch"},
      {"verify"},
      {},
      {"frobnicate"},
      {"verify", "all", "--pairs", "x"},
      {"verify", "racah", "--pairs", "2"},
      {"verify", "bi", "--pairs", "1"},
      {"verify", "embedding", "--pairs", "1"},
      {"verify", "all", "--bogus"},
  };
  for (const auto& args : bad) {
    const auto r = parse(args);
    std::string joined;
    for (const auto& a : args) joined += a + " ";
    EXPECT_FALSE(r.config.has_value()) << joined;
    EXPECT_EQ(r.exit_code, cli::usage_error) << joined;
    EXPECT_FALSE(r.message.empty()) << joined;
  }
}

TEST(ParseArgs, HelpExitsZero) {
  const Outcome o = run_cli({"verify", "--help"});
  EXPECT_EQ(o.code, 0);
  EXPECT_NE(o.out.find("--max-degree"), std::string::npos);
  const Outcome e = run_cli({"verify", "bi", "--pairs", "0"});
  EXPECT_EQ(e.code, 2);
  EXPECT_NE(e.err.find("--pairs"), std::string::npos);
}

TEST(ParseKList, ExactRationals) {
  EXPECT_EQ(cli::parse_k_list("0"), std::vector<Rational>{Rational(0)});
  EXPECT_EQ(cli::parse_k_list("-3/4,2,6/8"), (std::vector<Rational>{Rational(-3, 4), Rational(2), Rational(3, 4)}));
  EXPECT_THROW(cli::parse_k_list(""), ConfigError);
  EXPECT_THROW(cli::parse_k_list(",1"), ConfigError);
  EXPECT_THROW(cli::parse_k_list("1,,2"), ConfigError);
  EXPECT_THROW(cli::parse_k_list("1/2/3"), ConfigError);
}

TEST(TextLine, Format) {
  CheckReport r{"bi", {{"n", "3"}, {"A", "{1}"}, {"B", "{2}"}}, {0, 1, 2}, true, std::nullopt, 1.5};
  EXPECT_EQ(cli::text_line(r), "PASS  bi(n=3, A={1}, B={2})  blocks=0..2");
  r.pass = false;
  r.blocks = {0, 2};
  r.witness = Witness{-1, 2, 5, 7, Scalar(Rational(1, 2), Rational(-1))};
  EXPECT_EQ(cli::text_line(r), "FAIL  bi(n=3, A={1}, B={2})  blocks=0,2  witness: degree=2 shift=-1 row=5 col=7 value=1/2-i");
  r.blocks = {0};
  r.witness.reset();
  EXPECT_EQ(cli::text_line(r), "FAIL  bi(n=3, A={1}, B={2})  blocks=0");
}

TEST(Run, SmallConfigPassesAndWritesSchema) {
  const auto path = temp_file("schema");
  const Outcome o = run_cli({"verify", "clifford", "bi", "embedding", "--pairs", "2", "--max-degree", "2", "--jobs", "1",
                             "--report", path.string()});
  EXPECT_EQ(o.code, 0) << o.err;
  EXPECT_NE(o.out.find("summary: "), std::string::npos);
  EXPECT_EQ(o.out.find("FAIL"), std::string::npos);

  const ordered_json j = read_json(path);
  std::vector<std::string> keys;
  for (const auto& [k, v] : j.items()) keys.push_back(k);
  EXPECT_EQ(keys, (std::vector<std::string>{"version", "config", "checks", "summary", "elapsed_ms"}));
  EXPECT_EQ(j["version"], engine_version());
  EXPECT_EQ(j["config"]["n_pairs"], 2);
  EXPECT_EQ(j["config"]["suites"], (ordered_json{"clifford", "bi", "embedding"}));
  EXPECT_EQ(j["config"]["k_values"], (ordered_json{"1/2", "3/2", "5/2"}));
  EXPECT_FALSE(j["config"].contains("jobs"));
  const std::size_t n = j["checks"].size();
  EXPECT_EQ(j["summary"]["pass"].get<std::size_t>() + j["summary"]["fail"].get<std::size_t>(), n);
  EXPECT_EQ(j["summary"]["fail"], 0);
  for (const auto& c : j["checks"]) {
    std::vector<std::string> ck;
    for (const auto& [k, v] : c.items()) ck.push_back(k);
    EXPECT_EQ(ck, (std::vector<std::string>{"name", "params", "blocks", "status", "elapsed_ms"}));
    EXPECT_EQ(c["status"], "pass");
  }
  EXPECT_TRUE(has_check(j, "clifford.anticomm"));
  EXPECT_TRUE(has_check(j, "bi"));
  EXPECT_TRUE(has_check(j, "embedding.two_pair"));
  EXPECT_FALSE(has_check(j, "racah.pp"));
  // one text line per check plus the summary
  EXPECT_EQ(static_cast<std::size_t>(std::count(o.out.begin(), o.out.end(), '\n')), n + 1);
  std::filesystem::remove(path);
}

TEST(Run, AllSkipsSuitesThatNeedMorePairs) {
  const auto path = temp_file("allone");
  const Outcome o =
      run_cli({"verify", "all", "--pairs", "1", "--max-degree", "1", "--window", "2", "--k", "1/2", "--report", path.string()});
  EXPECT_EQ(o.code, 0) << o.err;
  const ordered_json j = read_json(path);
  EXPECT_FALSE(has_check(j, "bi"));
  EXPECT_FALSE(has_check(j, "racah.pp"));
  EXPECT_FALSE(has_check(j, "embedding.pair"));
  EXPECT_TRUE(has_check(j, "dimred.casimir_value"));
  EXPECT_TRUE(has_check(j, "appendix.hamiltonian"));
  std::filesystem::remove(path);
}

TEST(Run, InjectedFaultExitsOneWithWitness) {
  const auto path = temp_file("fault");
  const Outcome o = run_cli({"verify", "clifford", "bi", "--pairs", "2", "--max-degree", "1", "--quiet", "--inject-fault",
                             "--report", path.string()});
  EXPECT_EQ(o.code, 1);
  EXPECT_NE(o.out.find("FAIL  clifford."), std::string::npos);
  EXPECT_NE(o.out.find("FAIL  bi("), std::string::npos);
  EXPECT_NE(o.out.find("witness: degree="), std::string::npos);
  EXPECT_EQ(o.out.find("PASS"), std::string::npos); // quiet hides passes
  const ordered_json j = read_json(path);
  EXPECT_TRUE(j["config"]["inject_fault"].get<bool>());
  bool witnessed = false;
  for (const auto& c : j["checks"])
    if (c["status"] == "fail") {
      ASSERT_TRUE(c.contains("witness"));
      std::vector<std::string> wk;
      for (const auto& [k, v] : c["witness"].items()) wk.push_back(k);
      EXPECT_EQ(wk, (std::vector<std::string>{"degree", "shift", "row", "col", "value"}));
      EXPECT_NE(c["witness"]["value"], "0");
      witnessed = true;
    }
  EXPECT_TRUE(witnessed);
  std::filesystem::remove(path);
}

TEST(Run, UnwritableReportIsUsageError) {
  const Outcome o = run_cli({"verify", "clifford", "--pairs", "1", "--report", "/nonexistent-dir/x/report.json"});
  EXPECT_EQ(o.code, 2);
  EXPECT_NE(o.err.find("cannot write report"), std::string::npos);
}

TEST(Run, ContentIndependentOfJobs) {
  const std::vector<std::string> base{"verify", "osp", "bi", "commutant", "racah", "dimred", "--pairs", "3", "--max-degree", "2",
                                      "--window", "3"};
  const auto p1 = temp_file("jobs1"), p8 = temp_file("jobs8");
  auto a1 = base, a8 = base;
  a1.insert(a1.end(), {"--jobs", "1", "--quiet", "--report", p1.string()});
  a8.insert(a8.end(), {"--jobs", "8", "--quiet", "--report", p8.string()});
  ASSERT_EQ(run_cli(a1).code, 0);
  ASSERT_EQ(run_cli(a8).code, 0);
  ordered_json j1 = read_json(p1), j8 = read_json(p8);
  strip_timing(j1);
  strip_timing(j8);
  EXPECT_EQ(j1.dump(2), j8.dump(2));
  EXPECT_GT(j1["checks"].size(), 100u);
  std::filesystem::remove(p1);
  std::filesystem::remove(p8);
}

TEST(RunConfig, SummaryCountsAddUp) {
  RunConfig cfg;
  cfg.suites = {"coproduct", "appendix"};
  cfg.max_degree = 2;
  cfg.laurent_bound = 3;
  cfg.jobs = 1;
  const RunReport rep = run(cfg);
  EXPECT_EQ(rep.pass + rep.fail, rep.checks.size());
  EXPECT_EQ(rep.exit_code(), 0);
  // k = 0 is always included ahead of the configured values
  EXPECT_EQ(rep.checks.size(), 6u + 2u * 4u);
  cfg.suites = {"bogus"};
  EXPECT_THROW(run(cfg), ConfigError);
}
