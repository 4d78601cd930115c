/*
 * Copyright 2026 The ADS Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "ads/run.h"

#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <set>
#include <sstream>

#include "ads/error.h"
#include "ads/synthetic.h"

namespace ads {
namespace {

namespace fs = std::filesystem;
using json = nlohmann::json;

class TempDir {
 public:
  TempDir() {
    std::random_device rd;
    path_ = fs::temp_directory_path() /
            ("ads_run_test_" + std::to_string(rd()) + std::to_string(rd()));
    fs::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ignored;
    fs::remove_all(path_, ignored);
  }
  const fs::path& path() const { return path_; }

 private:
  fs::path path_;
};

std::string Slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct CliResult {
  int status = -1;
  std::string out;
  std::string err;
};

CliResult RunCli(const std::string& args, const fs::path& scratch) {
  const fs::path out = scratch / "stdout.txt";
  const fs::path err = scratch / "stderr.txt";
  const std::string command = std::string("'") + ADS_CLI + "' " + args + " >'" +
                              out.string() + "' 2>'" + err.string() + "'";
  const int raw = std::system(command.c_str());
  CliResult r;
  r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  r.out = Slurp(out);
  r.err = Slurp(err);
  return r;
}

// Writes the two-box example problem into `dir` through the CLI.
void Synth(const fs::path& dir, const fs::path& scratch) {
  const CliResult r =
      RunCli("synth --out '" + dir.string() + "' --seed 3 --rows 150", scratch);
  ASSERT_EQ(r.status, 0) << r.err;
}

const std::string kFast = " --max-iters 20 --pool-size 10 --budget 20 --bins 8";

json ReadReport(const fs::path& dir) {
  return json::parse(Slurp(dir / "report.json"));
}

TEST(Cli, RunWritesReportAndRules) {
  TempDir tmp;
  Synth(tmp.path() / "p", tmp.path());
  const fs::path out = tmp.path() / "out";
  const CliResult r = RunCli("run --config '" + (tmp.path() / "p/run.json").string() +
                                 "' --out '" + out.string() + "'" + kFast,
                             tmp.path());
  ASSERT_EQ(r.status, 0) << r.err;
  ASSERT_TRUE(fs::exists(out / "rules.txt"));
  EXPECT_EQ(Slurp(out / "rules.txt"), r.out);
  const json report = ReadReport(out);
  for (const char* key :
       {"timestamp", "config", "metrics", "interpretability", "queries", "best",
        "history"}) {
    EXPECT_TRUE(report.contains(key)) << key;
  }
  EXPECT_TRUE(report["queries"]["accounting_consistent"].get<bool>());
  EXPECT_EQ(report["history"].size(), 20u);
  EXPECT_EQ(CountCertificateViolations(report["history"]), 0u);
  EXPECT_NE(r.err.find("f1="), std::string::npos);
}

TEST(Cli, ZeroBetaMakesNoSyntheticQueries) {
  TempDir tmp;
  Synth(tmp.path() / "p", tmp.path());
  const fs::path out = tmp.path() / "out";
  const CliResult r = RunCli("run --config '" + (tmp.path() / "p/run.json").string() +
                                 "' --out '" + out.string() + "' --beta 0" + kFast,
                             tmp.path());
  ASSERT_EQ(r.status, 0) << r.err;
  const json report = ReadReport(out);
  EXPECT_EQ(report["queries"]["synthetic_count"].get<size_t>(), 0u);
  EXPECT_EQ(report["config"]["beta"].get<double>(), 0.0);
}

TEST(Cli, RepeatedRunsAreIdenticalExceptTimestamp) {
  TempDir tmp;
  Synth(tmp.path() / "p", tmp.path());
  const std::string config = (tmp.path() / "p/run.json").string();
  std::vector<std::string> dumps;
  std::vector<std::string> rules;
  for (const char* name : {"a", "b"}) {
    const fs::path out = tmp.path() / name;
    const CliResult r =
        RunCli("run --config '" + config + "' --out '" + out.string() + "'" + kFast,
               tmp.path());
    ASSERT_EQ(r.status, 0) << r.err;
    json report = ReadReport(out);
    report.erase("timestamp");
    json config_json = report["config"];
    EXPECT_NE(config_json["out"].get<std::string>().find(name), std::string::npos);
    report["config"].erase("out");
    dumps.push_back(report.dump(2));
    rules.push_back(Slurp(out / "rules.txt"));
  }
  EXPECT_EQ(dumps[0], dumps[1]);
  EXPECT_EQ(rules[0], rules[1]);
}

TEST(Cli, MissingSchemaIsNamed) {
  TempDir tmp;
  Synth(tmp.path() / "p", tmp.path());
  const fs::path out = tmp.path() / "out";
  const CliResult r = RunCli(
      "run --config '" + (tmp.path() / "p/run.json").string() +
          "' --schema /nonexistent/schema.json --out '" + out.string() + "'",
      tmp.path());
  EXPECT_EQ(r.status, 1);
  EXPECT_NE(r.err.find("ads: error:"), std::string::npos);
  EXPECT_NE(r.err.find("/nonexistent/schema.json"), std::string::npos) << r.err;
  EXPECT_FALSE(fs::exists(out / "report.json"));
}

TEST(Cli, RejectsInvalidParameters) {
  TempDir tmp;
  Synth(tmp.path() / "p", tmp.path());
  const std::string base = "run --config '" + (tmp.path() / "p/run.json").string() +
                           "' --out '" + (tmp.path() / "out").string() + "'";
  EXPECT_EQ(RunCli(base + " --epsilon 2", tmp.path()).status, 1);
  EXPECT_EQ(RunCli(base + " --lambda -1", tmp.path()).status, 1);
  EXPECT_EQ(RunCli(base + " --bins 1", tmp.path()).status, 1);
  EXPECT_EQ(RunCli(base + " --split 1.5", tmp.path()).status, 1);
  EXPECT_NE(RunCli("bogus", tmp.path()).status, 0);
}

TEST(Cli, SubprocessOracle) {
  TempDir tmp;
  Synth(tmp.path() / "p", tmp.path());
  const fs::path out = tmp.path() / "out";
  const std::string oracle =
      std::string(ADS_THRESHOLD_ORACLE) + " --column 0 --threshold 0.5";
  const CliResult r = RunCli("run --config '" + (tmp.path() / "p/run.json").string() +
                                 "' --oracle-cmd '" + oracle + "' --out '" +
                                 out.string() + "'" + kFast,
                             tmp.path());
  ASSERT_EQ(r.status, 0) << r.err;
  const json report = ReadReport(out);
  EXPECT_TRUE(report["queries"]["accounting_consistent"].get<bool>());
  EXPECT_GT(report["metrics"]["f1"].get<double>(), 0.9);
  EXPECT_EQ(report["config"]["oracle"]["type"], "subprocess");
}

TEST(Cli, DyingOracleLeavesNoArtifacts) {
  TempDir tmp;
  Synth(tmp.path() / "p", tmp.path());
  const fs::path out = tmp.path() / "out";
  const std::string oracle = std::string(ADS_THRESHOLD_ORACLE) + " --die-after 5";
  const CliResult r = RunCli("run --config '" + (tmp.path() / "p/run.json").string() +
                                 "' --oracle-cmd '" + oracle + "' --out '" +
                                 out.string() + "'" + kFast,
                             tmp.path());
  EXPECT_EQ(r.status, 1);
  EXPECT_NE(r.err.find("instance:"), std::string::npos) << r.err;
  EXPECT_FALSE(fs::exists(out / "report.json"));
  EXPECT_FALSE(fs::exists(out / "rules.txt"));
}

TEST(Cli, SweepWritesCsv) {
  TempDir tmp;
  Synth(tmp.path() / "p", tmp.path());
  const fs::path out = tmp.path() / "sweep";
  const CliResult r = RunCli(
      "sweep --config '" + (tmp.path() / "p/run.json").string() + "' --out '" +
          out.string() + "' --betas 0,0.02 --lambdas 0.01,0.05 --seeds 2" + kFast,
      tmp.path());
  ASSERT_EQ(r.status, 0) << r.err;
  const std::string csv = Slurp(out / "sweep.csv");
  EXPECT_EQ(csv, r.out);
  std::istringstream lines(csv);
  std::string line;
  std::getline(lines, line);
  EXPECT_EQ(line, "beta,lambda,seed,f1,num_rules,synthetic_queries");
  size_t rows = 0;
  while (std::getline(lines, line)) ++rows;
  EXPECT_EQ(rows, 8u);
}

RunConfig ApiConfig(const fs::path& dir) {
  RunConfig config = LoadRunConfig((dir / "run.json").string());
  config.search.max_iters = 15;
  config.search.pool_size = 10;
  config.search.query_budget_per_iter = 20;
  config.search.bins = 8;
  return config;
}

TEST(Sweep, GridShapeAndZeroBeta) {
  TempDir tmp;
  Synth(tmp.path() / "p", tmp.path());
  const RunConfig config = ApiConfig(tmp.path() / "p");
  const auto single = Sweep(config, {0.0}, {0.01}, 1);
  ASSERT_EQ(single.size(), 1u);
  EXPECT_EQ(single[0].synthetic_queries, 0u);
  EXPECT_TRUE(single[0].error.empty());

  const auto grid = Sweep(config, {0.0, 0.02}, {0.01, 0.1}, 3);
  ASSERT_EQ(grid.size(), 12u);
  std::set<std::tuple<double, double, uint64_t>> cells;
  for (const auto& row : grid) cells.insert({row.beta, row.lambda, row.seed});
  EXPECT_EQ(cells.size(), 12u);
  EXPECT_THROW(Sweep(config, {}, {0.01}, 1), Error);
}

TEST(Sweep, FailedCellsAreRecorded) {
  TempDir tmp;
  Synth(tmp.path() / "p", tmp.path());
  RunConfig config = ApiConfig(tmp.path() / "p");
  config.oracle = {{"type", "subprocess"},
                   {"command", std::string(ADS_THRESHOLD_ORACLE) + " --die-after 0"}};
  const auto rows = Sweep(config, {0.0, 0.02}, {0.01}, 1);
  ASSERT_EQ(rows.size(), 2u);
  for (const auto& row : rows) {
    EXPECT_FALSE(row.error.empty());
    EXPECT_TRUE(std::isnan(row.f1));
  }
  EXPECT_NE(SweepCsv(rows).find("nan"), std::string::npos);
}

TEST(Report, BestRulesRoundTrip) {
  TempDir tmp;
  Synth(tmp.path() / "p", tmp.path());
  RunConfig config = ApiConfig(tmp.path() / "p");
  config.out_dir = (tmp.path() / "out").string();
  const RunOutcome outcome = ads::Run(config);
  const json report = ReadReport(tmp.path() / "out");
  const InputSpace space = LoadSchemaFile(config.schema_path);
  const DecisionSet parsed =
      DecisionSetFromJson(json{{"rules", report["best"]["rules"]}}, space);
  EXPECT_EQ(parsed, outcome.search.best);
  EXPECT_EQ(report["metrics"]["f1"].get<double>(), outcome.metrics.f1);

  // Re-scoring the parsed set on the same split reproduces the metrics.
  std::vector<Instance> train, test;
  SplitData(LoadDatasetFile(config.data_path, space), config.split,
            config.split_seed, train, test);
  Oracle oracle = OracleFromJson(config.oracle, space);
  const Metrics again = Evaluate(parsed, oracle, test);
  EXPECT_EQ(again.f1, outcome.metrics.f1);
  EXPECT_EQ(again.accuracy, outcome.metrics.accuracy);
  EXPECT_TRUE(outcome.queries.consistent());
  EXPECT_EQ(outcome.queries.total_backend,
            outcome.queries.train_distinct + outcome.queries.synthetic -
                outcome.queries.synthetic_cache_hits +
                outcome.queries.test_new_distinct);
}

TEST(SplitData, DeterministicAndNonEmpty) {
  std::vector<Instance> data;
  for (int i = 0; i < 10; ++i) data.push_back(Instance{{double(i)}});
  std::vector<Instance> a_train, a_test, b_train, b_test;
  SplitData(data, 0.9, 5, a_train, a_test);
  SplitData(data, 0.9, 5, b_train, b_test);
  EXPECT_EQ(a_train, b_train);
  EXPECT_EQ(a_test, b_test);
  EXPECT_EQ(a_train.size(), 9u);
  EXPECT_EQ(a_test.size(), 1u);
  std::vector<Instance> two = {Instance{{0.0}}, Instance{{1.0}}};
  SplitData(two, 0.99, 0, a_train, a_test);
  EXPECT_EQ(a_train.size(), 1u);
  EXPECT_EQ(a_test.size(), 1u);
}

TEST(CountCertificateViolations, FlagsBadCertificates) {
  const json ok = json::array(
      {{{"termination", "certified"},
        {"certificate", {{"lower_best", 0.5}, {"max_upper_other", 0.4}}}},
       {{"termination", "budget_exhausted"},
        {"certificate", {{"lower_best", 0.1}, {"max_upper_other", 0.9}}}},
       {{"termination", "single_action"},
        {"certificate", {{"lower_best", 0.1}, {"max_upper_other", nullptr}}}},
       {{"termination", "random"},
        {"certificate", {{"lower_best", nullptr}, {"max_upper_other", nullptr}}}}});
  EXPECT_EQ(CountCertificateViolations(ok), 0u);
  const json bad = json::array(
      {{{"termination", "certified"},
        {"certificate", {{"lower_best", 0.3}, {"max_upper_other", 0.4}}}},
       {{"termination", "certified"},
        {"certificate", {{"lower_best", nullptr}, {"max_upper_other", 0.4}}}}});
  EXPECT_EQ(CountCertificateViolations(bad), 2u);
}

}  // namespace
}  // namespace ads
