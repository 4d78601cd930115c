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

#include <algorithm>
#include <chrono>
#include <cmath>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <random>
#include <unordered_set>

#include "ads/error.h"
#include "ads/schema.h"

namespace ads {

using json = nlohmann::json;
namespace fs = std::filesystem;

void RunConfig::Validate() const {
  if (!(split > 0.0 && split < 1.0)) {
    throw Error("split fraction must lie in (0, 1)");
  }
  for (const std::string* path : {&data_path, &schema_path}) {
    if (path->empty()) throw Error("missing dataset or schema path");
    if (!fs::is_regular_file(*path)) {
      throw Error("cannot read '" + *path + "'");
    }
  }
  if (oracle.is_null()) throw Error("no oracle configured");
  search.Validate();
}

json RunConfig::ToJson() const {
  return json{
      {"data", data_path},
      {"schema", schema_path},
      {"oracle", oracle},
      {"split", split},
      {"split_seed", split_seed},
      {"lambda", search.params.lambda},
      {"beta", search.params.beta},
      {"epsilon", search.epsilon},
      {"max_iters", search.max_iters},
      {"pool_size", search.pool_size},
      {"bins", search.bins},
      {"budget", search.query_budget_per_iter},
      {"seed", search.seed},
      {"out", out_dir},
  };
}

json LoadOracleSpec(const std::string& path) {
  try {
    return json::parse(ReadFile(path));
  } catch (const json::parse_error& e) {
    throw Error("'" + path + "': malformed oracle spec: " + e.what());
  }
}

RunConfig LoadRunConfig(const std::string& path) {
  json doc;
  try {
    doc = json::parse(ReadFile(path));
  } catch (const json::parse_error& e) {
    throw Error("'" + path + "': malformed run config: " + e.what());
  }
  if (!doc.is_object()) throw Error("'" + path + "': run config must be an object");
  const fs::path base = fs::path(path).parent_path();
  const auto resolve = [&](const std::string& p) {
    if (p.empty() || fs::path(p).is_absolute()) return p;
    return (base / p).lexically_normal().string();
  };

  RunConfig config;
  try {
    config.data_path = resolve(doc.value("data", std::string()));
    config.schema_path = resolve(doc.value("schema", std::string()));
    config.out_dir = resolve(doc.value("out", std::string()));
    if (doc.contains("oracle")) {
      config.oracle = doc["oracle"].is_string()
                          ? LoadOracleSpec(resolve(doc["oracle"].get<std::string>()))
                          : doc["oracle"];
    }
    config.split = doc.value("split", config.split);
    config.split_seed = doc.value("split_seed", config.split_seed);
    SearchConfig& s = config.search;
    s.params.lambda = doc.value("lambda", s.params.lambda);
    s.params.beta = doc.value("beta", s.params.beta);
    s.epsilon = doc.value("epsilon", s.epsilon);
    s.max_iters = doc.value("max_iters", s.max_iters);
    s.pool_size = doc.value("pool_size", s.pool_size);
    s.bins = doc.value("bins", s.bins);
    s.query_budget_per_iter = doc.value("budget", s.query_budget_per_iter);
    s.seed = doc.value("seed", s.seed);
  } catch (const json::type_error& e) {
    throw Error("'" + path + "': " + e.what());
  }
  return config;
}

void SplitData(const std::vector<Instance>& data, double fraction,
               uint64_t seed, std::vector<Instance>& train,
               std::vector<Instance>& test) {
  std::vector<size_t> order(data.size());
  for (size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::mt19937_64 rng(seed);
  std::shuffle(order.begin(), order.end(), rng);
  size_t cut = static_cast<size_t>(
      std::llround(fraction * static_cast<double>(data.size())));
  if (data.size() >= 2) cut = std::clamp<size_t>(cut, 1, data.size() - 1);
  train.clear();
  test.clear();
  for (size_t k = 0; k < order.size(); ++k) {
    (k < cut ? train : test).push_back(data[order[k]]);
  }
}

bool QueryAccounting::consistent() const {
  return total_backend == train_distinct + synthetic - synthetic_cache_hits +
                              test_new_distinct;
}

namespace {

json Finite(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

std::string Timestamp() {
  const std::time_t now =
      std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  char buffer[32];
  std::tm utc{};
  gmtime_r(&now, &utc);
  std::strftime(buffer, sizeof(buffer), "%Y-%m-%dT%H:%M:%SZ", &utc);
  return buffer;
}

json MetricsToJson(const Metrics& m) {
  return json{{"accuracy", m.accuracy},
              {"precision", m.precision},
              {"recall", m.recall},
              {"f1", m.f1},
              {"confusion",
               {{"tp", m.confusion.tp},
                {"fp", m.confusion.fp},
                {"tn", m.confusion.tn},
                {"fn", m.confusion.fn}}}};
}

size_t CountDistinct(const std::vector<Instance>& xs) {
  return std::unordered_set<Instance, InstanceHash>(xs.begin(), xs.end())
      .size();
}

}  // namespace

json HistoryToJson(const std::vector<IterationRecord>& history,
                   const InputSpace& space) {
  json out = json::array();
  for (const IterationRecord& r : history) {
    out.push_back({
        {"iteration", r.iteration},
        {"kind", ActionKindName(r.kind)},
        {"action", r.action},
        {"was_random", r.was_random},
        {"num_actions", r.num_actions},
        {"q_before", r.q_before},
        {"q_after", r.q_after},
        {"synthetic_queries", r.synthetic_queries},
        {"termination", TerminationName(r.termination)},
        {"certificate",
         {{"lower_best", Finite(r.lower_best)},
          {"max_upper_other", Finite(r.max_upper_other)}}},
        {"best_updated", r.best_updated},
        {"decision_set", DecisionSetToJson(r.set_after, space)["rules"]},
    });
  }
  return out;
}

size_t CountCertificateViolations(const json& history) {
  size_t violations = 0;
  for (const json& r : history) {
    const std::string termination = r.at("termination").get<std::string>();
    if (termination != "certified" && termination != "single_action") continue;
    const json& certificate = r.at("certificate");
    const json& upper = certificate.at("max_upper_other");
    if (upper.is_null()) {
      // Only a single action has no competitor.
      if (termination != "single_action") ++violations;
      continue;
    }
    const json& lower = certificate.at("lower_best");
    if (lower.is_null() || lower.get<double>() < upper.get<double>()) {
      ++violations;
    }
  }
  return violations;
}

RunOutcome ExecuteRun(const RunConfig& config) {
  config.Validate();
  const InputSpace space = LoadSchemaFile(config.schema_path);
  const std::vector<Instance> data = LoadDatasetFile(config.data_path, space);
  if (data.size() < 2) {
    throw Error("'" + config.data_path + "': need at least two rows to split");
  }
  std::vector<Instance> train;
  std::vector<Instance> test;
  SplitData(data, config.split, config.split_seed, train, test);

  Oracle oracle = OracleFromJson(config.oracle, space);

  RunOutcome outcome;
  outcome.search = RunAds(config.search, train, oracle, space);

  QueryAccounting& q = outcome.queries;
  q.train_instances = train.size();
  q.train_distinct = CountDistinct(train);
  q.synthetic = outcome.search.synthetic_count;
  q.synthetic_cache_hits = outcome.search.synthetic_cache_hits;
  q.search_backend = oracle.total_queries();
  q.test_instances = test.size();
  {
    std::unordered_set<Instance, InstanceHash> unseen;
    for (const Instance& x : test) {
      if (!oracle.IsKnown(x)) unseen.insert(x);
    }
    q.test_new_distinct = unseen.size();
  }
  outcome.metrics = Evaluate(outcome.search.best, oracle, test);
  q.total_backend = oracle.total_queries();
  q.eval_backend = q.total_backend - q.search_backend;
  q.cache_hits = oracle.cache_hits();

  const Interpretability& interp = outcome.metrics.interpretability;
  outcome.rules_text = RenderDecisionSet(outcome.search.best, space);
  outcome.report = json{
      {"timestamp", Timestamp()},
      {"config", config.ToJson()},
      {"metrics", MetricsToJson(outcome.metrics)},
      {"interpretability",
       {{"num_rules", interp.num_rules},
        {"avg_conditions", interp.avg_conditions},
        {"max_conditions", interp.max_conditions}}},
      {"queries",
       {{"train_instances", q.train_instances},
        {"train_distinct", q.train_distinct},
        {"synthetic_count", q.synthetic},
        {"synthetic_cache_hits", q.synthetic_cache_hits},
        {"test_instances", q.test_instances},
        {"test_new_distinct", q.test_new_distinct},
        {"search_backend", q.search_backend},
        {"eval_backend", q.eval_backend},
        {"total_backend", q.total_backend},
        {"cache_hits", q.cache_hits},
        {"budget_exhaustions", outcome.search.budget_exhaustions},
        {"accounting_consistent", q.consistent()}}},
      {"best",
       {{"objective", outcome.search.best_objective},
        {"rules", DecisionSetToJson(outcome.search.best, space)["rules"]}}},
      {"history", HistoryToJson(outcome.search.history, space)},
  };
  if (!q.consistent()) {
    throw Error("query accounting mismatch: " + outcome.report["queries"].dump());
  }
  return outcome;
}

RunOutcome Run(const RunConfig& config) {
  if (config.out_dir.empty()) throw Error("no output directory given");
  const fs::path out(config.out_dir);
  const fs::path rules_path = out / "rules.txt";
  const fs::path report_path = out / "report.json";
  const auto remove_partial = [&] {
    std::error_code ignored;
    fs::remove(rules_path, ignored);
    fs::remove(report_path, ignored);
  };

  RunOutcome outcome = ExecuteRun(config);
  try {
    fs::create_directories(out);
    std::ofstream rules(rules_path, std::ios::binary);
    rules << outcome.rules_text;
    std::ofstream report(report_path, std::ios::binary);
    report << outcome.report.dump(2) << "\n";
    rules.close();
    report.close();
    if (!rules || !report) throw Error("failed writing to '" + out.string() + "'");
  } catch (const fs::filesystem_error& e) {
    remove_partial();
    throw Error(e.what());
  } catch (...) {
    remove_partial();
    throw;
  }
  return outcome;
}

std::vector<SweepRow> Sweep(const RunConfig& config,
                            const std::vector<double>& betas,
                            const std::vector<double>& lambdas,
                            size_t num_seeds) {
  if (betas.empty() || lambdas.empty() || num_seeds == 0) {
    throw Error("sweep needs at least one beta, one lambda and one seed");
  }
  std::vector<SweepRow> rows;
  for (size_t s = 0; s < num_seeds; ++s) {
    for (const double beta : betas) {
      for (const double lambda : lambdas) {
        RunConfig cell = config;
        cell.search.params.beta = beta;
        cell.search.params.lambda = lambda;
        cell.search.seed = config.search.seed + s;
        SweepRow row{beta, lambda, cell.search.seed, 0.0, 0, 0, {}};
        try {
          const RunOutcome outcome = ExecuteRun(cell);
          row.f1 = outcome.metrics.f1;
          row.num_rules = outcome.search.best.size();
          row.synthetic_queries = outcome.search.synthetic_count;
        } catch (const std::exception& e) {
          row.error = e.what();
          row.f1 = std::nan("");
        }
        rows.push_back(std::move(row));
      }
    }
  }
  return rows;
}

std::string SweepCsv(const std::vector<SweepRow>& rows) {
  std::string out = "beta,lambda,seed,f1,num_rules,synthetic_queries\n";
  for (const SweepRow& row : rows) {
    out += FormatShortest(row.beta) + "," + FormatShortest(row.lambda) + "," +
           std::to_string(row.seed) + ",";
    if (row.error.empty()) {
      out += FormatShortest(row.f1) + "," + std::to_string(row.num_rules) +
             "," + std::to_string(row.synthetic_queries);
    } else {
      out += "nan,,";
    }
    out += "\n";
  }
  return out;
}

}  // namespace ads
