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

#ifndef ADS_RUN_H_
#define ADS_RUN_H_

#include <cstdint>
#include <string>
#include <vector>

#include "ads/metrics.h"
#include "ads/search.h"
#include "json.hpp"

namespace ads {

struct RunConfig {
  std::string data_path;
  std::string schema_path;
  // Oracle description, see OracleFromJson.
  nlohmann::json oracle;
  // Fraction of rows used for training.
  double split = 0.9;
  uint64_t split_seed = 0;
  SearchConfig search;
  std::string out_dir;

  // Throws Error on an out-of-range field or an unreadable path.
  void Validate() const;
  nlohmann::json ToJson() const;
};

// Reads a run-config JSON file. Relative paths inside it are resolved
// against the file's directory. A string "oracle" value names a JSON file
// holding the oracle description.
RunConfig LoadRunConfig(const std::string& path);

// Loads an oracle description from a JSON file.
nlohmann::json LoadOracleSpec(const std::string& path);

// Deterministic shuffle-and-cut; both halves are non-empty when the data
// has at least two rows.
void SplitData(const std::vector<Instance>& data, double fraction,
               uint64_t seed, std::vector<Instance>& train,
               std::vector<Instance>& test);

struct QueryAccounting {
  size_t train_instances = 0;
  size_t train_distinct = 0;
  size_t synthetic = 0;
  size_t synthetic_cache_hits = 0;
  size_t test_instances = 0;
  size_t test_new_distinct = 0;
  size_t search_backend = 0;
  size_t eval_backend = 0;
  size_t total_backend = 0;
  size_t cache_hits = 0;

  // total_backend == train_distinct + synthetic - synthetic_cache_hits +
  // test_new_distinct
  bool consistent() const;
};

struct RunOutcome {
  SearchResult search;
  Metrics metrics;
  QueryAccounting queries;
  nlohmann::json report;
  std::string rules_text;
};

// Splits, searches, evaluates and builds the report. Writes nothing.
RunOutcome ExecuteRun(const RunConfig& config);

// ExecuteRun, then writes rules.txt and report.json into config.out_dir.
// On failure no partial artifacts are left behind.
RunOutcome Run(const RunConfig& config);

struct SweepRow {
  double beta = 0.0;
  double lambda = 0.0;
  uint64_t seed = 0;
  double f1 = 0.0;
  size_t num_rules = 0;
  size_t synthetic_queries = 0;
  std::string error;  // non-empty if the cell failed
};

// Runs every (seed, beta, lambda) cell on the same split. Seeds are
// config.search.seed, +1, ... (num_seeds of them). Failed cells are
// recorded and the sweep continues.
std::vector<SweepRow> Sweep(const RunConfig& config,
                            const std::vector<double>& betas,
                            const std::vector<double>& lambdas,
                            size_t num_seeds);

// Header `beta,lambda,seed,f1,num_rules,synthetic_queries`, one line per row.
std::string SweepCsv(const std::vector<SweepRow>& rows);

// JSON for the search history, one object per iteration.
nlohmann::json HistoryToJson(const std::vector<IterationRecord>& history,
                             const InputSpace& space);

// Re-checks recorded LUCB certificates: every non-random iteration that did
// not exhaust its budget must have lower_best >= max_upper_other (null
// meaning no competitor). Returns the number of violations.
size_t CountCertificateViolations(const nlohmann::json& history);

}  // namespace ads

#endif  // ADS_RUN_H_
