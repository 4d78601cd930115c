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

// Command-line entry point.
//
//   ads run   --data d.csv --schema s.json --oracle o.json --out results/
//   ads sweep --data d.csv --schema s.json --oracle o.json --out results/ \
//             --betas 0,0.02 --lambdas 0.005,0.01,0.02 --seeds 10
//   ads synth --out fixture/ --seed 1
//
// `--config run.json` loads every field from a run-config file; flags given
// on the command line override it.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "ads/error.h"
#include "ads/run.h"
#include "ads/synthetic.h"

namespace {

struct Flags {
  std::string config;
  std::string data;
  std::string schema;
  std::string oracle;
  std::string oracle_cmd;
  std::string out;
  std::optional<double> lambda;
  std::optional<double> beta;
  std::optional<double> epsilon;
  std::optional<size_t> max_iters;
  std::optional<size_t> pool_size;
  std::optional<size_t> bins;
  std::optional<size_t> budget;
  std::optional<uint64_t> seed;
  std::optional<double> split;
  std::optional<uint64_t> split_seed;
};

void AddRunFlags(CLI::App* app, Flags& f) {
  app->add_option("--config", f.config, "Run-config JSON file");
  app->add_option("--data", f.data, "Dataset CSV");
  app->add_option("--schema", f.schema, "Schema JSON");
  app->add_option("--oracle", f.oracle, "Oracle spec JSON file");
  app->add_option("--oracle-cmd", f.oracle_cmd,
                  "Command of a subprocess oracle (line protocol)");
  app->add_option("--out", f.out, "Output directory");
  app->add_option("--lambda", f.lambda, "Per-rule penalty (default 0.01)");
  app->add_option("--beta", f.beta, "Exploration rate (default 0.02)");
  app->add_option("--epsilon", f.epsilon, "Random-step probability (default 0.1)");
  app->add_option("--max-iters", f.max_iters, "Iterations (default 500)");
  app->add_option("--pool-size", f.pool_size,
                  "Candidates per synthetic query (default 50)");
  app->add_option("--bins", f.bins, "Cut-point grid size (default 20)");
  app->add_option("--budget", f.budget,
                  "Synthetic queries per iteration (default 100)");
  app->add_option("--seed", f.seed, "Search seed (default 0)");
  app->add_option("--split", f.split, "Training fraction (default 0.9)");
  app->add_option("--split-seed", f.split_seed, "Split seed (default 0)");
}

ads::RunConfig BuildConfig(const Flags& f) {
  ads::RunConfig config;
  if (!f.config.empty()) config = ads::LoadRunConfig(f.config);
  if (!f.data.empty()) config.data_path = f.data;
  if (!f.schema.empty()) config.schema_path = f.schema;
  if (!f.out.empty()) config.out_dir = f.out;
  if (!f.oracle.empty()) config.oracle = ads::LoadOracleSpec(f.oracle);
  if (!f.oracle_cmd.empty()) {
    config.oracle = {{"type", "subprocess"}, {"command", f.oracle_cmd}};
  }
  ads::SearchConfig& s = config.search;
  if (f.lambda) s.params.lambda = *f.lambda;
  if (f.beta) s.params.beta = *f.beta;
  if (f.epsilon) s.epsilon = *f.epsilon;
  if (f.max_iters) s.max_iters = *f.max_iters;
  if (f.pool_size) s.pool_size = *f.pool_size;
  if (f.bins) s.bins = *f.bins;
  if (f.budget) s.query_budget_per_iter = *f.budget;
  if (f.seed) s.seed = *f.seed;
  if (f.split) config.split = *f.split;
  if (f.split_seed) config.split_seed = *f.split_seed;
  return config;
}

void WriteText(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
  if (!out) throw ads::Error("failed writing '" + path.string() + "'");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Active decision-set induction for black-box classifiers"};
  app.require_subcommand(1);

  Flags run_flags;
  CLI::App* run = app.add_subcommand("run", "Learn a decision set");
  AddRunFlags(run, run_flags);

  Flags sweep_flags;
  std::vector<double> betas{0.0, 0.02};
  std::vector<double> lambdas{0.01};
  size_t seeds = 1;
  CLI::App* sweep = app.add_subcommand("sweep", "Run a beta x lambda grid");
  AddRunFlags(sweep, sweep_flags);
  sweep->add_option("--betas", betas, "Comma-separated betas")->delimiter(',');
  sweep->add_option("--lambdas", lambdas, "Comma-separated lambdas")
      ->delimiter(',');
  sweep->add_option("--seeds", seeds, "Number of consecutive seeds");

  std::string synth_out;
  uint64_t synth_seed = 0;
  size_t synth_rows = 222;
  CLI::App* synth =
      app.add_subcommand("synth", "Write the two-box example problem");
  synth->add_option("--out", synth_out, "Output directory")->required();
  synth->add_option("--seed", synth_seed, "Sample seed");
  synth->add_option("--rows", synth_rows, "Number of rows");

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) {
      const ads::RunConfig config = BuildConfig(run_flags);
      const ads::RunOutcome outcome = ads::Run(config);
      std::cout << outcome.rules_text;
      std::fprintf(stderr,
                   "f1=%.4f accuracy=%.4f rules=%zu synthetic=%zu -> %s\n",
                   outcome.metrics.f1, outcome.metrics.accuracy,
                   outcome.search.best.size(), outcome.search.synthetic_count,
                   config.out_dir.c_str());
    } else if (sweep->parsed()) {
      const ads::RunConfig config = BuildConfig(sweep_flags);
      const auto rows = ads::Sweep(config, betas, lambdas, seeds);
      for (const auto& row : rows) {
        if (!row.error.empty()) {
          std::cerr << "cell beta=" << row.beta << " lambda=" << row.lambda
                    << " seed=" << row.seed << " failed: " << row.error << "\n";
        }
      }
      const std::string table = ads::SweepCsv(rows);
      std::cout << table;
      if (!config.out_dir.empty()) {
        std::filesystem::create_directories(config.out_dir);
        WriteText(std::filesystem::path(config.out_dir) / "sweep.csv", table);
      }
    } else if (synth->parsed()) {
      const ads::TwoBoxFixture fixture =
          ads::MakeTwoBoxFixture(synth_seed, synth_rows, 0);
      const std::filesystem::path out(synth_out);
      std::filesystem::create_directories(out);
      WriteText(out / "schema.json", ads::DumpSchema(fixture.space));
      WriteText(out / "data.csv",
                ads::SerializeDataset(fixture.train, fixture.space));
      nlohmann::json oracle = ads::DecisionSetToJson(fixture.truth, fixture.space);
      oracle["type"] = "boxes";
      WriteText(out / "oracle.json", oracle.dump(2) + "\n");
      nlohmann::json config = {{"data", "data.csv"},
                               {"schema", "schema.json"},
                               {"oracle", "oracle.json"},
                               {"out", "results"}};
      WriteText(out / "run.json", config.dump(2) + "\n");
      std::cerr << "wrote " << out.string() << "\n";
    }
  } catch (const std::exception& e) {
    std::cerr << "ads: error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
