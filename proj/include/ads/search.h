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

#ifndef ADS_SEARCH_H_
#define ADS_SEARCH_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ads/actions.h"
#include "ads/coverage_index.h"
#include "ads/objective.h"
#include "ads/oracle.h"
#include "ads/rules.h"
#include "ads/sampling.h"
#include "ads/schema.h"

namespace ads {

struct SearchConfig {
  // rho0 is overwritten with the number of real instances by RunAds.
  ObjectiveParams params;
  double epsilon = 0.1;
  size_t max_iters = 500;
  // Candidates generated per synthetic query.
  size_t pool_size = 50;
  // Synthetic queries LucbSelect may spend in one iteration.
  size_t query_budget_per_iter = 100;
  // Quantile grid size for continuous cut points.
  size_t bins = 20;
  uint64_t seed = 0;

  void Validate() const;
};

// Mutable state of one search: S_t, S_max and the labeled pool X ∪ X'.
struct SearchState {
  DecisionSet current;
  DecisionSet best;
  LabeledPool pool;
  size_t iteration = 0;
  size_t synthetic_count = 0;
  // Synthetic instances the oracle had already labeled.
  size_t synthetic_cache_hits = 0;
  Rng rng;
  // Nearest-neighbour index over pool instances; created on first use and
  // caught up with the pool lazily.
  std::optional<NeighbourIndex> neighbours;
};

// Estimates of every action in the current neighbourhood, kept exact as
// points are appended to the pool. Entry i always equals
// EstimateAction(ApplyAction(actions[i], set), actions[i].affected(), pool).
class ActionTable {
 public:
  ActionTable(const DecisionSet& set, std::span<const Action> actions,
              LabeledPool& pool, const InputSpace& space,
              const ObjectiveParams& params);

  // Accounts for a point that has just been appended to the pool.
  void Append(const LabeledInstance& point);

  size_t size() const { return entries_.size(); }
  Estimate estimate(size_t i) const;

 private:
  struct Entry {
    size_t agree = 0;
    size_t support = 0;
    size_t rules = 0;
    double volume = 1.0;
  };

  const DecisionSet& set_;
  std::span<const Action> actions_;
  ObjectiveParams params_;
  size_t total_ = 0;
  std::vector<Entry> entries_;
  std::vector<char> covered_;  // scratch: per-rule coverage of a new point
};

enum class Termination {
  // L of the empirical best >= U of every other action.
  kCertified,
  // Synthetic query budget spent before certification.
  kBudgetExhausted,
  // Only one action available.
  kSingleAction,
  // Epsilon-greedy random step; no selection took place.
  kRandom,
};

std::string_view TerminationName(Termination termination);

struct LucbOutcome {
  size_t action = 0;
  Termination termination = Termination::kCertified;
  // L of the returned action and the largest U among the others at the
  // moment of return (-inf when there are no others).
  double lower_best = 0.0;
  double max_upper_other = 0.0;
  size_t synthetic_queries = 0;
};

// Adaptive sampling between the empirically best action a* and the most
// optimistic competitor a'. Each round queries one counterfactual instance
// for r_{a*} and then one for r_{a'} and appends both to the pool; a round
// starts only if both queries fit in the budget. Ties are broken by the
// lowest action index. Throws Error on an empty action list.
LucbOutcome LucbSelect(const DecisionSet& set, std::span<const Action> actions,
                       SearchState& state, const SearchConfig& config,
                       Oracle& oracle, const InputSpace& space);

struct IterationRecord {
  size_t iteration = 0;
  ActionKind kind = ActionKind::kAddRule;
  std::string action;  // DescribeAction text
  bool was_random = false;
  size_t num_actions = 0;
  // Objective of S_{t-1} and S_t, both on the pool at the end of the
  // iteration.
  double q_before = 0.0;
  double q_after = 0.0;
  size_t synthetic_queries = 0;
  Termination termination = Termination::kCertified;
  // Certificate; NaN for random steps.
  double lower_best = 0.0;
  double max_upper_other = 0.0;
  bool best_updated = false;
  DecisionSet set_after;
};

struct SearchResult {
  DecisionSet best;
  // Objective of `best` on the final pool.
  double best_objective = 0.0;
  std::vector<IterationRecord> history;
  size_t real_count = 0;
  size_t synthetic_count = 0;
  size_t synthetic_cache_hits = 0;
  size_t budget_exhaustions = 0;
  // Oracle backend calls made by this search (real labels + synthetic).
  size_t backend_queries = 0;
  LabeledPool pool;
};

// Objective of `set` on the pool, computed from coverage masks. Equal to
// ObjectiveEstimate over pool.points().
double PoolObjective(const DecisionSet& set, LabeledPool& pool,
                     const ObjectiveParams& params);

// The full local search: label the real data, then for max_iters
// iterations generate the neighbourhood of S_t, take a uniformly random
// action with probability epsilon or the LucbSelect winner otherwise, and
// track S_max. The returned set maximizes the objective on the final pool
// over every set visited. Deterministic given config.seed.
SearchResult RunAds(const SearchConfig& config, std::span<const Instance> real,
                    Oracle& oracle, const InputSpace& space);

}  // namespace ads

#endif  // ADS_SEARCH_H_
