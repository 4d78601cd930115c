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

#include "ads/search.h"

#include <cmath>
#include <limits>

#include "ads/error.h"

namespace ads {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}  // namespace

void SearchConfig::Validate() const {
  params.Validate();
  if (!(epsilon >= 0.0 && epsilon <= 1.0)) {
    throw Error("epsilon must lie in [0, 1]");
  }
  if (pool_size == 0) throw Error("pool size must be positive");
  if (query_budget_per_iter == 0) throw Error("query budget must be positive");
  if (bins < 2) throw Error("bins must be at least 2");
}

std::string_view TerminationName(Termination termination) {
  switch (termination) {
    case Termination::kCertified:
      return "certified";
    case Termination::kBudgetExhausted:
      return "budget_exhausted";
    case Termination::kSingleAction:
      return "single_action";
    case Termination::kRandom:
      return "random";
  }
  return "unknown";
}

ActionTable::ActionTable(const DecisionSet& set,
                         std::span<const Action> actions, LabeledPool& pool,
                         const InputSpace& space,
                         const ObjectiveParams& params)
    : set_(set),
      actions_(actions),
      params_(params),
      total_(pool.size()),
      entries_(actions.size()),
      covered_(set.size()) {
  // others[r] = predictions of the set without rule r.
  std::vector<Mask> rule_masks;
  rule_masks.reserve(set.size());
  for (const Rule& rule : set.rules()) rule_masks.push_back(pool.RuleMask(rule));
  Mask all(pool.size());
  for (const Mask& m : rule_masks) all |= m;
  std::vector<Mask> others(set.size(), Mask(pool.size()));
  {
    Mask prefix(pool.size());
    for (size_t r = 0; r < set.size(); ++r) {
      others[r] = prefix;
      prefix |= rule_masks[r];
    }
    Mask suffix(pool.size());
    for (size_t r = set.size(); r-- > 0;) {
      others[r] |= suffix;
      suffix |= rule_masks[r];
    }
  }

  for (size_t i = 0; i < actions.size(); ++i) {
    const Action& action = actions[i];
    Entry& entry = entries_[i];
    Mask predictions = action.target ? others[*action.target] : all;
    if (action.replacement) {
      const Mask covered = pool.RuleMask(*action.replacement);
      predictions |= covered;
      entry.support = covered.count();
    } else {
      entry.support = rule_masks[*action.target].count();
    }
    entry.agree = pool.Agreement(predictions);
    entry.rules = set.size() + (action.target ? 0 : 1) -
                  (action.replacement ? 0 : 1);
    entry.volume = RuleVolume(action.affected(), space);
  }
}

void ActionTable::Append(const LabeledInstance& point) {
  ++total_;
  size_t covering = 0;
  for (size_t r = 0; r < set_.size(); ++r) {
    covered_[r] = set_.rule(r).Covers(point.instance) ? 1 : 0;
    covering += static_cast<size_t>(covered_[r]);
  }
  for (size_t i = 0; i < actions_.size(); ++i) {
    const Action& action = actions_[i];
    Entry& entry = entries_[i];
    bool predicted =
        action.target
            ? covering - static_cast<size_t>(covered_[*action.target]) > 0
            : covering > 0;
    bool in_affected;
    if (action.replacement) {
      in_affected = action.replacement->Covers(point.instance);
      predicted = predicted || in_affected;
    } else {
      in_affected = covered_[*action.target] != 0;
    }
    if (static_cast<int>(predicted) == point.label) ++entry.agree;
    if (in_affected) ++entry.support;
  }
}

Estimate ActionTable::estimate(size_t i) const {
  const Entry& entry = entries_[i];
  return MakeEstimate(entry.agree, total_, entry.rules, entry.support,
                      entry.volume, params_);
}

namespace {

// Queries one counterfactual instance for `rule` and appends it to the pool
// and the table.
void QuerySynthetic(const Rule& rule, SearchState& state,
                    const SearchConfig& config, Oracle& oracle,
                    const InputSpace& space, ActionTable& table) {
  LabeledPool& pool = state.pool;
  const Mask covered = pool.RuleMask(rule);
  std::vector<size_t> uncovered;
  uncovered.reserve(pool.size() - covered.count());
  for (size_t i = 0; i < pool.size(); ++i) {
    if (!covered.test(i)) uncovered.push_back(i);
  }

  const CandidatePool candidates = GeneratePoolFromSeeds(
      rule, pool.points(), std::move(uncovered), config.pool_size, space,
      state.rng, [&](const Instance& x) { return oracle.IsKnown(x); });
  if (!state.neighbours) state.neighbours.emplace(space);
  while (state.neighbours->size() < pool.size()) {
    state.neighbours->Append(pool[state.neighbours->size()].instance);
  }
  const size_t pick = SelectQueryIndex(candidates, *state.neighbours);

  LabeledInstance point{candidates.candidates[pick], 0, Origin::kSynthetic};
  if (oracle.IsKnown(point.instance)) ++state.synthetic_cache_hits;
  point.label = oracle.Query(point.instance);
  pool.Append(point);
  table.Append(point);
  ++state.synthetic_count;
}

}  // namespace

LucbOutcome LucbSelect(const DecisionSet& set, std::span<const Action> actions,
                       SearchState& state, const SearchConfig& config,
                       Oracle& oracle, const InputSpace& space) {
  if (actions.empty()) throw Error("LucbSelect needs at least one action");
  ActionTable table(set, actions, state.pool, space, config.params);

  LucbOutcome outcome;
  while (true) {
    size_t best = 0;
    double best_q = -kInf;
    for (size_t i = 0; i < table.size(); ++i) {
      const double q = table.estimate(i).q_hat;
      if (q > best_q) {
        best_q = q;
        best = i;
      }
    }
    const Estimate best_estimate = table.estimate(best);
    outcome.action = best;
    outcome.lower_best = best_estimate.lower;

    if (table.size() == 1) {
      outcome.max_upper_other = -kInf;
      outcome.termination = Termination::kSingleAction;
      return outcome;
    }

    size_t challenger = best == 0 ? 1 : 0;
    double challenger_upper = -kInf;
    for (size_t i = 0; i < table.size(); ++i) {
      if (i == best) continue;
      const double upper = table.estimate(i).upper;
      if (upper > challenger_upper) {
        challenger_upper = upper;
        challenger = i;
      }
    }
    outcome.max_upper_other = challenger_upper;

    if (best_estimate.lower >= challenger_upper) {
      outcome.termination = Termination::kCertified;
      return outcome;
    }
    // A round spends two queries and never overshoots the budget.
    if (outcome.synthetic_queries + 2 > config.query_budget_per_iter) {
      outcome.termination = Termination::kBudgetExhausted;
      return outcome;
    }

    QuerySynthetic(actions[best].affected(), state, config, oracle, space,
                   table);
    QuerySynthetic(actions[challenger].affected(), state, config, oracle, space,
                   table);
    outcome.synthetic_queries += 2;
  }
}

double PoolObjective(const DecisionSet& set, LabeledPool& pool,
                     const ObjectiveParams& params) {
  if (pool.empty()) throw Error("cannot estimate accuracy on an empty pool");
  const size_t agree = pool.Agreement(pool.DecisionSetMask(set));
  return MakeEstimate(agree, pool.size(), set.size(), 0, 1.0, params).q_hat;
}

SearchResult RunAds(const SearchConfig& config, std::span<const Instance> real,
                    Oracle& oracle, const InputSpace& space) {
  config.Validate();
  if (real.empty()) throw Error("the dataset is empty");
  for (const Instance& x : real) space.Validate(x);

  SearchConfig cfg = config;
  cfg.params.rho0 = static_cast<double>(real.size());
  const size_t backend_before = oracle.total_queries();

  SearchState state;
  state.rng.seed(cfg.seed);
  const std::vector<int> labels = oracle.QueryBatch(real);
  for (size_t i = 0; i < real.size(); ++i) {
    state.pool.Append({real[i], labels[i], Origin::kReal});
  }
  const CutGrid cuts = ComputeCutGrid(real, space, cfg.bins);

  SearchResult result;
  result.real_count = real.size();
  std::uniform_real_distribution<double> coin(0.0, 1.0);

  for (size_t t = 1; t <= cfg.max_iters; ++t) {
    state.iteration = t;
    const std::vector<Action> actions =
        GenerateActions(state.current, space, cuts);
    if (actions.empty()) break;

    IterationRecord record;
    record.iteration = t;
    record.num_actions = actions.size();
    size_t chosen;
    if (coin(state.rng) < cfg.epsilon) {
      std::uniform_int_distribution<size_t> pick(0, actions.size() - 1);
      chosen = pick(state.rng);
      record.was_random = true;
      record.termination = Termination::kRandom;
      record.lower_best = std::numeric_limits<double>::quiet_NaN();
      record.max_upper_other = std::numeric_limits<double>::quiet_NaN();
    } else {
      const LucbOutcome outcome =
          LucbSelect(state.current, actions, state, cfg, oracle, space);
      chosen = outcome.action;
      record.termination = outcome.termination;
      record.lower_best = outcome.lower_best;
      record.max_upper_other = outcome.max_upper_other;
      record.synthetic_queries = outcome.synthetic_queries;
      if (outcome.termination == Termination::kBudgetExhausted) {
        ++result.budget_exhaustions;
      }
    }

    const Action& action = actions[chosen];
    DecisionSet next = ApplyAction(action, state.current);
    record.kind = action.kind;
    record.action = DescribeAction(action, space);
    record.q_before = PoolObjective(state.current, state.pool, cfg.params);
    record.q_after = PoolObjective(next, state.pool, cfg.params);
    if (record.q_after > PoolObjective(state.best, state.pool, cfg.params)) {
      state.best = next;
      record.best_updated = true;
    }
    state.current = std::move(next);
    record.set_after = state.current;
    result.history.push_back(std::move(record));
  }

  // The pool keeps growing after each comparison, so re-rank every visited
  // set on the final pool.
  double best_q = PoolObjective(state.best, state.pool, cfg.params);
  const auto consider = [&](const DecisionSet& visited) {
    const double q = PoolObjective(visited, state.pool, cfg.params);
    if (q > best_q) {
      best_q = q;
      state.best = visited;
    }
  };
  consider(DecisionSet());
  for (const IterationRecord& r : result.history) consider(r.set_after);

  result.best = state.best;
  result.best_objective = best_q;
  result.synthetic_count = state.synthetic_count;
  result.synthetic_cache_hits = state.synthetic_cache_hits;
  result.backend_queries = oracle.total_queries() - backend_before;
  result.pool = std::move(state.pool);
  return result;
}

}  // namespace ads
