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

#ifndef ADS_ACTIONS_H_
#define ADS_ACTIONS_H_

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ads/rules.h"
#include "ads/schema.h"

namespace ads {

enum class ActionKind {
  kAddRule,
  kRemoveRule,
  kAddCondition,
  kRemoveCondition,
  kModifyCondition,
};

std::string_view ActionKindName(ActionKind kind);

// An edit-distance-1 modification of a decision set. Every kind is expressed
// as "replace rule `target` by `replacement`", where either side may be
// absent: add_rule has no target, remove_rule has no replacement.
struct Action {
  ActionKind kind = ActionKind::kAddRule;
  // Index of the edited or removed rule.
  std::optional<size_t> target;
  // The rule at `target` when the action was generated; used to reject
  // stale actions.
  std::optional<Rule> original;
  // The rule present after the edit.
  std::optional<Rule> replacement;
  // Attribute touched by a condition edit.
  std::optional<size_t> attribute;

  // r_a: the rule whose coverage drives the confidence width. The new rule
  // for add/modify/add_condition, the removed rule for remove_rule, the
  // shortened rule for remove_condition.
  const Rule& affected() const { return replacement ? *replacement : *original; }
};

// Per-attribute cut points; empty for categorical attributes.
using CutGrid = std::vector<std::vector<double>>;

// Interior quantiles j/bins (j = 1..bins-1) of the distinct observed values,
// using linear interpolation between order statistics, deduplicated and
// restricted to the open interval (lo, hi). Fewer than two distinct values
// yield no cuts. Throws Error if bins < 2.
std::vector<double> CandidateCutpoints(std::span<const double> values,
                                       double lo, double hi, size_t bins);

// Cut points for every continuous attribute of `data`.
CutGrid ComputeCutGrid(std::span<const Instance> data, const InputSpace& space,
                       size_t bins);

// Single-condition candidates on one attribute: [lo, v] and [v, hi] per cut
// for continuous attributes, singletons for categorical ones.
std::vector<Condition> CandidateConditions(size_t attribute,
                                           const InputSpace& space,
                                           const CutGrid& cuts);

// Enumerates the neighbourhood of `set` in a fixed order: add_rule,
// remove_rule, add_condition, remove_condition, modify_condition. Edits that
// would produce a duplicate rule are skipped.
std::vector<Action> GenerateActions(const DecisionSet& set,
                                    const InputSpace& space,
                                    const CutGrid& cuts);

// Applies `action` to a copy of `set`. Throws RuleError if the action does
// not belong to `set`.
DecisionSet ApplyAction(const Action& action, const DecisionSet& set);

// e.g. "add_condition: IF x ∈ [0.00, 0.50] AND y ∈ [0.20, 1.00] THEN positive"
std::string DescribeAction(const Action& action, const InputSpace& space);

}  // namespace ads

#endif  // ADS_ACTIONS_H_
