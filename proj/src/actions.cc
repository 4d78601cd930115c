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

#include "ads/actions.h"

#include <algorithm>
#include <cmath>

#include "ads/error.h"

namespace ads {

std::string_view ActionKindName(ActionKind kind) {
  switch (kind) {
    case ActionKind::kAddRule:
      return "add_rule";
    case ActionKind::kRemoveRule:
      return "remove_rule";
    case ActionKind::kAddCondition:
      return "add_condition";
    case ActionKind::kRemoveCondition:
      return "remove_condition";
    case ActionKind::kModifyCondition:
      return "modify_condition";
  }
  return "unknown";
}

std::vector<double> CandidateCutpoints(std::span<const double> values,
                                       double lo, double hi, size_t bins) {
  if (bins < 2) throw Error("bins must be at least 2");
  std::vector<double> distinct(values.begin(), values.end());
  std::sort(distinct.begin(), distinct.end());
  distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
  std::vector<double> cuts;
  if (distinct.size() < 2) return cuts;

  const double last = static_cast<double>(distinct.size() - 1);
  for (size_t j = 1; j < bins; ++j) {
    const double position =
        static_cast<double>(j) / static_cast<double>(bins) * last;
    const size_t below = static_cast<size_t>(std::floor(position));
    const double fraction = position - static_cast<double>(below);
    double cut = distinct[below];
    if (fraction > 0.0 && below + 1 < distinct.size()) {
      cut += fraction * (distinct[below + 1] - distinct[below]);
    }
    if (cut > lo && cut < hi && (cuts.empty() || cut > cuts.back())) {
      cuts.push_back(cut);
    }
  }
  return cuts;
}

CutGrid ComputeCutGrid(std::span<const Instance> data, const InputSpace& space,
                       size_t bins) {
  CutGrid grid(space.size());
  std::vector<double> column;
  for (size_t i = 0; i < space.size(); ++i) {
    const AttributeSpec& attribute = space.attribute(i);
    if (!attribute.is_continuous()) continue;
    column.clear();
    for (const Instance& x : data) column.push_back(x.values[i]);
    grid[i] = CandidateCutpoints(column, attribute.lo(), attribute.hi(), bins);
  }
  return grid;
}

std::vector<Condition> CandidateConditions(size_t attribute,
                                           const InputSpace& space,
                                           const CutGrid& cuts) {
  const AttributeSpec& spec = space.attribute(attribute);
  std::vector<Condition> out;
  if (spec.is_continuous()) {
    for (const double cut : cuts[attribute]) {
      out.push_back(Condition::OnInterval(attribute, spec.lo(), cut));
      out.push_back(Condition::OnInterval(attribute, cut, spec.hi()));
    }
  } else {
    for (size_t category = 0; category < spec.domain_size(); ++category) {
      out.push_back(Condition::OnValues(attribute, {category}));
    }
  }
  return out;
}

namespace {

// True if `rule` equals some rule of `set` other than the one at `skip`.
bool DuplicatesOther(const DecisionSet& set, const Rule& rule,
                     std::optional<size_t> skip) {
  for (size_t i = 0; i < set.size(); ++i) {
    if (skip && *skip == i) continue;
    if (set.rule(i) == rule) return true;
  }
  return false;
}

// Conditions reachable from `condition` by one modify step.
std::vector<Condition> ModifiedConditions(const Condition& condition,
                                          const InputSpace& space,
                                          const CutGrid& cuts) {
  const size_t attribute = condition.attribute();
  const AttributeSpec& spec = space.attribute(attribute);
  std::vector<Condition> out;
  if (condition.is_interval()) {
    std::vector<double> grid;
    grid.push_back(spec.lo());
    grid.insert(grid.end(), cuts[attribute].begin(), cuts[attribute].end());
    grid.push_back(spec.hi());
    const double lo = condition.interval().lo;
    const double hi = condition.interval().hi;

    // Nearest grid value strictly below / above v.
    const auto below = [&](double v) -> std::optional<double> {
      auto it = std::lower_bound(grid.begin(), grid.end(), v);
      if (it == grid.begin()) return std::nullopt;
      return *std::prev(it);
    };
    const auto above = [&](double v) -> std::optional<double> {
      auto it = std::upper_bound(grid.begin(), grid.end(), v);
      if (it == grid.end()) return std::nullopt;
      return *it;
    };

    if (const auto v = below(lo)) {
      out.push_back(Condition::OnInterval(attribute, *v, hi));
    }
    if (const auto v = above(lo); v && *v < hi) {
      out.push_back(Condition::OnInterval(attribute, *v, hi));
    }
    if (const auto v = below(hi); v && *v > lo) {
      out.push_back(Condition::OnInterval(attribute, lo, *v));
    }
    if (const auto v = above(hi)) {
      out.push_back(Condition::OnInterval(attribute, lo, *v));
    }
  } else {
    const auto& present = condition.categories();
    for (size_t category = 0; category < spec.domain_size(); ++category) {
      const bool has =
          std::binary_search(present.begin(), present.end(), category);
      std::vector<size_t> values;
      if (has) {
        if (present.size() < 2) continue;
        for (const size_t v : present) {
          if (v != category) values.push_back(v);
        }
      } else {
        values = present;
        values.push_back(category);
      }
      out.push_back(Condition::OnValues(attribute, std::move(values)));
    }
  }
  return out;
}

}  // namespace

std::vector<Action> GenerateActions(const DecisionSet& set,
                                    const InputSpace& space,
                                    const CutGrid& cuts) {
  std::vector<std::vector<Condition>> candidates(space.size());
  for (size_t i = 0; i < space.size(); ++i) {
    candidates[i] = CandidateConditions(i, space, cuts);
  }

  std::vector<Action> actions;

  for (size_t attribute = 0; attribute < space.size(); ++attribute) {
    for (const Condition& condition : candidates[attribute]) {
      Rule rule({condition});
      if (set.Contains(rule)) continue;
      actions.push_back(
          {ActionKind::kAddRule, std::nullopt, std::nullopt, rule, attribute});
    }
  }

  for (size_t r = 0; r < set.size(); ++r) {
    actions.push_back({ActionKind::kRemoveRule, r, set.rule(r), std::nullopt,
                       std::nullopt});
  }

  for (size_t r = 0; r < set.size(); ++r) {
    const Rule& rule = set.rule(r);
    for (size_t attribute = 0; attribute < space.size(); ++attribute) {
      if (rule.Find(attribute) != nullptr) continue;
      for (const Condition& condition : candidates[attribute]) {
        Rule edited = rule.With(condition);
        if (DuplicatesOther(set, edited, r)) continue;
        actions.push_back(
            {ActionKind::kAddCondition, r, rule, std::move(edited), attribute});
      }
    }
  }

  for (size_t r = 0; r < set.size(); ++r) {
    const Rule& rule = set.rule(r);
    if (rule.size() < 2) continue;
    for (const Condition& condition : rule.conditions()) {
      Rule edited = rule.Without(condition.attribute());
      if (DuplicatesOther(set, edited, r)) continue;
      actions.push_back({ActionKind::kRemoveCondition, r, rule,
                         std::move(edited), condition.attribute()});
    }
  }

  for (size_t r = 0; r < set.size(); ++r) {
    const Rule& rule = set.rule(r);
    for (const Condition& condition : rule.conditions()) {
      for (const Condition& modified :
           ModifiedConditions(condition, space, cuts)) {
        Rule edited = rule.With(modified);
        if (edited == rule || DuplicatesOther(set, edited, r)) continue;
        actions.push_back({ActionKind::kModifyCondition, r, rule,
                           std::move(edited), condition.attribute()});
      }
    }
  }
  return actions;
}

DecisionSet ApplyAction(const Action& action, const DecisionSet& set) {
  if (action.target) {
    if (*action.target >= set.size()) {
      throw RuleError("stale action: rule index " +
                      std::to_string(*action.target) + " out of range");
    }
    if (action.original && !(set.rule(*action.target) == *action.original)) {
      throw RuleError("stale action: rule " + std::to_string(*action.target) +
                      " has changed");
    }
    if (!action.replacement) return set.WithoutRule(*action.target);
    return set.WithReplacedRule(*action.target, *action.replacement);
  }
  if (!action.replacement) throw RuleError("action has no effect");
  return set.WithRule(*action.replacement);
}

std::string DescribeAction(const Action& action, const InputSpace& space) {
  return std::string(ActionKindName(action.kind)) + ": " +
         RenderRule(action.affected(), space);
}

}  // namespace ads
