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

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <set>

#include "ads/error.h"
#include "test_util.h"

namespace ads {
namespace {

// Reference quantile: 1-based position h = (N - 1) p + 1, interpolate
// between x[floor(h)] and x[floor(h) + 1].
double LinearQuantile(std::vector<double> xs, double p) {
  std::sort(xs.begin(), xs.end());
  const double h = (xs.size() - 1) * p + 1.0;
  const size_t k = static_cast<size_t>(h);
  if (k >= xs.size()) return xs.back();
  return xs[k - 1] + (h - k) * (xs[k] - xs[k - 1]);
}

TEST(CandidateCutpoints, QuartilesOfOneToHundred) {
  std::vector<double> values;
  for (int i = 1; i <= 100; ++i) values.push_back(i);
  const auto cuts = CandidateCutpoints(values, 0.0, 101.0, 4);
  ASSERT_EQ(cuts.size(), 3u);
  EXPECT_DOUBLE_EQ(cuts[0], 25.75);
  EXPECT_DOUBLE_EQ(cuts[1], 50.5);
  EXPECT_DOUBLE_EQ(cuts[2], 75.25);
}

TEST(CandidateCutpoints, MatchesReferenceQuantiles) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 300; ++trial) {
    const size_t n = 2 + rng() % 60;
    const size_t bins = 2 + rng() % 12;
    std::vector<double> values;
    for (size_t i = 0; i < n; ++i) {
      values.push_back(std::uniform_real_distribution<double>(0, 1)(rng));
    }
    // Duplicates are collapsed before computing quantiles.
    std::vector<double> with_dups = values;
    with_dups.insert(with_dups.end(), values.begin(), values.begin() + n / 2);
    const auto cuts = CandidateCutpoints(with_dups, 0.0, 1.0, bins);
    std::vector<double> expected;
    for (size_t j = 1; j < bins; ++j) {
      const double q = LinearQuantile(values, double(j) / bins);
      if (q > 0.0 && q < 1.0 && (expected.empty() || q > expected.back())) {
        expected.push_back(q);
      }
    }
    ASSERT_EQ(cuts.size(), expected.size());
    for (size_t i = 0; i < cuts.size(); ++i) {
      EXPECT_NEAR(cuts[i], expected[i], 1e-12);
    }
  }
}

TEST(CandidateCutpoints, Degenerate) {
  const std::vector<double> constant(20, 3.0);
  EXPECT_TRUE(CandidateCutpoints(constant, 0.0, 10.0, 10).empty());
  EXPECT_TRUE(CandidateCutpoints({}, 0.0, 10.0, 10).empty());
  const std::vector<double> values = {1, 2, 3, 4, 100};
  const auto median = CandidateCutpoints(values, 0.0, 200.0, 2);
  ASSERT_EQ(median.size(), 1u);
  EXPECT_EQ(median[0], 3.0);
  EXPECT_THROW(CandidateCutpoints(values, 0.0, 200.0, 1), Error);
}

TEST(CandidateCutpoints, StrictlyInsideDomain) {
  const std::vector<double> values = {0.0, 0.0, 10.0, 10.0};
  // Quantiles of {0, 10} with 4 bins: 2.5, 5, 7.5.
  EXPECT_EQ(CandidateCutpoints(values, 0.0, 10.0, 4),
            (std::vector<double>{2.5, 5.0, 7.5}));
  // Narrow domain excludes them all.
  EXPECT_TRUE(CandidateCutpoints(values, 5.0, 5.0, 2).empty());
}

CutGrid PriceCuts() { return {{2.5, 5.0, 7.5}, {}}; }

TEST(GenerateActions, EmptySetOnlyAddsRules) {
  const InputSpace space = testing::PriceStateSpace();
  const auto actions = GenerateActions(DecisionSet(), space, PriceCuts());
  // 3 cuts x 2 directions on price + 3 state singletons.
  ASSERT_EQ(actions.size(), 9u);
  for (const Action& a : actions) {
    EXPECT_EQ(a.kind, ActionKind::kAddRule);
    EXPECT_EQ(a.affected().size(), 1u);
  }
  EXPECT_EQ(*actions[0].replacement,
            Rule({Condition::OnInterval(0, 0.0, 2.5)}));
  EXPECT_EQ(*actions[1].replacement,
            Rule({Condition::OnInterval(0, 2.5, 10.0)}));
}

TEST(GenerateActions, SingleConditionRuleCannotLoseIt) {
  const InputSpace space = testing::PriceStateSpace();
  const DecisionSet set({Rule({Condition::OnValues(1, {1})})});
  std::map<ActionKind, int> counts;
  for (const Action& a : GenerateActions(set, space, PriceCuts())) {
    ++counts[a.kind];
  }
  EXPECT_EQ(counts[ActionKind::kRemoveCondition], 0);
  EXPECT_EQ(counts[ActionKind::kRemoveRule], 1);
  EXPECT_EQ(counts[ActionKind::kAddCondition], 6);
  // {Texas} -> {California, Texas} or {Texas, NewYork}.
  EXPECT_EQ(counts[ActionKind::kModifyCondition], 2);
  // Every singleton except the one already present.
  EXPECT_EQ(counts[ActionKind::kAddRule], 8);
}

TEST(GenerateActions, KindOrder) {
  std::mt19937_64 rng(4);
  const InputSpace space = testing::PriceStateSpace();
  for (int trial = 0; trial < 50; ++trial) {
    DecisionSet set;
    for (int k = 0; k < 3; ++k) {
      const Rule r = testing::RandomRule(space, rng);
      if (!set.Contains(r)) set = set.WithRule(r);
    }
    const auto actions = GenerateActions(set, space, PriceCuts());
    EXPECT_TRUE(std::is_sorted(
        actions.begin(), actions.end(),
        [](const Action& a, const Action& b) { return a.kind < b.kind; }));
  }
}

TEST(GenerateActions, ModifyMovesToNeighbouringGridValue) {
  const InputSpace space = testing::PriceStateSpace();
  const DecisionSet set({Rule({Condition::OnInterval(0, 2.5, 7.5)})});
  std::set<std::pair<double, double>> seen;
  for (const Action& a : GenerateActions(set, space, PriceCuts())) {
    if (a.kind != ActionKind::kModifyCondition) continue;
    const Interval& i = a.replacement->Find(0)->interval();
    seen.insert({i.lo, i.hi});
  }
  const std::set<std::pair<double, double>> expected = {
      {0.0, 7.5}, {5.0, 7.5}, {2.5, 5.0}, {2.5, 10.0}};
  EXPECT_EQ(seen, expected);
}

// Independent edit-distance check on canonical rule lists.
bool ConditionsDifferByOne(const Rule& a, const Rule& b) {
  const auto& ca = a.conditions();
  const auto& cb = b.conditions();
  std::set<size_t> attrs_a, attrs_b;
  for (const auto& c : ca) attrs_a.insert(c.attribute());
  for (const auto& c : cb) attrs_b.insert(c.attribute());
  if (ca.size() + 1 == cb.size() || cb.size() + 1 == ca.size()) {
    const auto& small = ca.size() < cb.size() ? ca : cb;
    const auto& large = ca.size() < cb.size() ? cb : ca;
    for (const auto& c : small) {
      if (std::find(large.begin(), large.end(), c) == large.end()) return false;
    }
    return true;
  }
  if (ca.size() != cb.size() || attrs_a != attrs_b) return false;
  int changed = 0;
  for (size_t i = 0; i < ca.size(); ++i) changed += !(ca[i] == cb[i]);
  return changed == 1;
}

bool EditDistanceOne(const DecisionSet& before, const DecisionSet& after) {
  std::vector<Rule> a = before.Canonical();
  std::vector<Rule> b = after.Canonical();
  std::vector<Rule> only_a, only_b;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(),
                      std::back_inserter(only_a));
  std::set_difference(b.begin(), b.end(), a.begin(), a.end(),
                      std::back_inserter(only_b));
  if (only_a.empty() && only_b.size() == 1) return only_b[0].size() == 1;
  if (only_a.size() == 1 && only_b.empty()) return true;
  if (only_a.size() == 1 && only_b.size() == 1) {
    return ConditionsDifferByOne(only_a[0], only_b[0]);
  }
  return false;
}

TEST(GenerateActions, EveryActionIsOneEditAway) {
  std::mt19937_64 rng(5);
  size_t checked = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const InputSpace space = testing::RandomSpace(rng);
    std::vector<Instance> data;
    for (int i = 0; i < 30; ++i) data.push_back(testing::RandomInstance(space, rng));
    const CutGrid cuts = ComputeCutGrid(data, space, 2 + rng() % 6);
    DecisionSet set;
    for (int k = 0; k < 3; ++k) {
      const Rule r = testing::RandomRule(space, rng);
      if (!set.Contains(r)) set = set.WithRule(r);
    }
    for (const Action& a : GenerateActions(set, space, cuts)) {
      const DecisionSet after = ApplyAction(a, set);
      ASSERT_TRUE(EditDistanceOne(set, after))
          << DescribeAction(a, space) << "\nbefore:\n"
          << RenderDecisionSet(set, space);
      // No duplicate rules and every rule stays valid.
      const auto canonical = after.Canonical();
      ASSERT_EQ(std::adjacent_find(canonical.begin(), canonical.end()),
                canonical.end());
      for (const Rule& r : after.rules()) r.Validate(space);
      ++checked;
    }
  }
  EXPECT_GT(checked, 1000u);
}

TEST(ApplyAction, AddThenRemoveRestores) {
  const InputSpace space = testing::PriceStateSpace();
  const DecisionSet empty;
  const auto adds = GenerateActions(empty, space, PriceCuts());
  const DecisionSet one = ApplyAction(adds[3], empty);
  ASSERT_EQ(one.size(), 1u);
  for (const Action& a : GenerateActions(one, space, PriceCuts())) {
    if (a.kind == ActionKind::kRemoveRule) {
      EXPECT_EQ(ApplyAction(a, one), empty);
    }
  }
}

TEST(ApplyAction, RejectsStaleActions) {
  const InputSpace space = testing::PriceStateSpace();
  const DecisionSet set({Rule({Condition::OnValues(1, {0})}),
                         Rule({Condition::OnInterval(0, 0.0, 2.5)})});
  const auto actions = GenerateActions(set, space, PriceCuts());
  const auto remove = std::find_if(actions.begin(), actions.end(), [](auto& a) {
    return a.kind == ActionKind::kRemoveRule && *a.target == 1;
  });
  ASSERT_NE(remove, actions.end());
  EXPECT_THROW(ApplyAction(*remove, set.WithoutRule(0)), RuleError);
  EXPECT_THROW(ApplyAction(*remove, DecisionSet({set.rule(1), set.rule(0)})),
               RuleError);
  EXPECT_NO_THROW(ApplyAction(*remove, set));
}

TEST(ApplyAction, ModifyChangesExactlyOnePayload) {
  std::mt19937_64 rng(6);
  const InputSpace space = testing::PriceStateSpace();
  for (int trial = 0; trial < 100; ++trial) {
    const DecisionSet set({testing::RandomRule(space, rng)});
    for (const Action& a : GenerateActions(set, space, PriceCuts())) {
      if (a.kind != ActionKind::kModifyCondition) continue;
      const Rule& before = *a.original;
      const Rule& after = *a.replacement;
      ASSERT_EQ(before.size(), after.size());
      int changed = 0;
      for (size_t i = 0; i < before.size(); ++i) {
        EXPECT_EQ(before.conditions()[i].attribute(),
                  after.conditions()[i].attribute());
        changed += !(before.conditions()[i] == after.conditions()[i]);
      }
      EXPECT_EQ(changed, 1);
      EXPECT_EQ(after.Find(*a.attribute)->attribute(), *a.attribute);
    }
  }
}

TEST(DescribeAction, NamesKindAndRule) {
  const InputSpace space = testing::PriceStateSpace();
  const auto actions = GenerateActions(DecisionSet(), space, PriceCuts());
  EXPECT_EQ(DescribeAction(actions[0], space),
            "add_rule: IF price ∈ [0.00, 2.50] THEN positive");
  EXPECT_EQ(DescribeAction(actions[6], space),
            "add_rule: IF state ∈ {California} THEN positive");
}

}  // namespace
}  // namespace ads
