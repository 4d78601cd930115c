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

#include "ads/coverage_index.h"

namespace ads {

void LabeledPool::Append(LabeledInstance point) {
  positives_.push_back(point.label == 1);
  real_.push_back(point.origin == Origin::kReal);
  for (auto& [condition, mask] : condition_masks_) {
    mask.push_back(condition.Satisfies(point.instance));
  }
  points_.push_back(std::move(point));
}

const Mask& LabeledPool::ConditionMask(const Condition& condition) {
  auto it = condition_masks_.find(condition);
  if (it == condition_masks_.end()) {
    Mask mask(points_.size());
    for (size_t i = 0; i < points_.size(); ++i) {
      if (condition.Satisfies(points_[i].instance)) mask.set(i);
    }
    it = condition_masks_.emplace(condition, std::move(mask)).first;
  }
  return it->second;
}

Mask LabeledPool::RuleMask(const Rule& rule) {
  Mask mask(points_.size());
  mask.set();
  for (const Condition& condition : rule.conditions()) {
    mask &= ConditionMask(condition);
  }
  return mask;
}

Mask LabeledPool::DecisionSetMask(const DecisionSet& set) {
  Mask mask(points_.size());
  for (const Rule& rule : set.rules()) mask |= RuleMask(rule);
  return mask;
}

size_t LabeledPool::Agreement(const Mask& predictions) const {
  return points_.size() - (predictions ^ positives_).count();
}

}  // namespace ads
