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

#ifndef ADS_COVERAGE_INDEX_H_
#define ADS_COVERAGE_INDEX_H_

#include <cstddef>
#include <map>
#include <span>
#include <vector>

#include <boost/dynamic_bitset.hpp>

#include "ads/rules.h"
#include "ads/schema.h"

namespace ads {

using Mask = boost::dynamic_bitset<uint64_t>;

// The labeled pool X ∪ X' together with per-condition coverage bitmasks.
// Masks are built on first use and extended on every Append, so rule and
// decision-set coverage reduce to word-wise AND/OR.
class LabeledPool {
 public:
  LabeledPool() = default;

  void Append(LabeledInstance point);

  size_t size() const { return points_.size(); }
  bool empty() const { return points_.empty(); }
  const LabeledInstance& operator[](size_t i) const { return points_[i]; }
  std::span<const LabeledInstance> points() const { return points_; }

  // Bit i set iff point i has label 1.
  const Mask& positives() const { return positives_; }
  // Bit i set iff point i is real.
  const Mask& real() const { return real_; }

  const Mask& ConditionMask(const Condition& condition);
  Mask RuleMask(const Rule& rule);
  Mask DecisionSetMask(const DecisionSet& set);

  // Number of points where `predictions` equals the stored label.
  size_t Agreement(const Mask& predictions) const;

 private:
  std::vector<LabeledInstance> points_;
  Mask positives_;
  Mask real_;
  std::map<Condition, Mask> condition_masks_;
};

}  // namespace ads

#endif  // ADS_COVERAGE_INDEX_H_
