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

#ifndef ADS_METRICS_H_
#define ADS_METRICS_H_

#include <cstddef>
#include <span>

#include "ads/oracle.h"
#include "ads/rules.h"
#include "ads/schema.h"

namespace ads {

struct Confusion {
  size_t tp = 0;
  size_t fp = 0;
  size_t tn = 0;
  size_t fn = 0;

  size_t total() const { return tp + fp + tn + fn; }
};

struct Interpretability {
  size_t num_rules = 0;
  double avg_conditions = 0.0;
  size_t max_conditions = 0;
};

// Faithfulness of a decision set to the oracle; label 1 is the positive
// class. Ratios with a zero denominator are 0.
struct Metrics {
  double accuracy = 0.0;
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  Confusion confusion;
  Interpretability interpretability;
};

Metrics MetricsFromConfusion(const Confusion& confusion);

// Labels `test` with the oracle and scores `set` against those labels.
// Throws Error on an empty test set; oracle failures propagate.
Metrics Evaluate(const DecisionSet& set, Oracle& oracle,
                 std::span<const Instance> test);

Interpretability InterpretabilityMetrics(const DecisionSet& set);

}  // namespace ads

#endif  // ADS_METRICS_H_
