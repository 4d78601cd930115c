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

#include "ads/metrics.h"

#include <algorithm>

#include "ads/error.h"

namespace ads {

namespace {
double Ratio(size_t num, size_t den) {
  return den == 0 ? 0.0 : static_cast<double>(num) / static_cast<double>(den);
}
}  // namespace

Metrics MetricsFromConfusion(const Confusion& c) {
  Metrics m;
  m.confusion = c;
  m.accuracy = Ratio(c.tp + c.tn, c.total());
  m.precision = Ratio(c.tp, c.tp + c.fp);
  m.recall = Ratio(c.tp, c.tp + c.fn);
  m.f1 = m.precision + m.recall > 0.0
             ? 2.0 * m.precision * m.recall / (m.precision + m.recall)
             : 0.0;
  return m;
}

Metrics Evaluate(const DecisionSet& set, Oracle& oracle,
                 std::span<const Instance> test) {
  if (test.empty()) throw Error("cannot evaluate on an empty test set");
  const std::vector<int> truth = oracle.QueryBatch(test);
  Confusion c;
  for (size_t i = 0; i < test.size(); ++i) {
    const int predicted = set.Predict(test[i]);
    if (predicted == 1) {
      ++(truth[i] == 1 ? c.tp : c.fp);
    } else {
      ++(truth[i] == 1 ? c.fn : c.tn);
    }
  }
  Metrics m = MetricsFromConfusion(c);
  m.interpretability = InterpretabilityMetrics(set);
  return m;
}

Interpretability InterpretabilityMetrics(const DecisionSet& set) {
  Interpretability out;
  out.num_rules = set.size();
  size_t total = 0;
  for (const Rule& rule : set.rules()) {
    total += rule.size();
    out.max_conditions = std::max(out.max_conditions, rule.size());
  }
  out.avg_conditions = Ratio(total, set.size());
  return out;
}

}  // namespace ads
