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

#ifndef ADS_OBJECTIVE_H_
#define ADS_OBJECTIVE_H_

#include <cstddef>
#include <span>

#include "ads/rules.h"
#include "ads/schema.h"

namespace ads {

struct ObjectiveParams {
  // Per-rule complexity penalty.
  double lambda = 0.01;
  // Exploration rate; 0 makes every confidence interval a point.
  double beta = 0.02;
  // Density of the real dataset over the whole space. With volumes
  // normalized to 1 this is the number of real instances.
  double rho0 = 1.0;

  // Throws Error on negative or non-finite lambda/beta or rho0 <= 0.
  void Validate() const;
};

// Estimated objective of a candidate decision set with its confidence
// interval. An empty-coverage affected rule yields an infinite interval.
struct Estimate {
  double q_hat = 0.0;
  double theta_hat = 0.0;
  double lower = 0.0;
  double upper = 0.0;
  size_t support = 0;

  double width() const { return upper - q_hat; }
};

// Fraction of `pool` on which `set` agrees with the stored label. Throws
// Error on an empty pool.
double EmpiricalTheta(const DecisionSet& set,
                      std::span<const LabeledInstance> pool);

// theta_hat - lambda * |set|.
double ObjectiveEstimate(const DecisionSet& set,
                         std::span<const LabeledInstance> pool,
                         const ObjectiveParams& params);

// beta * sqrt(rho0 * volume / support); +inf when support is 0.
double BoundWidth(size_t support, double volume, const ObjectiveParams& params);

// Interval around `q_hat` for an action whose affected rule is `affected`.
// theta_hat is NaN; use EstimateAction for a fully populated Estimate.
Estimate ActionBounds(double q_hat, const Rule& affected,
                      std::span<const LabeledInstance> pool,
                      const InputSpace& space, const ObjectiveParams& params);

// From-scratch estimate of the decision set produced by an action.
Estimate EstimateAction(const DecisionSet& after, const Rule& affected,
                        std::span<const LabeledInstance> pool,
                        const InputSpace& space, const ObjectiveParams& params);

// Running version of EstimateAction: keeps agreement and coverage counts so
// that appending an instance costs one prediction. Current() always equals
// EstimateAction over the instances seen so far.
class RunningEstimate {
 public:
  RunningEstimate(DecisionSet after, Rule affected, const InputSpace& space,
                  ObjectiveParams params);

  void Append(const LabeledInstance& point);
  Estimate Current() const;

  size_t pool_size() const { return total_; }

 private:
  DecisionSet after_;
  Rule affected_;
  double volume_;
  ObjectiveParams params_;
  size_t agree_ = 0;
  size_t total_ = 0;
  size_t support_ = 0;
};

// Shared arithmetic so running and from-scratch paths agree bit for bit.
Estimate MakeEstimate(size_t agree, size_t total, size_t rules, size_t support,
                      double volume, const ObjectiveParams& params);

}  // namespace ads

#endif  // ADS_OBJECTIVE_H_
