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

#include "ads/objective.h"

#include <cmath>
#include <limits>

#include "ads/error.h"

namespace ads {

void ObjectiveParams::Validate() const {
  if (!std::isfinite(lambda) || lambda < 0) {
    throw Error("lambda must be finite and >= 0");
  }
  if (!std::isfinite(beta) || beta < 0) {
    throw Error("beta must be finite and >= 0");
  }
  if (!std::isfinite(rho0) || rho0 <= 0) {
    throw Error("rho0 must be finite and > 0");
  }
}

namespace {

size_t CountAgreement(const DecisionSet& set,
                      std::span<const LabeledInstance> pool) {
  size_t agree = 0;
  for (const LabeledInstance& point : pool) {
    if (set.Predict(point.instance) == point.label) ++agree;
  }
  return agree;
}

}  // namespace

double EmpiricalTheta(const DecisionSet& set,
                      std::span<const LabeledInstance> pool) {
  if (pool.empty()) throw Error("cannot estimate accuracy on an empty pool");
  return static_cast<double>(CountAgreement(set, pool)) /
         static_cast<double>(pool.size());
}

double ObjectiveEstimate(const DecisionSet& set,
                         std::span<const LabeledInstance> pool,
                         const ObjectiveParams& params) {
  return EmpiricalTheta(set, pool) -
         params.lambda * static_cast<double>(set.size());
}

double BoundWidth(size_t support, double volume,
                  const ObjectiveParams& params) {
  if (params.beta == 0.0) return 0.0;
  if (support == 0) return std::numeric_limits<double>::infinity();
  return params.beta *
         std::sqrt(params.rho0 * volume / static_cast<double>(support));
}

Estimate MakeEstimate(size_t agree, size_t total, size_t rules, size_t support,
                      double volume, const ObjectiveParams& params) {
  Estimate e;
  e.theta_hat = static_cast<double>(agree) / static_cast<double>(total);
  e.q_hat = e.theta_hat - params.lambda * static_cast<double>(rules);
  e.support = support;
  const double w = BoundWidth(support, volume, params);
  e.lower = e.q_hat - w;
  e.upper = e.q_hat + w;
  return e;
}

Estimate ActionBounds(double q_hat, const Rule& affected,
                      std::span<const LabeledInstance> pool,
                      const InputSpace& space, const ObjectiveParams& params) {
  Estimate e;
  e.q_hat = q_hat;
  e.theta_hat = std::numeric_limits<double>::quiet_NaN();
  e.support = CoverageCount(affected, pool);
  const double w = BoundWidth(e.support, RuleVolume(affected, space), params);
  e.lower = q_hat - w;
  e.upper = q_hat + w;
  return e;
}

Estimate EstimateAction(const DecisionSet& after, const Rule& affected,
                        std::span<const LabeledInstance> pool,
                        const InputSpace& space,
                        const ObjectiveParams& params) {
  if (pool.empty()) throw Error("cannot estimate an action on an empty pool");
  return MakeEstimate(CountAgreement(after, pool), pool.size(), after.size(),
                      CoverageCount(affected, pool),
                      RuleVolume(affected, space), params);
}

RunningEstimate::RunningEstimate(DecisionSet after, Rule affected,
                                 const InputSpace& space,
                                 ObjectiveParams params)
    : after_(std::move(after)),
      affected_(std::move(affected)),
      volume_(RuleVolume(affected_, space)),
      params_(params) {}

void RunningEstimate::Append(const LabeledInstance& point) {
  ++total_;
  if (after_.Predict(point.instance) == point.label) ++agree_;
  if (affected_.Covers(point.instance)) ++support_;
}

Estimate RunningEstimate::Current() const {
  if (total_ == 0) throw Error("cannot estimate an action on an empty pool");
  return MakeEstimate(agree_, total_, after_.size(), support_, volume_, params_);
}

}  // namespace ads
