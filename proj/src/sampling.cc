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

#include "ads/sampling.h"

#include <algorithm>
#include <limits>
#include <optional>

#include "ads/error.h"

namespace ads {

Instance CounterfactualModify(const Instance& seed, const Rule& rule,
                              const InputSpace& /*space*/, Rng& rng) {
  Instance out = seed;
  for (const Condition& condition : rule.conditions()) {
    const size_t i = condition.attribute();
    if (condition.is_interval()) {
      const Interval& iv = condition.interval();
      std::uniform_real_distribution<double> draw(iv.lo, iv.hi);
      // Rounding in lo + (hi - lo) * u can land one ulp outside.
      out.values[i] = std::clamp(draw(rng), iv.lo, iv.hi);
    } else {
      const auto& categories = condition.categories();
      std::uniform_int_distribution<size_t> draw(0, categories.size() - 1);
      out.values[i] = static_cast<double>(categories[draw(rng)]);
    }
  }
  return out;
}

CandidatePool GeneratePool(
    const Rule& rule, std::span<const LabeledInstance> pool, size_t size,
    const InputSpace& space, Rng& rng,
    const std::function<bool(const Instance&)>& is_known) {
  std::vector<size_t> uncovered;
  for (size_t i = 0; i < pool.size(); ++i) {
    if (!rule.Covers(pool[i].instance)) uncovered.push_back(i);
  }
  return GeneratePoolFromSeeds(rule, pool, std::move(uncovered), size, space,
                               rng, is_known);
}

CandidatePool GeneratePoolFromSeeds(
    const Rule& rule, std::span<const LabeledInstance> pool,
    std::vector<size_t> seeds, size_t size, const InputSpace& space, Rng& rng,
    const std::function<bool(const Instance&)>& is_known) {
  if (pool.empty()) throw Error("cannot generate candidates from an empty pool");
  if (size == 0) throw Error("candidate pool size must be positive");
  if (seeds.empty()) {
    seeds.resize(pool.size());
    for (size_t i = 0; i < pool.size(); ++i) seeds[i] = i;
  }

  CandidatePool out{rule, {}, {}};
  std::uniform_int_distribution<size_t> pick(0, seeds.size() - 1);
  std::optional<std::pair<Instance, size_t>> first;
  for (size_t k = 0; k < size; ++k) {
    const size_t seed = seeds[pick(rng)];
    Instance candidate =
        CounterfactualModify(pool[seed].instance, rule, space, rng);
    if (!first) first.emplace(candidate, seed);
    if (is_known && is_known(candidate)) continue;
    out.candidates.push_back(std::move(candidate));
    out.provenance.push_back(seed);
  }
  if (out.candidates.empty()) {
    out.candidates.push_back(std::move(first->first));
    out.provenance.push_back(first->second);
  }
  return out;
}

size_t SelectQueryIndex(const CandidatePool& pool,
                        std::span<const Instance> covered_existing,
                        const InputSpace& space) {
  return SelectQueryIndex(
      pool, covered_existing.size(),
      [&](size_t i) -> const Instance& { return covered_existing[i]; }, space);
}

size_t SelectQueryIndex(
    const CandidatePool& pool, size_t num_neighbours,
    const std::function<const Instance&(size_t)>& neighbour,
    const InputSpace& space) {
  if (num_neighbours == 0 || pool.candidates.size() <= 1) return 0;
  size_t best = 0;
  double best_distance = -1.0;
  for (size_t k = 0; k < pool.candidates.size(); ++k) {
    double nearest = std::numeric_limits<double>::infinity();
    for (size_t j = 0; j < num_neighbours; ++j) {
      nearest = std::min(
          nearest, InstanceDistance(pool.candidates[k], neighbour(j), space));
      // Cannot beat the current best any more.
      if (nearest <= best_distance) break;
    }
    if (nearest > best_distance) {
      best_distance = nearest;
      best = k;
    }
  }
  return best;
}

size_t SelectQueryIndex(const CandidatePool& pool, const NeighbourIndex& index) {
  if (pool.candidates.size() <= 1) return 0;
  size_t best = 0;
  double best_distance = -1.0;
  for (size_t k = 0; k < pool.candidates.size(); ++k) {
    const double nearest =
        index.NearestCovered(pool.candidates[k], pool.rule, best_distance);
    // With no covered point every candidate is at +inf; the first is kept.
    if (nearest > best_distance) {
      best_distance = nearest;
      best = k;
    }
  }
  return best;
}

}  // namespace ads
