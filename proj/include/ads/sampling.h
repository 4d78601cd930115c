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

#ifndef ADS_SAMPLING_H_
#define ADS_SAMPLING_H_

#include <cstddef>
#include <functional>
#include <random>
#include <span>
#include <vector>

#include "ads/neighbour_index.h"
#include "ads/rules.h"
#include "ads/schema.h"

namespace ads {

using Rng = std::mt19937_64;

// Candidate instances generated for one rule r_a; all satisfy it.
struct CandidatePool {
  Rule rule;
  std::vector<Instance> candidates;
  // provenance[k] = index (into the pool it was drawn from) of the instance
  // candidates[k] was modified from.
  std::vector<size_t> provenance;
};

// Copies `seed` and redraws every attribute constrained by `rule` uniformly
// from its condition: the interval for continuous attributes, the value set
// for categorical ones. The result satisfies `rule`.
Instance CounterfactualModify(const Instance& seed, const Rule& rule,
                              const InputSpace& space, Rng& rng);

// Counterfactual sampling: draws `size` seeds uniformly with replacement from
// the pool instances not covered by `rule` (from all instances if every one
// is covered), modifies each to satisfy `rule`, and drops candidates for
// which `is_known` holds. If that drops everything, the first candidate is
// kept so the pool is never empty. Throws Error on an empty pool or size 0.
CandidatePool GeneratePool(
    const Rule& rule, std::span<const LabeledInstance> pool, size_t size,
    const InputSpace& space, Rng& rng,
    const std::function<bool(const Instance&)>& is_known = {});

// GeneratePool with the non-covered seed indices precomputed. An empty
// `seeds` list means every instance is covered.
CandidatePool GeneratePoolFromSeeds(
    const Rule& rule, std::span<const LabeledInstance> pool,
    std::vector<size_t> seeds, size_t size, const InputSpace& space, Rng& rng,
    const std::function<bool(const Instance&)>& is_known = {});

// Index of the candidate whose nearest neighbour in `covered_existing` is
// farthest away (lowest index on ties); 0 if `covered_existing` is empty.
size_t SelectQueryIndex(const CandidatePool& pool,
                        std::span<const Instance> covered_existing,
                        const InputSpace& space);

// Same, with neighbours supplied by index.
size_t SelectQueryIndex(
    const CandidatePool& pool, size_t num_neighbours,
    const std::function<const Instance&(size_t)>& neighbour,
    const InputSpace& space);

// Same, with the neighbours being the points of `index` covered by
// pool.rule. Selects exactly what the exhaustive overloads would.
size_t SelectQueryIndex(const CandidatePool& pool, const NeighbourIndex& index);

inline const Instance& SelectQueryInstance(
    const CandidatePool& pool, std::span<const Instance> covered_existing,
    const InputSpace& space) {
  return pool.candidates[SelectQueryIndex(pool, covered_existing, space)];
}

}  // namespace ads

#endif  // ADS_SAMPLING_H_
