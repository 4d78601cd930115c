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

#ifndef ADS_SYNTHETIC_H_
#define ADS_SYNTHETIC_H_

#include <cstddef>
#include <cstdint>
#include <vector>

#include "ads/rules.h"
#include "ads/schema.h"

namespace ads {

// Two axis-aligned positive boxes on [0, 1]^2, one in each corner band:
// x in [0, 0.4] with y in [0.6, 1], and x in [0.5, 1] with y in [0, 0.5].
// The training sample has its y coordinate skewed towards 0 (y = u^3), so the
// upper box is sparsely observed. The test sample is uniform over the square.
struct TwoBoxFixture {
  InputSpace space;
  DecisionSet truth;
  std::vector<Instance> train;
  std::vector<Instance> test;
};

TwoBoxFixture MakeTwoBoxFixture(uint64_t seed, size_t num_train = 200,
                                size_t num_test = 2000);

// The schema and ground-truth boxes alone.
InputSpace TwoBoxSpace();
DecisionSet TwoBoxTruth();

}  // namespace ads

#endif  // ADS_SYNTHETIC_H_
