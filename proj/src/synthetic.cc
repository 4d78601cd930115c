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

#include "ads/synthetic.h"

#include <random>

namespace ads {

InputSpace TwoBoxSpace() {
  return InputSpace({AttributeSpec::Continuous("x", 0.0, 1.0),
                     AttributeSpec::Continuous("y", 0.0, 1.0)});
}

DecisionSet TwoBoxTruth() {
  return DecisionSet({
      Rule({Condition::OnInterval(0, 0.0, 0.4),
            Condition::OnInterval(1, 0.6, 1.0)}),
      Rule({Condition::OnInterval(0, 0.5, 1.0),
            Condition::OnInterval(1, 0.0, 0.5)}),
  });
}

TwoBoxFixture MakeTwoBoxFixture(uint64_t seed, size_t num_train,
                                size_t num_test) {
  TwoBoxFixture fixture{TwoBoxSpace(), TwoBoxTruth(), {}, {}};
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (size_t i = 0; i < num_train; ++i) {
    const double x = unit(rng);
    const double u = unit(rng);
    fixture.train.push_back(Instance{{x, u * u * u}});
  }
  for (size_t i = 0; i < num_test; ++i) {
    const double x = unit(rng);
    const double y = unit(rng);
    fixture.test.push_back(Instance{{x, y}});
  }
  return fixture;
}

}  // namespace ads
