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

#ifndef ADS_TESTS_TEST_UTIL_H_
#define ADS_TESTS_TEST_UTIL_H_

#include <random>
#include <vector>

#include "ads/rules.h"
#include "ads/schema.h"

namespace ads::testing {

// price: continuous [0, 10]; state: categorical {California, Texas, NewYork}.
inline InputSpace PriceStateSpace() {
  return InputSpace({AttributeSpec::Continuous("price", 0.0, 10.0),
                     AttributeSpec::Categorical(
                         "state", {"California", "Texas", "NewYork"})});
}

inline InputSpace UnitSquare() {
  return InputSpace({AttributeSpec::Continuous("x", 0.0, 1.0),
                     AttributeSpec::Continuous("y", 0.0, 1.0)});
}

// Random schema with 1-4 attributes of mixed kinds.
inline InputSpace RandomSpace(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> count(1, 4);
  std::uniform_real_distribution<double> bound(-50.0, 50.0);
  std::uniform_int_distribution<int> domain(1, 5);
  std::bernoulli_distribution coin(0.5);
  std::vector<AttributeSpec> attributes;
  const int m = count(rng);
  for (int i = 0; i < m; ++i) {
    const std::string name = "a" + std::to_string(i);
    if (coin(rng)) {
      double lo = bound(rng);
      double hi = bound(rng);
      if (lo > hi) std::swap(lo, hi);
      if (hi - lo < 1e-3) hi = lo + 1.0;
      attributes.push_back(AttributeSpec::Continuous(name, lo, hi));
    } else {
      std::vector<std::string> values;
      const int k = domain(rng);
      for (int v = 0; v < k; ++v) values.push_back("v" + std::to_string(v));
      attributes.push_back(AttributeSpec::Categorical(name, values));
    }
  }
  return InputSpace(std::move(attributes));
}

inline Instance RandomInstance(const InputSpace& space, std::mt19937_64& rng) {
  Instance x;
  for (const auto& a : space.attributes()) {
    if (a.is_continuous()) {
      x.values.push_back(
          std::uniform_real_distribution<double>(a.lo(), a.hi())(rng));
    } else {
      x.values.push_back(static_cast<double>(
          std::uniform_int_distribution<size_t>(0, a.domain_size() - 1)(rng)));
    }
  }
  return x;
}

// Random valid condition on `attribute`.
inline Condition RandomCondition(const InputSpace& space, size_t attribute,
                                 std::mt19937_64& rng) {
  const AttributeSpec& a = space.attribute(attribute);
  if (a.is_continuous()) {
    std::uniform_real_distribution<double> draw(a.lo(), a.hi());
    double lo = draw(rng);
    double hi = draw(rng);
    if (lo > hi) std::swap(lo, hi);
    return Condition::OnInterval(attribute, lo, hi);
  }
  std::vector<size_t> values;
  std::bernoulli_distribution keep(0.5);
  for (size_t v = 0; v < a.domain_size(); ++v) {
    if (keep(rng)) values.push_back(v);
  }
  if (values.empty()) {
    values.push_back(
        std::uniform_int_distribution<size_t>(0, a.domain_size() - 1)(rng));
  }
  return Condition::OnValues(attribute, values);
}

// Random rule constraining a non-empty random subset of attributes.
inline Rule RandomRule(const InputSpace& space, std::mt19937_64& rng) {
  std::vector<Condition> conditions;
  std::bernoulli_distribution take(0.5);
  for (size_t i = 0; i < space.size(); ++i) {
    if (take(rng)) conditions.push_back(RandomCondition(space, i, rng));
  }
  if (conditions.empty()) {
    const size_t i =
        std::uniform_int_distribution<size_t>(0, space.size() - 1)(rng);
    conditions.push_back(RandomCondition(space, i, rng));
  }
  return Rule(std::move(conditions));
}

}  // namespace ads::testing

#endif  // ADS_TESTS_TEST_UTIL_H_
