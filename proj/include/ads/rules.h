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

#ifndef ADS_RULES_H_
#define ADS_RULES_H_

#include <compare>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "ads/schema.h"
#include "json.hpp"

namespace ads {

// Closed interval [lo, hi] on a continuous attribute.
struct Interval {
  double lo = 0.0;
  double hi = 0.0;

  auto operator<=>(const Interval&) const = default;
};

// Condition (clause) on a single attribute: a closed interval for continuous
// attributes, a set of category indices for categorical ones.
class Condition {
 public:
  static Condition OnInterval(size_t attribute, double lo, double hi);
  // `categories` is sorted and deduplicated.
  static Condition OnValues(size_t attribute, std::vector<size_t> categories);

  size_t attribute() const { return attribute_; }
  bool is_interval() const { return std::holds_alternative<Interval>(payload_); }
  const Interval& interval() const { return std::get<Interval>(payload_); }
  const std::vector<size_t>& categories() const {
    return std::get<std::vector<size_t>>(payload_);
  }

  bool Satisfies(const Instance& x) const;

  // Fraction of the attribute's range or domain that the condition admits.
  // Zero-width intervals are floored at kMinVolume.
  double Volume(const InputSpace& space) const;

  // Throws RuleError if the condition does not fit `space`.
  void Validate(const InputSpace& space) const;

  auto operator<=>(const Condition&) const = default;

  static constexpr double kMinVolume = 1e-9;

 private:
  Condition(size_t attribute, std::variant<Interval, std::vector<size_t>> p)
      : attribute_(attribute), payload_(std::move(p)) {}

  size_t attribute_ = 0;
  std::variant<Interval, std::vector<size_t>> payload_;
};

// Conjunction of conditions on pairwise-distinct attributes. Conditions are
// kept sorted by attribute, so two rules with the same clauses compare equal
// regardless of the order they were given in.
class Rule {
 public:
  // Throws RuleError on an empty list or a repeated attribute.
  explicit Rule(std::vector<Condition> conditions);

  const std::vector<Condition>& conditions() const { return conditions_; }
  size_t size() const { return conditions_.size(); }

  bool Covers(const Instance& x) const;
  // Condition on `attribute`, if any.
  const Condition* Find(size_t attribute) const;

  // Copy with `condition` added, or replacing the one on the same attribute.
  Rule With(const Condition& condition) const;
  // Copy without the condition on `attribute`. Throws RuleError if that
  // would leave the rule empty.
  Rule Without(size_t attribute) const;

  void Validate(const InputSpace& space) const;

  auto operator<=>(const Rule&) const = default;

 private:
  std::vector<Condition> conditions_;
};

// Unordered set of rules; predicts 1 iff some rule covers the instance.
class DecisionSet {
 public:
  DecisionSet() = default;
  // Throws RuleError on duplicate rules.
  explicit DecisionSet(std::vector<Rule> rules);

  const std::vector<Rule>& rules() const { return rules_; }
  size_t size() const { return rules_.size(); }
  bool empty() const { return rules_.empty(); }
  const Rule& rule(size_t i) const { return rules_[i]; }

  bool Contains(const Rule& rule) const;
  int Predict(const Instance& x) const;

  // Copies with one edit applied. Throw RuleError on a duplicate rule or an
  // out-of-range index.
  DecisionSet WithRule(const Rule& rule) const;
  DecisionSet WithoutRule(size_t index) const;
  DecisionSet WithReplacedRule(size_t index, const Rule& rule) const;

  // Rules in canonical order; equal for equal sets.
  std::vector<Rule> Canonical() const;

  // Set equality, independent of rule order.
  friend bool operator==(const DecisionSet& a, const DecisionSet& b) {
    return a.Canonical() == b.Canonical();
  }

 private:
  std::vector<Rule> rules_;
};

// Normalized volume of the region covered by `rule`: the product of the
// per-attribute admitted fractions. The whole space has volume 1.
double RuleVolume(const Rule& rule, const InputSpace& space);

// Number of pool instances (real and synthetic) covered by `rule`.
size_t CoverageCount(const Rule& rule, std::span<const LabeledInstance> pool);

// N(r) / V(r), or 0 when nothing is covered.
double RelativeDensity(const Rule& rule, std::span<const LabeledInstance> pool,
                       const InputSpace& space);

// Text rendering, e.g.
//   IF price ∈ [2.33, 10.00] AND state ∈ {California, Texas} THEN positive
std::string RenderCondition(const Condition& condition,
                            const InputSpace& space);
std::string RenderRule(const Rule& rule, const InputSpace& space);
// One rule per line, each terminated by a newline.
std::string RenderDecisionSet(const DecisionSet& set, const InputSpace& space);

// JSON form with full-precision endpoints:
//   {"conditions": [{"attribute": "price", "min": 2.33, "max": 10},
//                   {"attribute": "state", "values": ["Texas"]}]}
nlohmann::json RuleToJson(const Rule& rule, const InputSpace& space);
Rule RuleFromJson(const nlohmann::json& j, const InputSpace& space);
// {"rules": [...]}
nlohmann::json DecisionSetToJson(const DecisionSet& set,
                                 const InputSpace& space);
DecisionSet DecisionSetFromJson(const nlohmann::json& j,
                                const InputSpace& space);

}  // namespace ads

#endif  // ADS_RULES_H_
