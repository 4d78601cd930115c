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

#include "ads/rules.h"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "ads/error.h"

namespace ads {

using json = nlohmann::json;

Condition Condition::OnInterval(size_t attribute, double lo, double hi) {
  return Condition(attribute, Interval{lo, hi});
}

Condition Condition::OnValues(size_t attribute,
                              std::vector<size_t> categories) {
  std::sort(categories.begin(), categories.end());
  categories.erase(std::unique(categories.begin(), categories.end()),
                   categories.end());
  return Condition(attribute, std::move(categories));
}

bool Condition::Satisfies(const Instance& x) const {
  const double v = x.values[attribute_];
  if (const auto* interval = std::get_if<Interval>(&payload_)) {
    return interval->lo <= v && v <= interval->hi;
  }
  const auto& set = std::get<std::vector<size_t>>(payload_);
  return std::binary_search(set.begin(), set.end(), static_cast<size_t>(v));
}

double Condition::Volume(const InputSpace& space) const {
  const AttributeSpec& spec = space.attribute(attribute_);
  if (const auto* interval = std::get_if<Interval>(&payload_)) {
    return std::max(kMinVolume, (interval->hi - interval->lo) / spec.range());
  }
  return static_cast<double>(categories().size()) /
         static_cast<double>(spec.domain_size());
}

void Condition::Validate(const InputSpace& space) const {
  if (attribute_ >= space.size()) {
    throw RuleError("condition on attribute #" + std::to_string(attribute_) +
                    " outside the input space");
  }
  const AttributeSpec& spec = space.attribute(attribute_);
  if (is_interval()) {
    if (!spec.is_continuous()) {
      throw RuleError("interval condition on categorical attribute '" +
                      spec.name() + "'");
    }
    const Interval& iv = interval();
    if (!(iv.lo <= iv.hi) || iv.lo < spec.lo() || iv.hi > spec.hi()) {
      throw RuleError("interval [" + FormatShortest(iv.lo) + ", " +
                      FormatShortest(iv.hi) + "] invalid for '" + spec.name() +
                      "'");
    }
  } else {
    if (!spec.is_categorical()) {
      throw RuleError("value-set condition on continuous attribute '" +
                      spec.name() + "'");
    }
    if (categories().empty()) {
      throw RuleError("empty value set on '" + spec.name() + "'");
    }
    if (categories().back() >= spec.domain_size()) {
      throw RuleError("value set on '" + spec.name() +
                      "' references an unknown category");
    }
  }
}

Rule::Rule(std::vector<Condition> conditions)
    : conditions_(std::move(conditions)) {
  if (conditions_.empty()) throw RuleError("a rule needs at least one condition");
  std::sort(conditions_.begin(), conditions_.end(),
            [](const Condition& a, const Condition& b) {
              return a.attribute() < b.attribute();
            });
  for (size_t i = 1; i < conditions_.size(); ++i) {
    if (conditions_[i].attribute() == conditions_[i - 1].attribute()) {
      throw RuleError("two conditions on attribute #" +
                      std::to_string(conditions_[i].attribute()));
    }
  }
}

bool Rule::Covers(const Instance& x) const {
  for (const Condition& condition : conditions_) {
    if (!condition.Satisfies(x)) return false;
  }
  return true;
}

const Condition* Rule::Find(size_t attribute) const {
  for (const Condition& condition : conditions_) {
    if (condition.attribute() == attribute) return &condition;
  }
  return nullptr;
}

Rule Rule::With(const Condition& condition) const {
  std::vector<Condition> conditions;
  conditions.reserve(conditions_.size() + 1);
  for (const Condition& c : conditions_) {
    if (c.attribute() != condition.attribute()) conditions.push_back(c);
  }
  conditions.push_back(condition);
  return Rule(std::move(conditions));
}

Rule Rule::Without(size_t attribute) const {
  std::vector<Condition> conditions;
  for (const Condition& c : conditions_) {
    if (c.attribute() != attribute) conditions.push_back(c);
  }
  return Rule(std::move(conditions));
}

void Rule::Validate(const InputSpace& space) const {
  for (const Condition& condition : conditions_) condition.Validate(space);
}

DecisionSet::DecisionSet(std::vector<Rule> rules) {
  for (auto& rule : rules) {
    if (Contains(rule)) throw RuleError("duplicate rule in decision set");
    rules_.push_back(std::move(rule));
  }
}

bool DecisionSet::Contains(const Rule& rule) const {
  return std::find(rules_.begin(), rules_.end(), rule) != rules_.end();
}

int DecisionSet::Predict(const Instance& x) const {
  for (const Rule& rule : rules_) {
    if (rule.Covers(x)) return 1;
  }
  return 0;
}

DecisionSet DecisionSet::WithRule(const Rule& rule) const {
  if (Contains(rule)) throw RuleError("rule already in decision set");
  DecisionSet out = *this;
  out.rules_.push_back(rule);
  return out;
}

DecisionSet DecisionSet::WithoutRule(size_t index) const {
  if (index >= rules_.size()) {
    throw RuleError("rule index " + std::to_string(index) + " out of range");
  }
  DecisionSet out = *this;
  out.rules_.erase(out.rules_.begin() + static_cast<std::ptrdiff_t>(index));
  return out;
}

DecisionSet DecisionSet::WithReplacedRule(size_t index, const Rule& rule) const {
  if (index >= rules_.size()) {
    throw RuleError("rule index " + std::to_string(index) + " out of range");
  }
  for (size_t i = 0; i < rules_.size(); ++i) {
    if (i != index && rules_[i] == rule) {
      throw RuleError("edit would duplicate an existing rule");
    }
  }
  DecisionSet out = *this;
  out.rules_[index] = rule;
  return out;
}

std::vector<Rule> DecisionSet::Canonical() const {
  std::vector<Rule> sorted = rules_;
  std::sort(sorted.begin(), sorted.end());
  return sorted;
}

double RuleVolume(const Rule& rule, const InputSpace& space) {
  double volume = 1.0;
  for (const Condition& condition : rule.conditions()) {
    volume *= condition.Volume(space);
  }
  return volume;
}

size_t CoverageCount(const Rule& rule, std::span<const LabeledInstance> pool) {
  return static_cast<size_t>(
      std::count_if(pool.begin(), pool.end(), [&](const LabeledInstance& p) {
        return rule.Covers(p.instance);
      }));
}

double RelativeDensity(const Rule& rule, std::span<const LabeledInstance> pool,
                       const InputSpace& space) {
  const size_t covered = CoverageCount(rule, pool);
  if (covered == 0) return 0.0;
  return static_cast<double>(covered) / RuleVolume(rule, space);
}

namespace {

std::string TwoDecimals(double value) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.2f", value);
  return buffer;
}

}  // namespace

std::string RenderCondition(const Condition& condition,
                            const InputSpace& space) {
  const AttributeSpec& spec = space.attribute(condition.attribute());
  std::string out = spec.name() + " ∈ ";
  if (condition.is_interval()) {
    out += "[" + TwoDecimals(condition.interval().lo) + ", " +
           TwoDecimals(condition.interval().hi) + "]";
  } else {
    out += "{";
    bool first = true;
    for (const size_t category : condition.categories()) {
      if (!first) out += ", ";
      out += spec.domain()[category];
      first = false;
    }
    out += "}";
  }
  return out;
}

std::string RenderRule(const Rule& rule, const InputSpace& space) {
  std::string out = "IF ";
  for (size_t i = 0; i < rule.size(); ++i) {
    if (i > 0) out += " AND ";
    out += RenderCondition(rule.conditions()[i], space);
  }
  return out + " THEN positive";
}

std::string RenderDecisionSet(const DecisionSet& set, const InputSpace& space) {
  std::string out;
  for (const Rule& rule : set.rules()) out += RenderRule(rule, space) + "\n";
  return out;
}

json RuleToJson(const Rule& rule, const InputSpace& space) {
  json conditions = json::array();
  for (const Condition& condition : rule.conditions()) {
    const AttributeSpec& spec = space.attribute(condition.attribute());
    if (condition.is_interval()) {
      conditions.push_back({{"attribute", spec.name()},
                            {"min", condition.interval().lo},
                            {"max", condition.interval().hi}});
    } else {
      json values = json::array();
      for (const size_t category : condition.categories()) {
        values.push_back(spec.domain()[category]);
      }
      conditions.push_back({{"attribute", spec.name()}, {"values", values}});
    }
  }
  return json{{"conditions", conditions}};
}

Rule RuleFromJson(const json& j, const InputSpace& space) {
  if (!j.is_object() || !j.contains("conditions") ||
      !j["conditions"].is_array()) {
    throw RuleError("rule needs a \"conditions\" array");
  }
  std::vector<Condition> conditions;
  for (const json& c : j["conditions"]) {
    if (!c.is_object() || !c.contains("attribute") ||
        !c["attribute"].is_string()) {
      throw RuleError("condition needs a string \"attribute\"");
    }
    const std::string name = c["attribute"].get<std::string>();
    const auto index = space.IndexOf(name);
    if (!index) throw RuleError("unknown attribute '" + name + "' in rule");
    const AttributeSpec& spec = space.attribute(*index);
    if (spec.is_continuous()) {
      const double lo = c.value("min", spec.lo());
      const double hi = c.value("max", spec.hi());
      conditions.push_back(Condition::OnInterval(*index, lo, hi));
    } else {
      if (!c.contains("values") || !c["values"].is_array()) {
        throw RuleError("condition on '" + name + "' needs \"values\"");
      }
      std::vector<size_t> categories;
      for (const json& v : c["values"]) {
        const auto category =
            v.is_string() ? spec.CategoryIndex(v.get<std::string>())
                          : std::nullopt;
        if (!category) {
          throw RuleError("unknown value " + v.dump() + " for '" + name + "'");
        }
        categories.push_back(*category);
      }
      conditions.push_back(Condition::OnValues(*index, std::move(categories)));
    }
  }
  Rule rule(std::move(conditions));
  rule.Validate(space);
  return rule;
}

json DecisionSetToJson(const DecisionSet& set, const InputSpace& space) {
  json rules = json::array();
  for (const Rule& rule : set.rules()) rules.push_back(RuleToJson(rule, space));
  return json{{"rules", rules}};
}

DecisionSet DecisionSetFromJson(const json& j, const InputSpace& space) {
  if (!j.is_object() || !j.contains("rules") || !j["rules"].is_array()) {
    throw RuleError("decision set needs a \"rules\" array");
  }
  std::vector<Rule> rules;
  for (const json& r : j["rules"]) rules.push_back(RuleFromJson(r, space));
  return DecisionSet(std::move(rules));
}

}  // namespace ads
