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

#include "ads/oracle.h"

#include <bit>
#include <cmath>

#include "ads/csv.h"
#include "ads/error.h"

namespace ads {

using json = nlohmann::json;

namespace {

class BoxesBackend : public OracleBackend {
 public:
  explicit BoxesBackend(DecisionSet region) : region_(std::move(region)) {}

  std::vector<int> LabelBatch(std::span<const Instance> xs) override {
    std::vector<int> labels;
    labels.reserve(xs.size());
    for (const Instance& x : xs) labels.push_back(region_.Predict(x));
    return labels;
  }

 private:
  DecisionSet region_;
};

class LinearBackend : public OracleBackend {
 public:
  explicit LinearBackend(LinearModel model) : model_(std::move(model)) {}

  std::vector<int> LabelBatch(std::span<const Instance> xs) override {
    std::vector<int> labels;
    labels.reserve(xs.size());
    for (const Instance& x : xs) {
      double score = model_.bias;
      for (size_t i = 0; i < x.values.size(); ++i) {
        if (i < model_.category_weights.size() &&
            !model_.category_weights[i].empty()) {
          score += model_.category_weights[i][static_cast<size_t>(x.values[i])];
        } else if (i < model_.weights.size()) {
          score += model_.weights[i] * x.values[i];
        }
      }
      labels.push_back(score > 0.0 ? 1 : 0);
    }
    return labels;
  }

 private:
  LinearModel model_;
};

}  // namespace

std::unique_ptr<OracleBackend> MakeBoxesBackend(DecisionSet region) {
  return std::make_unique<BoxesBackend>(std::move(region));
}

std::unique_ptr<OracleBackend> MakeLinearBackend(LinearModel model) {
  return std::make_unique<LinearBackend>(std::move(model));
}

std::string EncodeInstanceLine(const Instance& x, const InputSpace& space) {
  std::vector<std::string> fields;
  fields.reserve(space.size());
  for (size_t i = 0; i < space.size(); ++i) {
    fields.push_back(space.FormatValue(i, x.values[i]));
  }
  return csv::JoinRecord(fields);
}

size_t InstanceHash::operator()(const Instance& x) const {
  size_t seed = x.values.size();
  for (const double v : x.values) {
    // -0.0 == 0.0 under operator==, so they must hash alike.
    const auto bits = std::bit_cast<uint64_t>(v == 0.0 ? 0.0 : v);
    seed ^= std::hash<uint64_t>{}(bits) + 0x9e3779b97f4a7c15ULL + (seed << 6) +
            (seed >> 2);
  }
  return seed;
}

Oracle::Oracle(std::unique_ptr<OracleBackend> backend, InputSpace space)
    : backend_(std::move(backend)), space_(std::move(space)) {}

int Oracle::Query(const Instance& x) {
  return QueryBatch(std::span<const Instance>(&x, 1)).front();
}

std::vector<int> Oracle::QueryBatch(std::span<const Instance> xs) {
  std::vector<int> labels(xs.size(), -1);
  std::vector<Instance> misses;
  // miss_slot[i] = index into `misses` for xs[i], or -1 when cached.
  std::vector<std::ptrdiff_t> miss_slot(xs.size(), -1);
  std::unordered_map<Instance, size_t, InstanceHash> pending;
  size_t hits = 0;
  for (size_t i = 0; i < xs.size(); ++i) {
    if (const auto it = cache_.find(xs[i]); it != cache_.end()) {
      labels[i] = it->second;
      ++hits;
      continue;
    }
    const auto [it, inserted] = pending.try_emplace(xs[i], misses.size());
    if (inserted) {
      misses.push_back(xs[i]);
    } else {
      ++hits;
    }
    miss_slot[i] = static_cast<std::ptrdiff_t>(it->second);
  }

  if (!misses.empty()) {
    std::vector<int> answers = backend_->LabelBatch(misses);
    ++backend_rounds_;
    if (answers.size() != misses.size()) {
      throw QueryError("oracle returned " + std::to_string(answers.size()) +
                       " labels for " + std::to_string(misses.size()) +
                       " instances");
    }
    for (size_t k = 0; k < misses.size(); ++k) {
      if (answers[k] != 0 && answers[k] != 1) {
        throw QueryError("oracle returned a non-binary label for instance " +
                         EncodeInstanceLine(misses[k], space_));
      }
    }
    for (size_t k = 0; k < misses.size(); ++k) {
      cache_.emplace(misses[k], answers[k]);
    }
    total_queries_ += misses.size();
    for (size_t i = 0; i < xs.size(); ++i) {
      if (miss_slot[i] >= 0) {
        labels[i] = answers[static_cast<size_t>(miss_slot[i])];
      }
    }
  }
  cache_hits_ += hits;
  return labels;
}

bool Oracle::IsKnown(const Instance& x) const { return cache_.contains(x); }

Oracle MakeBoxesOracle(DecisionSet region, const InputSpace& space) {
  for (const Rule& rule : region.rules()) rule.Validate(space);
  return Oracle(MakeBoxesBackend(std::move(region)), space);
}

Oracle MakeLinearOracle(LinearModel model, const InputSpace& space) {
  return Oracle(MakeLinearBackend(std::move(model)), space);
}

Oracle OracleFromJson(const json& spec, const InputSpace& space) {
  if (!spec.is_object() || !spec.contains("type") ||
      !spec["type"].is_string()) {
    throw Error("oracle spec needs a string \"type\"");
  }
  const std::string type = spec["type"].get<std::string>();
  if (type == "boxes") {
    return MakeBoxesOracle(DecisionSetFromJson(spec, space), space);
  }
  if (type == "linear") {
    LinearModel model;
    model.bias = spec.value("bias", 0.0);
    model.weights.assign(space.size(), 0.0);
    model.category_weights.resize(space.size());
    const json weights = spec.value("weights", json::object());
    for (auto it = weights.begin(); it != weights.end(); ++it) {
      const auto index = space.IndexOf(it.key());
      if (!index) {
        throw Error("linear oracle: unknown attribute '" + it.key() + "'");
      }
      const AttributeSpec& attribute = space.attribute(*index);
      if (attribute.is_continuous()) {
        if (!it.value().is_number()) {
          throw Error("linear oracle: weight of '" + it.key() +
                      "' must be a number");
        }
        model.weights[*index] = it.value().get<double>();
      } else {
        if (!it.value().is_object()) {
          throw Error("linear oracle: weights of '" + it.key() +
                      "' must map categories to numbers");
        }
        auto& per_value = model.category_weights[*index];
        per_value.assign(attribute.domain_size(), 0.0);
        for (auto v = it.value().begin(); v != it.value().end(); ++v) {
          const auto category = attribute.CategoryIndex(v.key());
          if (!category || !v.value().is_number()) {
            throw Error("linear oracle: bad weight for '" + it.key() + "=" +
                        v.key() + "'");
          }
          per_value[*category] = v.value().get<double>();
        }
      }
    }
    for (size_t i = 0; i < space.size(); ++i) {
      if (space.attribute(i).is_categorical() &&
          model.category_weights[i].empty()) {
        model.category_weights[i].assign(space.attribute(i).domain_size(), 0.0);
      }
    }
    return MakeLinearOracle(std::move(model), space);
  }
  if (type == "subprocess") {
    if (!spec.contains("command") || !spec["command"].is_string()) {
      throw Error("subprocess oracle needs a string \"command\"");
    }
    const auto timeout =
        std::chrono::milliseconds(spec.value("timeout_ms", 30000));
    return Oracle(MakeSubprocessBackend(spec["command"].get<std::string>(),
                                        space, timeout),
                  space);
  }
  throw Error("unknown oracle type '" + type + "'");
}

}  // namespace ads
