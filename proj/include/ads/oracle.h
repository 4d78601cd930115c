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

#ifndef ADS_ORACLE_H_
#define ADS_ORACLE_H_

#include <chrono>
#include <cstddef>
#include <memory>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "ads/rules.h"
#include "ads/schema.h"
#include "json.hpp"

namespace ads {

// A source of labels for the target classifier. Implementations must be
// deterministic. Throws QueryError on failure.
class OracleBackend {
 public:
  virtual ~OracleBackend() = default;
  // Labels all of `xs` in one round trip.
  virtual std::vector<int> LabelBatch(std::span<const Instance> xs) = 0;
};

// Linear scorer: bias + sum of weight * value over continuous attributes +
// per-category weights over categorical ones. Positive iff the score is > 0.
struct LinearModel {
  double bias = 0.0;
  // Indexed by attribute; ignored for categorical attributes.
  std::vector<double> weights;
  // Indexed by attribute, then category; empty for continuous attributes.
  std::vector<std::vector<double>> category_weights;
};

std::unique_ptr<OracleBackend> MakeBoxesBackend(DecisionSet region);
std::unique_ptr<OracleBackend> MakeLinearBackend(LinearModel model);

// Spawns `command` through /bin/sh and talks the line protocol: one instance
// per line in schema order (continuous values as shortest round-trip
// decimals, category names CSV-quoted when needed), one `0` or `1` reply line
// per instance, in order. A blank line signals end of stream.
std::unique_ptr<OracleBackend> MakeSubprocessBackend(
    const std::string& command, const InputSpace& space,
    std::chrono::milliseconds timeout = std::chrono::seconds(30));

// One protocol line for `x`, without the trailing newline.
std::string EncodeInstanceLine(const Instance& x, const InputSpace& space);

struct InstanceHash {
  size_t operator()(const Instance& x) const;
};

// The target classifier f with an exact-match label cache. Each distinct
// instance reaches the backend at most once.
class Oracle {
 public:
  Oracle(std::unique_ptr<OracleBackend> backend, InputSpace space);

  Oracle(Oracle&&) = default;
  Oracle& operator=(Oracle&&) = default;

  int Query(const Instance& x);
  // Element-wise equal to Query; all cache misses go to the backend in a
  // single batch. On failure nothing from the batch is cached.
  std::vector<int> QueryBatch(std::span<const Instance> xs);

  // True if `x` has already been labeled.
  bool IsKnown(const Instance& x) const;

  const InputSpace& space() const { return space_; }

  // Instances sent to the backend (cache misses).
  size_t total_queries() const { return total_queries_; }
  size_t cache_hits() const { return cache_hits_; }
  // Backend round trips.
  size_t backend_rounds() const { return backend_rounds_; }

 private:
  std::unique_ptr<OracleBackend> backend_;
  InputSpace space_;
  std::unordered_map<Instance, int, InstanceHash> cache_;
  size_t total_queries_ = 0;
  size_t cache_hits_ = 0;
  size_t backend_rounds_ = 0;
};

Oracle MakeBoxesOracle(DecisionSet region, const InputSpace& space);
Oracle MakeLinearOracle(LinearModel model, const InputSpace& space);

// Builds an oracle from its JSON description:
//   {"type": "boxes", "rules": [...]}                       (see rules.h)
//   {"type": "linear", "bias": -1, "weights": {"price": 0.5,
//                                  "state": {"Texas": 1.0}}}
//   {"type": "subprocess", "command": "python3 model.py", "timeout_ms": 30000}
Oracle OracleFromJson(const nlohmann::json& spec, const InputSpace& space);

}  // namespace ads

#endif  // ADS_ORACLE_H_
