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

#ifndef ADS_SCHEMA_H_
#define ADS_SCHEMA_H_

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace ads {

enum class AttributeKind { kContinuous, kCategorical };

// One attribute of the input space: a bounded real range or a finite,
// ordered set of category names.
class AttributeSpec {
 public:
  // Throws SchemaError unless lo < hi and both are finite.
  static AttributeSpec Continuous(std::string name, double lo, double hi);
  // Throws SchemaError on an empty domain or repeated values.
  static AttributeSpec Categorical(std::string name,
                                   std::vector<std::string> domain);

  const std::string& name() const { return name_; }
  AttributeKind kind() const { return kind_; }
  bool is_continuous() const { return kind_ == AttributeKind::kContinuous; }
  bool is_categorical() const { return kind_ == AttributeKind::kCategorical; }

  // Continuous bounds. Meaningless for categorical attributes.
  double lo() const { return lo_; }
  double hi() const { return hi_; }
  double range() const { return hi_ - lo_; }

  // Categorical domain in declaration order.
  const std::vector<std::string>& domain() const { return domain_; }
  size_t domain_size() const { return domain_.size(); }
  std::optional<size_t> CategoryIndex(std::string_view value) const;

 private:
  AttributeSpec() = default;

  std::string name_;
  AttributeKind kind_ = AttributeKind::kContinuous;
  double lo_ = 0.0;
  double hi_ = 1.0;
  std::vector<std::string> domain_;
};

// An attribute-value vector. Continuous attributes hold the raw value;
// categorical attributes hold the index of the value in the attribute's
// domain, so that equality and hashing are exact.
struct Instance {
  std::vector<double> values;

  friend bool operator==(const Instance&, const Instance&) = default;
};

enum class Origin { kReal, kSynthetic };

struct LabeledInstance {
  Instance instance;
  int label = 0;
  Origin origin = Origin::kReal;
};

// The input space D_x: an ordered, non-empty list of uniquely named
// attributes.
class InputSpace {
 public:
  // Throws SchemaError on an empty list or duplicate names.
  explicit InputSpace(std::vector<AttributeSpec> attributes);

  size_t size() const { return attributes_.size(); }
  const AttributeSpec& attribute(size_t i) const { return attributes_[i]; }
  const std::vector<AttributeSpec>& attributes() const { return attributes_; }
  std::optional<size_t> IndexOf(std::string_view name) const;

  // Empty string when `x` is valid, otherwise a description of the first
  // violation.
  std::string Check(const Instance& x) const;
  // Throws DataError if `x` is not valid.
  void Validate(const Instance& x) const;

  // Renders a stored value: shortest round-trip decimal for continuous
  // attributes, the category name for categorical ones.
  std::string FormatValue(size_t attribute, double value) const;

 private:
  std::vector<AttributeSpec> attributes_;
};

// Parses a JSON schema document:
//   {"attributes": [{"name": "price", "type": "continuous", "min": 0, "max": 10},
//                   {"name": "state", "type": "categorical",
//                    "values": ["California", "Texas"]}]}
// Errors name the attribute and the line it was declared on.
InputSpace LoadSchema(std::string_view schema_text);
InputSpace LoadSchemaFile(const std::string& path);

// Serializes a space back to the JSON schema format.
std::string DumpSchema(const InputSpace& space);

// Parses an RFC-4180 CSV dataset with a header row. Columns may appear in
// any order; values are reordered to schema order. Errors carry the 1-based
// data row number.
std::vector<Instance> ParseDataset(std::string_view csv_text,
                                   const InputSpace& space);
std::vector<Instance> LoadDatasetFile(const std::string& path,
                                      const InputSpace& space);

// Writes a dataset in schema column order.
std::string SerializeDataset(std::span<const Instance> instances,
                             const InputSpace& space);

// Gower distance: mean over attributes of |a-b|/range for continuous and
// the 0/1 mismatch for categorical attributes. Always in [0, 1].
double InstanceDistance(const Instance& a, const Instance& b,
                        const InputSpace& space);

// Shortest decimal string that parses back to exactly `value`.
std::string FormatShortest(double value);

// Reads an entire file. Throws Error naming the path on failure.
std::string ReadFile(const std::string& path);

}  // namespace ads

#endif  // ADS_SCHEMA_H_
