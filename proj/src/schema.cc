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

#include "ads/schema.h"

#include <charconv>
#include <cmath>
#include <fstream>
#include <regex>
#include <set>
#include <sstream>
#include <unordered_map>

#include "ads/csv.h"
#include "ads/error.h"
#include "json.hpp"

namespace ads {

using json = nlohmann::json;

AttributeSpec AttributeSpec::Continuous(std::string name, double lo,
                                        double hi) {
  if (!std::isfinite(lo) || !std::isfinite(hi)) {
    throw SchemaError("attribute '" + name + "': bounds must be finite");
  }
  if (!(lo < hi)) {
    throw SchemaError("attribute '" + name + "': min must be below max (got [" +
                      FormatShortest(lo) + ", " + FormatShortest(hi) + "])");
  }
  AttributeSpec spec;
  spec.name_ = std::move(name);
  spec.kind_ = AttributeKind::kContinuous;
  spec.lo_ = lo;
  spec.hi_ = hi;
  return spec;
}

AttributeSpec AttributeSpec::Categorical(std::string name,
                                         std::vector<std::string> domain) {
  if (domain.empty()) {
    throw SchemaError("attribute '" + name + "': empty categorical domain");
  }
  std::set<std::string> seen;
  for (const auto& value : domain) {
    if (!seen.insert(value).second) {
      throw SchemaError("attribute '" + name + "': repeated value '" + value +
                        "'");
    }
  }
  AttributeSpec spec;
  spec.name_ = std::move(name);
  spec.kind_ = AttributeKind::kCategorical;
  spec.domain_ = std::move(domain);
  return spec;
}

std::optional<size_t> AttributeSpec::CategoryIndex(
    std::string_view value) const {
  for (size_t i = 0; i < domain_.size(); ++i) {
    if (domain_[i] == value) return i;
  }
  return std::nullopt;
}

InputSpace::InputSpace(std::vector<AttributeSpec> attributes)
    : attributes_(std::move(attributes)) {
  if (attributes_.empty()) {
    throw SchemaError("input space needs at least one attribute");
  }
  std::set<std::string> names;
  for (const auto& attribute : attributes_) {
    if (!names.insert(attribute.name()).second) {
      throw SchemaError("duplicate attribute name '" + attribute.name() + "'");
    }
  }
}

std::optional<size_t> InputSpace::IndexOf(std::string_view name) const {
  for (size_t i = 0; i < attributes_.size(); ++i) {
    if (attributes_[i].name() == name) return i;
  }
  return std::nullopt;
}

std::string InputSpace::Check(const Instance& x) const {
  if (x.values.size() != attributes_.size()) {
    return "expected " + std::to_string(attributes_.size()) + " values, got " +
           std::to_string(x.values.size());
  }
  for (size_t i = 0; i < attributes_.size(); ++i) {
    const AttributeSpec& attribute = attributes_[i];
    const double v = x.values[i];
    if (attribute.is_continuous()) {
      if (!(v >= attribute.lo() && v <= attribute.hi())) {
        return "value " + FormatShortest(v) + " of '" + attribute.name() +
               "' outside [" + FormatShortest(attribute.lo()) + ", " +
               FormatShortest(attribute.hi()) + "]";
      }
    } else if (!(v >= 0 && v < static_cast<double>(attribute.domain_size()) &&
                 v == std::floor(v))) {
      return "category index " + FormatShortest(v) + " of '" +
             attribute.name() + "' outside domain";
    }
  }
  return {};
}

void InputSpace::Validate(const Instance& x) const {
  std::string problem = Check(x);
  if (!problem.empty()) throw DataError("invalid instance: " + problem);
}

std::string InputSpace::FormatValue(size_t attribute, double value) const {
  const AttributeSpec& spec = attributes_[attribute];
  if (spec.is_categorical()) {
    return spec.domain()[static_cast<size_t>(value)];
  }
  return FormatShortest(value);
}

namespace {

size_t LineAt(std::string_view text, size_t byte_offset) {
  size_t line = 1;
  for (size_t i = 0; i < byte_offset && i < text.size(); ++i) {
    if (text[i] == '\n') ++line;
  }
  return line;
}

// Line on which each `"name":` key appears, in document order. The i-th
// entry is taken as the declaration line of the i-th attribute.
std::vector<size_t> NameKeyLines(std::string_view text) {
  static const std::regex kNameKey(R"re("name"\s*:)re");
  std::vector<size_t> lines;
  const std::string owned(text);
  for (auto it = std::sregex_iterator(owned.begin(), owned.end(), kNameKey);
       it != std::sregex_iterator(); ++it) {
    lines.push_back(LineAt(text, static_cast<size_t>(it->position())));
  }
  return lines;
}

double RequireNumber(const json& object, const char* key,
                     const std::string& where) {
  if (!object.contains(key) || !object[key].is_number()) {
    throw SchemaError(where + ": missing numeric field '" + key + "'");
  }
  return object[key].get<double>();
}

}  // namespace

InputSpace LoadSchema(std::string_view schema_text) {
  json doc;
  try {
    doc = json::parse(schema_text);
  } catch (const json::parse_error& e) {
    throw SchemaError("malformed schema document (line " +
                      std::to_string(LineAt(schema_text, e.byte)) +
                      "): " + e.what());
  }
  if (!doc.is_object() || !doc.contains("attributes") ||
      !doc["attributes"].is_array()) {
    throw SchemaError("schema document needs an \"attributes\" array");
  }

  const std::vector<size_t> lines = NameKeyLines(schema_text);
  std::vector<AttributeSpec> attributes;
  std::set<std::string> names;
  const json& list = doc["attributes"];
  for (size_t i = 0; i < list.size(); ++i) {
    const json& entry = list[i];
    const std::string line =
        i < lines.size() ? std::to_string(lines[i]) : std::string("?");
    if (!entry.is_object() || !entry.contains("name") ||
        !entry["name"].is_string()) {
      throw SchemaError("attribute #" + std::to_string(i + 1) + " (line " +
                        line + "): missing string field 'name'");
    }
    const std::string name = entry["name"].get<std::string>();
    const std::string where = "attribute '" + name + "' (line " + line + ")";
    if (!names.insert(name).second) {
      throw SchemaError(where + ": duplicate attribute name");
    }
    const std::string type =
        entry.contains("type") && entry["type"].is_string()
            ? entry["type"].get<std::string>()
            : std::string();
    try {
      if (type == "continuous") {
        attributes.push_back(AttributeSpec::Continuous(
            name, RequireNumber(entry, "min", where),
            RequireNumber(entry, "max", where)));
      } else if (type == "categorical") {
        if (!entry.contains("values") || !entry["values"].is_array()) {
          throw SchemaError(where + ": missing array field 'values'");
        }
        std::vector<std::string> domain;
        for (const json& value : entry["values"]) {
          if (!value.is_string()) {
            throw SchemaError(where + ": categorical values must be strings");
          }
          domain.push_back(value.get<std::string>());
        }
        attributes.push_back(
            AttributeSpec::Categorical(name, std::move(domain)));
      } else {
        throw SchemaError(where +
                          ": type must be \"continuous\" or \"categorical\"");
      }
    } catch (const SchemaError& e) {
      const std::string message = e.what();
      if (message.rfind(where, 0) == 0) throw;
      throw SchemaError(where + ": " + message);
    }
  }
  return InputSpace(std::move(attributes));
}

InputSpace LoadSchemaFile(const std::string& path) {
  try {
    return LoadSchema(ReadFile(path));
  } catch (const SchemaError& e) {
    throw SchemaError(path + ": " + e.what());
  }
}

std::string DumpSchema(const InputSpace& space) {
  json list = json::array();
  for (const auto& attribute : space.attributes()) {
    if (attribute.is_continuous()) {
      list.push_back({{"name", attribute.name()},
                      {"type", "continuous"},
                      {"min", attribute.lo()},
                      {"max", attribute.hi()}});
    } else {
      list.push_back({{"name", attribute.name()},
                      {"type", "categorical"},
                      {"values", attribute.domain()}});
    }
  }
  return json{{"attributes", list}}.dump(2) + "\n";
}

std::vector<Instance> ParseDataset(std::string_view csv_text,
                                   const InputSpace& space) {
  const std::vector<csv::Record> records = csv::ParseRecords(csv_text);
  if (records.empty()) throw DataError("dataset has no header row");

  // column_of[attribute] = CSV column holding it.
  const auto& header = records.front().fields;
  std::vector<std::optional<size_t>> column_of(space.size());
  for (size_t column = 0; column < header.size(); ++column) {
    const auto index = space.IndexOf(header[column]);
    if (!index) {
      throw DataError("unknown column '" + header[column] + "'");
    }
    if (column_of[*index]) {
      throw DataError("column '" + header[column] + "' appears twice");
    }
    column_of[*index] = column;
  }
  for (size_t i = 0; i < space.size(); ++i) {
    if (!column_of[i]) {
      throw DataError("missing column '" + space.attribute(i).name() + "'");
    }
  }

  std::vector<Instance> instances;
  instances.reserve(records.size() - 1);
  for (size_t r = 1; r < records.size(); ++r) {
    const auto& fields = records[r].fields;
    const std::string row = "row " + std::to_string(r);
    if (fields.size() != header.size()) {
      throw DataError(row + ": expected " + std::to_string(header.size()) +
                      " fields, got " + std::to_string(fields.size()));
    }
    Instance x;
    x.values.resize(space.size());
    for (size_t i = 0; i < space.size(); ++i) {
      const AttributeSpec& attribute = space.attribute(i);
      const std::string& text = fields[*column_of[i]];
      if (attribute.is_continuous()) {
        double value = 0.0;
        const char* begin = text.data();
        const char* end = begin + text.size();
        // from_chars rejects a leading '+'; accept it as a decimal literal.
        if (begin != end && *begin == '+') ++begin;
        const auto [ptr, ec] = std::from_chars(begin, end, value);
        if (ec != std::errc() || ptr != end || begin == end ||
            !std::isfinite(value)) {
          throw DataError(row + ": cannot parse '" + text + "' as a number for '" +
                          attribute.name() + "'");
        }
        if (value < attribute.lo() || value > attribute.hi()) {
          throw DataError(row + ": value " + text + " of '" + attribute.name() +
                          "' outside [" + FormatShortest(attribute.lo()) +
                          ", " + FormatShortest(attribute.hi()) + "]");
        }
        x.values[i] = value == 0.0 ? 0.0 : value;  // fold -0
      } else {
        const auto category = attribute.CategoryIndex(text);
        if (!category) {
          throw DataError(row + ": value '" + text + "' of '" +
                          attribute.name() + "' is not in its domain");
        }
        x.values[i] = static_cast<double>(*category);
      }
    }
    instances.push_back(std::move(x));
  }
  return instances;
}

std::vector<Instance> LoadDatasetFile(const std::string& path,
                                      const InputSpace& space) {
  try {
    return ParseDataset(ReadFile(path), space);
  } catch (const DataError& e) {
    throw DataError(path + ": " + e.what());
  }
}

std::string SerializeDataset(std::span<const Instance> instances,
                             const InputSpace& space) {
  std::vector<std::string> fields;
  for (const auto& attribute : space.attributes()) {
    fields.push_back(attribute.name());
  }
  std::string out = csv::JoinRecord(fields) + "\n";
  for (const Instance& x : instances) {
    for (size_t i = 0; i < space.size(); ++i) {
      fields[i] = space.FormatValue(i, x.values[i]);
    }
    out += csv::JoinRecord(fields) + "\n";
  }
  return out;
}

double InstanceDistance(const Instance& a, const Instance& b,
                        const InputSpace& space) {
  double total = 0.0;
  for (size_t i = 0; i < space.size(); ++i) {
    const AttributeSpec& attribute = space.attribute(i);
    if (attribute.is_continuous()) {
      total += std::min(1.0, std::abs(a.values[i] - b.values[i]) /
                                 attribute.range());
    } else if (a.values[i] != b.values[i]) {
      total += 1.0;
    }
  }
  return total / static_cast<double>(space.size());
}

std::string FormatShortest(double value) {
  char buffer[64];
  const auto result = std::to_chars(buffer, buffer + sizeof(buffer), value);
  return std::string(buffer, result.ptr);
}

std::string ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

}  // namespace ads
