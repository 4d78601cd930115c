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

#ifndef ADS_ERROR_H_
#define ADS_ERROR_H_

#include <stdexcept>
#include <string>

namespace ads {

// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed or inconsistent schema document.
class SchemaError : public Error {
 public:
  using Error::Error;
};

// Dataset row that does not conform to the schema.
class DataError : public Error {
 public:
  using Error::Error;
};

// The target classifier failed to answer a query.
class QueryError : public Error {
 public:
  using Error::Error;
};

// Invalid rule, condition or action.
class RuleError : public Error {
 public:
  using Error::Error;
};

}  // namespace ads

#endif  // ADS_ERROR_H_
