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

#ifndef ADS_CSV_H_
#define ADS_CSV_H_

#include <string>
#include <string_view>
#include <vector>

namespace ads::csv {

struct Record {
  // 1-based physical line on which the record starts.
  size_t line = 0;
  std::vector<std::string> fields;
};

// Splits RFC-4180 text into records. Accepts LF and CRLF line endings and
// skips fully empty lines. Throws DataError on an unterminated quoted field
// or on text after a closing quote.
std::vector<Record> ParseRecords(std::string_view text);

// Quotes `field` if it contains a comma, a double quote, CR or LF.
std::string QuoteField(std::string_view field);

// Joins fields with commas, quoting as needed. No trailing newline.
std::string JoinRecord(const std::vector<std::string>& fields);

}  // namespace ads::csv

#endif  // ADS_CSV_H_
