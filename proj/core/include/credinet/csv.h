// Copyright 2026 The credinet Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef CREDINET_CSV_H_
#define CREDINET_CSV_H_

#include <ostream>
#include <string>
#include <string_view>

namespace credinet {

// Decimal rendering with 12 significant digits, "." as the
// decimal separator regardless of locale; non-finite values print as
// "inf", "-inf" or "nan".
std::string FormatNumber(double value);

// Minimal comma-separated writer. Fields are written as-is; callers only
// emit identifiers and numbers, so no quoting is needed.
class CsvWriter {
 public:
  explicit CsvWriter(std::ostream& out) : out_(out) {}

  CsvWriter& Field(std::string_view text);
  CsvWriter& Field(double value);
  CsvWriter& Field(int value);
  CsvWriter& Field(long long value);
  void EndRow();

 private:
  std::ostream& out_;
  bool first_ = true;
};

}  // namespace credinet

#endif  // CREDINET_CSV_H_
