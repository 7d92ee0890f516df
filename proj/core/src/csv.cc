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

#include "credinet/csv.h"

#include <array>
#include <charconv>
#include <cmath>

namespace credinet {

std::string FormatNumber(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  if (value == 0.0) value = 0.0;  // drop the sign of -0
  std::array<char, 64> buf;
  auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value,
                                 std::chars_format::general, 12);
  return std::string(buf.data(), end);
}

CsvWriter& CsvWriter::Field(std::string_view text) {
  if (!first_) out_ << ',';
  out_ << text;
  first_ = false;
  return *this;
}

CsvWriter& CsvWriter::Field(double value) { return Field(FormatNumber(value)); }

CsvWriter& CsvWriter::Field(int value) { return Field(std::to_string(value)); }

CsvWriter& CsvWriter::Field(long long value) {
  return Field(std::to_string(value));
}

void CsvWriter::EndRow() {
  out_ << '\n';
  first_ = true;
}

}  // namespace credinet
