// Copyright 2026 The MOCHE Authors
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

#ifndef MOCHE_CSV_HPP_
#define MOCHE_CSV_HPP_

#include <span>
#include <string>
#include <vector>

namespace moche {

// One- or two-column numeric CSV: values, optionally a score per value.
struct NumericCsv {
  std::vector<double> values;
  std::vector<double> scores;  // empty unless a second column was present
  bool had_header = false;

  bool has_scores() const { return !scores.empty(); }
};

// Reads a CSV of one or two numeric columns. A first line whose first field
// is not a number is taken as a header. Empty lines are skipped; anything
// else non-numeric is a ParseError naming the line. Windows line endings are
// tolerated.
NumericCsv read_numeric_csv(const std::string& path);

// Same parser over an in-memory buffer; `origin` names it in errors.
NumericCsv parse_numeric_csv(const std::string& text,
                             const std::string& origin);

// Preference ranking: one integer point id per line, most preferred first.
std::vector<int> read_rank_file(const std::string& path);

// One value per line with shortest round-trip formatting; optional header
// line "value".
void write_value_csv(const std::string& path, std::span<const double> values,
                     bool header);

// Shortest decimal string that parses back to exactly `value`.
std::string format_double(double value);

}  // namespace moche

#endif  // MOCHE_CSV_HPP_
