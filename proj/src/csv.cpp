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

#include "moche/csv.hpp"

#include <cerrno>
#include <charconv>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "moche/error.hpp"

namespace moche {

namespace {

std::string trimmed(const std::string& s) {
  std::size_t begin = s.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return "";
  std::size_t end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

bool parse_field(const std::string& field, double* out) {
  if (field.empty()) return false;
  errno = 0;
  char* end = nullptr;
  const double value = std::strtod(field.c_str(), &end);
  if (errno != 0 || end != field.c_str() + field.size()) return false;
  *out = value;
  return true;
}

std::string read_whole_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(Errc::kParseError, "cannot open '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> fields;
  std::size_t begin = 0;
  while (true) {
    const std::size_t comma = line.find(',', begin);
    if (comma == std::string::npos) {
      fields.push_back(trimmed(line.substr(begin)));
      break;
    }
    fields.push_back(trimmed(line.substr(begin, comma - begin)));
    begin = comma + 1;
  }
  return fields;
}

}  // namespace

NumericCsv parse_numeric_csv(const std::string& text,
                             const std::string& origin) {
  NumericCsv out;
  std::istringstream stream(text);
  std::string line;
  int line_number = 0;
  bool first_content_line = true;
  int columns = 0;
  while (std::getline(stream, line)) {
    ++line_number;
    const std::string content = trimmed(line);
    if (content.empty()) continue;
    const std::vector<std::string> fields = split_fields(content);
    if (fields.size() > 2) {
      fail(Errc::kParseError, origin + " line " + std::to_string(line_number) +
                                  ": expected 1 or 2 columns, got " +
                                  std::to_string(fields.size()));
    }
    double value = 0.0;
    if (first_content_line && !parse_field(fields[0], &value)) {
      out.had_header = true;
      first_content_line = false;
      continue;
    }
    if (!parse_field(fields[0], &value)) {
      fail(Errc::kParseError, origin + " line " + std::to_string(line_number) +
                                  ": '" + fields[0] + "' is not a number");
    }
    if (first_content_line) {
      columns = static_cast<int>(fields.size());
      first_content_line = false;
    } else if (static_cast<int>(fields.size()) != columns && columns != 0) {
      fail(Errc::kParseError, origin + " line " + std::to_string(line_number) +
                                  ": expected " + std::to_string(columns) +
                                  " column(s), got " +
                                  std::to_string(fields.size()));
    }
    if (columns == 0) columns = static_cast<int>(fields.size());
    out.values.push_back(value);
    if (columns == 2) {
      double score = 0.0;
      if (!parse_field(fields[1], &score)) {
        fail(Errc::kParseError, origin + " line " +
                                    std::to_string(line_number) + ": '" +
                                    fields[1] + "' is not a number");
      }
      out.scores.push_back(score);
    }
  }
  return out;
}

NumericCsv read_numeric_csv(const std::string& path) {
  return parse_numeric_csv(read_whole_file(path), path);
}

std::vector<int> read_rank_file(const std::string& path) {
  const std::string text = read_whole_file(path);
  std::istringstream stream(text);
  std::string line;
  int line_number = 0;
  std::vector<int> out;
  while (std::getline(stream, line)) {
    ++line_number;
    const std::string content = trimmed(line);
    if (content.empty()) continue;
    int value = 0;
    const auto result =
        std::from_chars(content.data(), content.data() + content.size(),
                        value);
    if (result.ec != std::errc() ||
        result.ptr != content.data() + content.size()) {
      fail(Errc::kParseError, path + " line " + std::to_string(line_number) +
                                  ": '" + content +
                                  "' is not an integer point id");
    }
    out.push_back(value);
  }
  return out;
}

std::string format_double(double value) {
  char buffer[32];
  const auto result =
      std::to_chars(buffer, buffer + sizeof buffer, value);
  return std::string(buffer, result.ptr);
}

void write_value_csv(const std::string& path, std::span<const double> values,
                     bool header) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(Errc::kParseError, "cannot open '" + path + "' for writing");
  if (header) out << "value\n";
  for (double value : values) out << format_double(value) << "\n";
  if (!out) fail(Errc::kParseError, "write to '" + path + "' failed");
}

}  // namespace moche
