/*
 * Copyright 2026 The Viewprune Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *      http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace viewprune {

// Line-oriented keyed records, the house format for map files and configs:
// UTF-8 text, '#' starts a comment, blank lines are skipped, and each record
// is one line of space-separated tokens. The first token is the keyword; the
// rest are either bare values or key=value pairs.

struct RecordError : std::runtime_error {
  RecordError(std::size_t line_no, const std::string& message)
      : std::runtime_error("line " + std::to_string(line_no) + ": " + message), line(line_no) {}
  std::size_t line;
};

struct Record {
  std::size_t line_no = 0;
  std::string keyword;
  std::vector<std::string> positional;
  std::vector<std::pair<std::string, std::string>> kv;  // in file order

  bool has(const std::string& key) const;
  /// Value of a required key; throws RecordError when missing or duplicated.
  const std::string& get(const std::string& key) const;
  std::optional<std::string> get_optional(const std::string& key) const;
  /// Throws when a key occurs twice or a key is not in `allowed`.
  void check_keys(const std::vector<std::string>& allowed) const;
};

/// Streams records, skipping comments and blank lines.
class RecordReader {
 public:
  explicit RecordReader(std::istream& in) : in_(in) {}
  std::optional<Record> next();
  std::size_t line_no() const { return line_no_; }

 private:
  std::istream& in_;
  std::size_t line_no_ = 0;
};

// Whole-token numeric parsing; throws RecordError naming the line.
std::uint64_t parse_u64(const std::string& token, std::size_t line_no);
std::uint32_t parse_u32(const std::string& token, std::size_t line_no);
double parse_double(const std::string& token, std::size_t line_no);

}  // namespace viewprune
