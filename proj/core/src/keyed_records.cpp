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

#include "viewprune/keyed_records.h"

#include <charconv>
#include <istream>
#include <limits>
#include <sstream>

namespace viewprune {

bool Record::has(const std::string& key) const {
  for (const auto& [k, v] : kv) {
    if (k == key) {
      return true;
    }
  }
  return false;
}

const std::string& Record::get(const std::string& key) const {
  const std::string* found = nullptr;
  for (const auto& [k, v] : kv) {
    if (k == key) {
      if (found != nullptr) {
        throw RecordError(line_no, "duplicate key '" + key + "' in '" + keyword + "' record");
      }
      found = &v;
    }
  }
  if (found == nullptr) {
    throw RecordError(line_no, "missing key '" + key + "' in '" + keyword + "' record");
  }
  return *found;
}

std::optional<std::string> Record::get_optional(const std::string& key) const {
  return has(key) ? std::optional<std::string>(get(key)) : std::nullopt;
}

void Record::check_keys(const std::vector<std::string>& allowed) const {
  for (std::size_t i = 0; i < kv.size(); ++i) {
    bool known = false;
    for (const auto& a : allowed) {
      known = known || kv[i].first == a;
    }
    if (!known) {
      throw RecordError(line_no, "unknown key '" + kv[i].first + "' in '" + keyword + "' record");
    }
    for (std::size_t j = i + 1; j < kv.size(); ++j) {
      if (kv[i].first == kv[j].first) {
        throw RecordError(line_no,
                          "duplicate key '" + kv[i].first + "' in '" + keyword + "' record");
      }
    }
  }
}

std::optional<Record> RecordReader::next() {
  std::string line;
  while (std::getline(in_, line)) {
    ++line_no_;
    if (auto pos = line.find('#'); pos != std::string::npos) {
      line.erase(pos);
    }
    std::istringstream tokens(line);
    Record record;
    record.line_no = line_no_;
    std::string token;
    while (tokens >> token) {
      if (record.keyword.empty()) {
        record.keyword = token;
      } else if (auto eq = token.find('='); eq != std::string::npos) {
        record.kv.emplace_back(token.substr(0, eq), token.substr(eq + 1));
      } else {
        record.positional.push_back(token);
      }
    }
    if (!record.keyword.empty()) {
      return record;
    }
  }
  return std::nullopt;
}

std::uint64_t parse_u64(const std::string& token, std::size_t line_no) {
  std::uint64_t value = 0;
  auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc() || ptr != token.data() + token.size()) {
    throw RecordError(line_no, "expected unsigned integer, got '" + token + "'");
  }
  return value;
}

std::uint32_t parse_u32(const std::string& token, std::size_t line_no) {
  const std::uint64_t value = parse_u64(token, line_no);
  if (value > std::numeric_limits<std::uint32_t>::max()) {
    throw RecordError(line_no, "value out of range: '" + token + "'");
  }
  return static_cast<std::uint32_t>(value);
}

double parse_double(const std::string& token, std::size_t line_no) {
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc() || ptr != token.data() + token.size()) {
    throw RecordError(line_no, "expected number, got '" + token + "'");
  }
  return value;
}

}  // namespace viewprune
