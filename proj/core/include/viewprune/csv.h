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

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

namespace viewprune {

class CsvError : public std::runtime_error {
 public:
  CsvError(std::size_t line, const std::string& message)
      : std::runtime_error("line " + std::to_string(line) + ": " + message), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  /// Index of a header column; throws CsvError when missing.
  std::size_t column(const std::string& name) const;
};

/// RFC-4180 reader: quoted fields, embedded commas/quotes/newlines, and
/// tolerant of CRLF line ends. Requires a header row and rectangular rows.
CsvTable read_csv(std::istream& in);

/// Writes one row, quoting fields only when needed.
void write_csv_row(std::ostream& out, const std::vector<std::string>& fields);

/// Compact numeric formatting for CSV cells (9 significant digits).
std::string csv_number(double value);

}  // namespace viewprune
