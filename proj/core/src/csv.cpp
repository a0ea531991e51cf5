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

#include "viewprune/csv.h"

#include <cstdio>
#include <istream>
#include <ostream>

namespace viewprune {

std::size_t CsvTable::column(const std::string& name) const {
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (header[i] == name) {
      return i;
    }
  }
  throw CsvError(1, "missing column '" + name + "'");
}

CsvTable read_csv(std::istream& in) {
  CsvTable table;
  std::vector<std::string> row;
  std::string field;
  bool quoted = false;
  bool row_open = false;  // true once the current row has any content
  std::size_t line = 1;

  auto end_field = [&] {
    row.push_back(field);
    field.clear();
  };
  auto end_row = [&] {
    end_field();
    if (table.header.empty()) {
      table.header = row;
    } else {
      if (row.size() != table.header.size()) {
        throw CsvError(line, "expected " + std::to_string(table.header.size()) +
                                 " fields, got " + std::to_string(row.size()));
      }
      table.rows.push_back(row);
    }
    row.clear();
    row_open = false;
  };

  char c;
  while (in.get(c)) {
    if (quoted) {
      if (c == '"') {
        if (in.peek() == '"') {
          in.get(c);
          field.push_back('"');
        } else {
          quoted = false;
        }
      } else {
        if (c == '\n') {
          ++line;
        }
        field.push_back(c);
      }
      continue;
    }
    switch (c) {
      case '"':
        if (!field.empty()) {
          throw CsvError(line, "quote inside unquoted field");
        }
        quoted = true;
        row_open = true;
        break;
      case ',':
        end_field();
        row_open = true;
        break;
      case '\r':
        break;
      case '\n':
        if (row_open || !field.empty() || !row.empty()) {
          end_row();
        }
        ++line;
        break;
      default:
        field.push_back(c);
        row_open = true;
        break;
    }
  }
  if (quoted) {
    throw CsvError(line, "unterminated quoted field");
  }
  if (row_open || !field.empty() || !row.empty()) {
    end_row();
  }
  if (table.header.empty()) {
    throw CsvError(1, "empty CSV: missing header row");
  }
  return table;
}

void write_csv_row(std::ostream& out, const std::vector<std::string>& fields) {
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i > 0) {
      out << ',';
    }
    const std::string& f = fields[i];
    if (f.find_first_of(",\"\n\r") != std::string::npos) {
      out << '"';
      for (char c : f) {
        if (c == '"') {
          out << '"';
        }
        out << c;
      }
      out << '"';
    } else {
      out << f;
    }
  }
  out << '\n';
}

std::string csv_number(double value) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.9g", value);
  return buf;
}

}  // namespace viewprune
