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

#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <string>

#include "viewprune/map_model.h"

namespace viewprune {

// Map file format (viewmap-v1): UTF-8 text, '#' comments permitted, one
// record per line. The first record is the version, then the map header,
// then components, then views (each referencing an already-declared
// component):
//
//   viewmap-v1
//   map env=<token> runs=<n>
//   component <id> runs=<n>
//   view <id> comp=<id> x=<f> y=<f> th=<f> appearance=<token> n_obs_cur=<n>
//        created_run=<n> created_at=<n> n_runs=<n> n_obs_runs=<n> reloc=<0|1>
//
// Writing is deterministic: records sorted by (component id, view id) and
// floats printed with 17 significant digits so poses round-trip exactly.

class MapFileError : public std::runtime_error {
 public:
  enum class Kind { kIo, kVersion, kMalformed, kDuplicateId };

  MapFileError(Kind kind, std::size_t line, const std::string& message)
      : std::runtime_error(line == 0 ? message : "line " + std::to_string(line) + ": " + message),
        kind_(kind),
        line_(line) {}

  Kind kind() const { return kind_; }
  std::size_t line() const { return line_; }

 private:
  Kind kind_;
  std::size_t line_;
};

struct LoadReport {
  std::size_t theta_normalized = 0;  // poses whose theta had to be wrapped on load
};

/// Writes `map` in viewmap-v1 form; returns the byte count written.
std::size_t save_map(const MapGraph& map, std::ostream& out);
std::size_t save_map(const MapGraph& map, const std::filesystem::path& destination);

/// Parses a viewmap-v1 stream. next_view_id resumes above the highest loaded
/// id. Unknown record types or keys are treated as a version error.
MapGraph load_map(std::istream& in, LoadReport* report = nullptr);
MapGraph load_map(const std::filesystem::path& source, LoadReport* report = nullptr);

}  // namespace viewprune
