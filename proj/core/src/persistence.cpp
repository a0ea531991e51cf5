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

#include "viewprune/persistence.h"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

#include "viewprune/keyed_records.h"

namespace viewprune {

namespace {

constexpr const char* kVersionTag = "viewmap-v1";

std::string format_double(double value) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", value);  // round-trips exactly
  return buf;
}

void check_token(const std::string& token, const char* what) {
  for (char c : token) {
    if (c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '#') {
      throw MapFileError(MapFileError::Kind::kMalformed, 0,
                         std::string(what) + " '" + token + "' is not a bare token");
    }
  }
}

[[noreturn]] void fail_version(std::size_t line, const std::string& msg) {
  throw MapFileError(MapFileError::Kind::kVersion, line, msg);
}

[[noreturn]] void fail_malformed(std::size_t line, const std::string& msg) {
  throw MapFileError(MapFileError::Kind::kMalformed, line, msg);
}

void reject_unknown_keys(const Record& record, const std::vector<std::string>& allowed) {
  for (const auto& [key, value] : record.kv) {
    bool known = false;
    for (const auto& a : allowed) {
      known = known || key == a;
    }
    if (!known) {
      fail_version(record.line_no, "unknown field '" + key + "' in '" + record.keyword +
                                       "' record (file from a newer format?)");
    }
  }
}

}  // namespace

std::size_t save_map(const MapGraph& map, std::ostream& out) {
  check_token(map.environment_id(), "environment id");
  std::ostringstream text;
  text << kVersionTag << "\n";
  text << "map env=" << map.environment_id() << " runs=" << map.run_index() << "\n";
  for (const auto& [cid, comp] : map.components()) {
    text << "component " << cid << " runs=" << comp.run_count << "\n";
  }
  for (const auto& [cid, comp] : map.components()) {
    for (const auto& [vid, view] : comp.views) {
      check_token(view.appearance_key, "appearance key");
      text << "view " << vid << " comp=" << cid << " x=" << format_double(view.pose.x)
           << " y=" << format_double(view.pose.y) << " th=" << format_double(view.pose.theta)
           << " appearance=" << view.appearance_key << " n_obs_cur=" << view.stats.n_obs_cur
           << " created_run=" << view.stats.created_run << " created_at=" << view.stats.created_at
           << " n_runs=" << view.stats.n_runs << " n_obs_runs=" << view.stats.n_obs_runs
           << " reloc=" << (view.stats.used_for_reloc ? 1 : 0) << "\n";
    }
  }
  const std::string bytes = text.str();
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) {
    throw MapFileError(MapFileError::Kind::kIo, 0, "write failed");
  }
  return bytes.size();
}

std::size_t save_map(const MapGraph& map, const std::filesystem::path& destination) {
  std::ofstream out(destination, std::ios::binary);
  if (!out) {
    throw MapFileError(MapFileError::Kind::kIo, 0,
                       "cannot open '" + destination.string() + "' for writing");
  }
  const std::size_t n = save_map(map, out);
  out.flush();
  if (!out) {
    throw MapFileError(MapFileError::Kind::kIo, 0, "write to '" + destination.string() + "' failed");
  }
  return n;
}

MapGraph load_map(std::istream& in, LoadReport* report) {
  RecordReader reader(in);
  MapGraph map;
  LoadReport local;

  auto version = reader.next();
  if (!version || version->keyword != kVersionTag || !version->positional.empty() ||
      !version->kv.empty()) {
    fail_version(version ? version->line_no : 0,
                 std::string("expected '") + kVersionTag + "' version header");
  }

  auto header = reader.next();
  if (!header || header->keyword != "map") {
    fail_malformed(header ? header->line_no : version->line_no, "expected 'map' header record");
  }
  try {
    reject_unknown_keys(*header, {"env", "runs"});
    map.set_environment_id(header->get("env"));
    map.set_run_index(parse_u32(header->get("runs"), header->line_no));
  } catch (const RecordError& e) {
    fail_malformed(e.line, e.what());
  }

  while (auto record = reader.next()) {
    try {
      if (record->keyword == "component") {
        reject_unknown_keys(*record, {"runs"});
        if (record->positional.size() != 1) {
          fail_malformed(record->line_no, "component record needs exactly one id");
        }
        const auto cid =
            static_cast<ComponentId>(parse_u32(record->positional[0], record->line_no));
        if (map.has_component(cid)) {
          throw MapFileError(MapFileError::Kind::kDuplicateId, record->line_no,
                             "duplicate component id " + record->positional[0]);
        }
        const auto runs = parse_u32(record->get("runs"), record->line_no);
        if (runs == 0) {
          fail_malformed(record->line_no, "component run count must be >= 1");
        }
        map.add_component(cid, runs);
      } else if (record->keyword == "view") {
        reject_unknown_keys(*record, {"comp", "x", "y", "th", "appearance", "n_obs_cur",
                                      "created_run", "created_at", "n_runs", "n_obs_runs",
                                      "reloc"});
        if (record->positional.size() != 1) {
          fail_malformed(record->line_no, "view record needs exactly one id");
        }
        View view;
        view.id = parse_u64(record->positional[0], record->line_no);
        if (map.find_view(view.id) != nullptr) {
          throw MapFileError(MapFileError::Kind::kDuplicateId, record->line_no,
                             "duplicate view id " + record->positional[0]);
        }
        const auto cid = static_cast<ComponentId>(parse_u32(record->get("comp"), record->line_no));
        if (!map.has_component(cid)) {
          fail_malformed(record->line_no, "view references undeclared component " +
                                              std::to_string(cid));
        }
        const double x = parse_double(record->get("x"), record->line_no);
        const double y = parse_double(record->get("y"), record->line_no);
        const double theta = parse_double(record->get("th"), record->line_no);
        if (!std::isfinite(x) || !std::isfinite(y) || !std::isfinite(theta)) {
          fail_malformed(record->line_no, "view pose must be finite");
        }
        view.pose = Pose2D(x, y, theta);
        if (view.pose.theta != theta) {
          ++local.theta_normalized;
        }
        view.appearance_key = record->get("appearance");
        view.stats.n_obs_cur = parse_u32(record->get("n_obs_cur"), record->line_no);
        view.stats.created_run = parse_u32(record->get("created_run"), record->line_no);
        view.stats.created_at = parse_u32(record->get("created_at"), record->line_no);
        view.stats.n_runs = parse_u32(record->get("n_runs"), record->line_no);
        view.stats.n_obs_runs = parse_u32(record->get("n_obs_runs"), record->line_no);
        const auto reloc = parse_u32(record->get("reloc"), record->line_no);
        if (reloc > 1) {
          fail_malformed(record->line_no, "reloc must be 0 or 1");
        }
        view.stats.used_for_reloc = reloc == 1;
        if (view.stats.n_runs == 0) {
          fail_malformed(record->line_no, "n_runs must be >= 1");
        }
        if (view.stats.n_obs_runs > view.stats.n_runs) {
          fail_malformed(record->line_no, "n_obs_runs exceeds n_runs");
        }
        if (view.stats.used_for_reloc && view.stats.n_obs_runs == 0) {
          fail_malformed(record->line_no, "view used for relocalization but never observed");
        }
        map.insert_view(cid, std::move(view));
      } else {
        fail_version(record->line_no, "unknown record type '" + record->keyword +
                                          "' (file from a newer format?)");
      }
    } catch (const RecordError& e) {
      fail_malformed(e.line, e.what());
    }
  }

  if (report != nullptr) {
    *report = local;
  }
  return map;
}

MapGraph load_map(const std::filesystem::path& source, LoadReport* report) {
  std::ifstream in(source, std::ios::binary);
  if (!in) {
    throw MapFileError(MapFileError::Kind::kIo, 0,
                       "cannot open '" + source.string() + "' for reading");
  }
  return load_map(in, report);
}

}  // namespace viewprune
