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
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <vector>

namespace viewprune {

// Command implementations behind the viewprune binary. Each returns a
// process exit code (0 only when every declared output was written and
// re-parses cleanly) and reports problems on `err`.

struct SimulateOptions {
  std::filesystem::path env_file;
  std::filesystem::path sim_file;
  std::filesystem::path prune_file;
  std::uint32_t n_runs = 0;
  std::uint64_t seed = 0;
  std::filesystem::path out_dir;
  bool no_prune = false;
};

/// Runs a lifelong experiment and writes <out>/metrics.csv (one row per
/// run), <out>/summary.csv (growth rate + metric means), and <out>/map.txt
/// (the final map). Partial outputs are removed on failure.
int cmd_simulate(const SimulateOptions& options, std::ostream& out, std::ostream& err);

struct PruneOptions {
  std::filesystem::path map_file;
  std::filesystem::path config_file;
  std::optional<std::uint32_t> max_obs;  // default: per-component max stored in the file
  std::filesystem::path out_file;        // unused in dry-run mode
  bool dry_run = false;
};

/// Applies the deletion pass to every component of a saved map. When no view
/// is deleted the output is a byte-for-byte copy of the input. Dry-run
/// prints the full report instead of writing.
int cmd_prune(const PruneOptions& options, std::ostream& out, std::ostream& err);

struct SweepOptions {
  std::filesystem::path spec_file;
  std::filesystem::path env_file;
  std::filesystem::path sim_file;
  std::uint64_t seed = 0;
  std::filesystem::path out_csv;
  unsigned jobs = 0;  // 0 = hardware concurrency
};

/// Runs one lifelong experiment per grid cell (concurrently, with per-cell
/// seeds mix_seed-derived from cell index so results are order-independent)
/// and writes one CSV row per cell, flagging rows that satisfy the spec's
/// selection thresholds.
int cmd_sweep(const SweepOptions& options, std::ostream& out, std::ostream& err);

struct ReportOptions {
  std::vector<std::filesystem::path> inputs;  // metrics.csv files
  std::optional<std::filesystem::path> out_file;  // default: stdout
};

/// Re-emits metrics CSVs as long-format (source, run, metric, value) rows
/// for plotting, labeling each series with its source file.
int cmd_report(const ReportOptions& options, std::ostream& out, std::ostream& err);

}  // namespace viewprune
