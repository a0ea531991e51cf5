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
#include <stdexcept>
#include <string>
#include <vector>

#include "viewprune/pruner.h"
#include "viewprune/simulator.h"

namespace viewprune {

// Config files use the same line-oriented keyed-record style as map files.
// Each file starts with its version record (envfile-v1, simfile-v1,
// prunefile-v1, sweepfile-v1); see configs/ for annotated samples.

class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string file, std::size_t line, const std::string& message)
      : std::runtime_error(file + (line == 0 ? "" : ":" + std::to_string(line)) + ": " + message),
        file_(std::move(file)),
        line_(line) {}
  const std::string& file() const { return file_; }
  std::size_t line() const { return line_; }

 private:
  std::string file_;
  std::size_t line_;
};

Environment load_environment(const std::filesystem::path& path);
Environment read_environment(std::istream& in, const std::string& name_for_errors);

SimConfig load_sim_config(const std::filesystem::path& path);
SimConfig read_sim_config(std::istream& in, const std::string& name_for_errors);

PruneConfig load_prune_config(const std::filesystem::path& path);
PruneConfig read_prune_config(std::istream& in, const std::string& name_for_errors);

/// Row-selection thresholds of the sweep harness; unset thresholds are not
/// checked.
struct SelectionThresholds {
  std::optional<double> growth_rate_max;
  std::optional<double> growth_rate_min;
  std::optional<double> dist_between_cross_obs_max;
  std::optional<double> fraction_cross_observed_min;
  std::optional<double> reloc_distance_max;
};

/// A parameter grid: either score weights (w1 x w3, w2 fixed, neighbor check
/// disabled) or the neighbor check (nn_threshold x voxel size, weights
/// fixed). Cells enumerate with the first axis outermost.
struct SweepSpec {
  enum class Mode { kWeights, kNn };

  Mode mode = Mode::kWeights;
  std::uint32_t runs_per_cell = 2;
  std::size_t min_views = 0;
  ScoreThreshold threshold = ScoreThreshold::absolute(0.0);
  SelectionThresholds select;

  // weights mode
  std::vector<double> w1_values;
  std::vector<double> w3_values;
  double w2 = 1.0;

  // nn mode
  std::vector<std::uint32_t> nn_thresholds;
  std::vector<VoxelSize> voxels;
  ScoreWeights fixed_weights;

  std::size_t cell_count() const;
  PruneConfig config_for_cell(std::size_t index) const;
  void validate() const;
};

SweepSpec load_sweep_spec(const std::filesystem::path& path);
SweepSpec read_sweep_spec(std::istream& in, const std::string& name_for_errors);

}  // namespace viewprune
