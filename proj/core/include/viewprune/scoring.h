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

#include "viewprune/map_model.h"

namespace viewprune {

/// Weights of the three retention-score terms: relocalization usage,
/// current-run observation ratio, and cross-run observation ratio.
struct ScoreWeights {
  double w1 = 0.0;
  double w2 = 0.0;
  double w3 = 0.0;

  /// Highest score any view can reach; each term's ratio is at most 1.
  double max_score() const { return w1 + w2 + w3; }

  /// Throws std::invalid_argument unless all weights are finite and >= 0.
  void validate() const;

  bool operator==(const ScoreWeights&) const = default;
};

/// A score threshold, either absolute or as a fraction of max_score().
/// Views scoring strictly above the resolved value are kept; ties are
/// eligible for deletion.
class ScoreThreshold {
 public:
  static ScoreThreshold absolute(double value);           // value >= 0, finite
  static ScoreThreshold relative_to_max(double fraction); // fraction in [0, 1]

  double resolve(const ScoreWeights& weights) const;
  bool is_relative() const { return relative_; }
  double raw_value() const { return value_; }

  bool operator==(const ScoreThreshold&) const = default;

 private:
  ScoreThreshold(bool relative, double value) : relative_(relative), value_(value) {}
  bool relative_ = false;
  double value_ = 0.0;
};

/// Per-run scoring context: the maximum n_obs_cur over all views in the
/// component for the current run.
struct RunObservationContext {
  std::uint32_t max_obs = 0;
};

/// score = w1 * reloc + w2 * n_obs_cur / max_obs + w3 * n_obs_runs / n_runs.
/// The middle term is 0 when max_obs is 0 (a run with no observations yet).
/// Throws std::invalid_argument when stats.n_runs == 0 or
/// ctx.max_obs < stats.n_obs_cur.
double compute_view_score(const ViewStats& stats, const RunObservationContext& ctx,
                          const ScoreWeights& weights);

double resolve_threshold(const ScoreThreshold& threshold, const ScoreWeights& weights);

}  // namespace viewprune
