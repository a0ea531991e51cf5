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

#include "viewprune/scoring.h"

#include <cmath>
#include <stdexcept>

namespace viewprune {

void ScoreWeights::validate() const {
  for (double w : {w1, w2, w3}) {
    if (!std::isfinite(w) || w < 0.0) {
      throw std::invalid_argument("score weights must be finite and non-negative");
    }
  }
}

ScoreThreshold ScoreThreshold::absolute(double value) {
  if (!std::isfinite(value) || value < 0.0) {
    throw std::invalid_argument("absolute score threshold must be finite and non-negative");
  }
  return ScoreThreshold(false, value);
}

ScoreThreshold ScoreThreshold::relative_to_max(double fraction) {
  if (!std::isfinite(fraction) || fraction < 0.0 || fraction > 1.0) {
    throw std::invalid_argument("relative score threshold must be in [0, 1]");
  }
  return ScoreThreshold(true, fraction);
}

double ScoreThreshold::resolve(const ScoreWeights& weights) const {
  return relative_ ? value_ * weights.max_score() : value_;
}

double compute_view_score(const ViewStats& stats, const RunObservationContext& ctx,
                          const ScoreWeights& weights) {
  weights.validate();
  if (stats.n_runs == 0) {
    throw std::invalid_argument("compute_view_score: n_runs must be >= 1");
  }
  if (ctx.max_obs < stats.n_obs_cur) {
    throw std::invalid_argument("compute_view_score: max_obs below the view's n_obs_cur");
  }
  const double reloc = stats.used_for_reloc ? 1.0 : 0.0;
  const double cur_ratio =
      ctx.max_obs == 0 ? 0.0 : static_cast<double>(stats.n_obs_cur) / ctx.max_obs;
  const double run_ratio = static_cast<double>(stats.n_obs_runs) / stats.n_runs;
  return weights.w1 * reloc + weights.w2 * cur_ratio + weights.w3 * run_ratio;
}

double resolve_threshold(const ScoreThreshold& threshold, const ScoreWeights& weights) {
  return threshold.resolve(weights);
}

}  // namespace viewprune
