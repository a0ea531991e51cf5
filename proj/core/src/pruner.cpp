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

#include "viewprune/pruner.h"

#include <algorithm>
#include <stdexcept>
#include <vector>

namespace viewprune {

void PruneConfig::validate() const {
  weights.validate();
  voxel.validate();
  if (max_views_cap && *max_views_cap < min_views) {
    throw std::invalid_argument("max_views_cap must be at least min_views");
  }
}

PruneReport find_views_for_deletion(const Component& snapshot, const PruneConfig& config,
                                    const RunObservationContext& ctx) {
  config.validate();
  for (const auto& [vid, view] : snapshot.views) {
    if (view.stats.n_obs_cur > ctx.max_obs) {
      throw std::invalid_argument("find_views_for_deletion: ctx.max_obs below n_obs_cur of view " +
                                  std::to_string(vid));
    }
  }

  PruneReport report;
  if (snapshot.views.size() <= config.min_views) {
    return report;
  }

  // A view created during the current run still has n_runs == 1: begin_run
  // bumps every pre-existing view at the start of each run.
  const double threshold = config.threshold.resolve(config.weights);
  std::vector<std::pair<double, ViewId>> candidates;
  for (const auto& [vid, view] : snapshot.views) {
    if (view.stats.n_runs == 1 && view.stats.n_obs_cur >= 1) {
      report.protected_new.insert(vid);
      continue;
    }
    const double score = compute_view_score(view.stats, ctx, config.weights);
    report.scores.emplace(vid, score);
    if (score <= threshold) {
      candidates.emplace_back(score, vid);
    }
  }
  std::sort(candidates.begin(), candidates.end());

  if (config.nn_enabled) {
    ViewGridIndex index(config.voxel);
    for (const auto& [vid, view] : snapshot.views) {
      index.insert(vid, view.pose);
    }
    // Confirmed deletions leave the index, so each candidate is tested
    // against the views that would actually survive it.
    for (const auto& [score, vid] : candidates) {
      const Pose2D& pose = snapshot.views.at(vid).pose;
      if (index.count_neighbors(pose, vid) < static_cast<int>(config.nn_threshold)) {
        report.rescued_by_nn.insert(vid);
      } else {
        report.delete_set.insert(vid);
        index.remove(vid);
      }
    }
  } else {
    for (const auto& [score, vid] : candidates) {
      report.delete_set.insert(vid);
    }
  }

  if (config.max_views_cap) {
    std::size_t kept = snapshot.views.size() - report.delete_set.size();
    if (kept > *config.max_views_cap) {
      // Evict lowest score first; NN rescues only after every other
      // non-protected view; protected new views never.
      std::vector<std::pair<double, ViewId>> evictable;
      std::vector<std::pair<double, ViewId>> rescued;
      for (const auto& [vid, score] : report.scores) {
        if (report.delete_set.contains(vid)) {
          continue;
        }
        if (report.rescued_by_nn.contains(vid)) {
          rescued.emplace_back(score, vid);
        } else {
          evictable.emplace_back(score, vid);
        }
      }
      std::sort(evictable.begin(), evictable.end());
      std::sort(rescued.begin(), rescued.end());
      evictable.insert(evictable.end(), rescued.begin(), rescued.end());
      for (const auto& [score, vid] : evictable) {
        if (kept <= *config.max_views_cap) {
          break;
        }
        report.delete_set.insert(vid);
        report.rescued_by_nn.erase(vid);
        --kept;
      }
    }
  }
  return report;
}

}  // namespace viewprune
