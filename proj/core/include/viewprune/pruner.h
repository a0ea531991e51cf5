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
#include <map>
#include <optional>
#include <set>

#include "viewprune/map_model.h"
#include "viewprune/scoring.h"
#include "viewprune/spatial_index.h"

namespace viewprune {

/// All knobs of the deletion-selection pass in one validated record.
struct PruneConfig {
  std::size_t min_views = 0;        // pruning runs only above this view count
  std::uint32_t nn_threshold = 0;   // minimum surviving neighbors required to delete
  VoxelSize voxel{1.0, 1.0, 1.0};   // neighbor-test voxel
  ScoreThreshold threshold = ScoreThreshold::absolute(0.0);
  ScoreWeights weights;
  bool nn_enabled = true;           // the sweep harness disables the neighbor pass
  std::optional<std::size_t> max_views_cap;  // optional hard cap on kept views

  /// Throws std::invalid_argument on nonsense (e.g. cap below min_views).
  void validate() const;
};

/// Outcome of one deletion-selection pass over a component snapshot.
/// delete_set, protected_new and rescued_by_nn are pairwise disjoint and,
/// together with the score-kept views, partition the component.
struct PruneReport {
  std::set<ViewId> delete_set;
  std::map<ViewId, double> scores;  // every scored (non-protected) view
  std::set<ViewId> protected_new;   // created this run and observed at least once
  std::set<ViewId> rescued_by_nn;   // kept for lack of surviving neighbors
};

/// Selects the views of `snapshot` that can be deleted without hurting
/// relocalization or spatial coverage:
///
///   1. No pruning at or below min_views.
///   2. Views created this run (n_runs == 1) and observed this run are kept
///      outright and never scored.
///   3. Every other view is scored; score > resolved threshold keeps it.
///   4. Remaining candidates, by ascending score (ties by id), are confirmed
///      for deletion only while they still have nn_threshold or more
///      neighbors among surviving views; otherwise they are rescued.
///   5. An optional cap evicts the lowest-scoring kept views (NN rescues
///      last, protected views never) until the kept count fits.
///
/// Pure function over the snapshot; identical inputs give identical reports.
/// Throws std::invalid_argument when ctx.max_obs is below some view's
/// n_obs_cur or the config is invalid.
PruneReport find_views_for_deletion(const Component& snapshot, const PruneConfig& config,
                                    const RunObservationContext& ctx);

}  // namespace viewprune
