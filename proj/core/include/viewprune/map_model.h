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
#include <set>
#include <string>
#include <unordered_map>

#include "viewprune/geometry.h"

namespace viewprune {

// Ids are allocated monotonically and never reused after deletion.
using ViewId = std::uint64_t;
using ComponentId = std::uint32_t;
using RunIndex = std::uint32_t;  // 1-based; 0 means "no run yet"

/// Per-view observation statistics accumulated across runs.
struct ViewStats {
  std::uint32_t n_obs_cur = 0;   // observations in the current run; reset at run start
  RunIndex created_run = 0;      // run in which the view was created
  std::uint32_t created_at = 0;  // frame index within the creating run
  std::uint32_t n_runs = 1;      // runs during which the view was present (incl. creating run)
  std::uint32_t n_obs_runs = 0;  // runs in which the view was observed at least once
  bool used_for_reloc = false;   // sticky: ever contributed to a relocalization

  bool operator==(const ViewStats&) const = default;
};

/// A uniquely identifiable visual scene with a pose in its component's frame.
struct View {
  ViewId id = 0;
  Pose2D pose;
  ViewStats stats;
  std::string appearance_key;  // immutable after creation

  bool operator==(const View&) const = default;
};

/// A disjoint sub-map with its own coordinate frame.
struct Component {
  ComponentId id = 0;
  std::uint32_t run_count = 1;
  std::map<ViewId, View> views;  // ordered for deterministic iteration
};

struct RunHandle {
  RunIndex run = 0;
  ComponentId active_component = 0;
};

/// The persistent view-level map: components, views, statistics, and
/// run-lifecycle bookkeeping. Single-writer; snapshots handed to the pruner
/// are plain copies of Component.
class MapGraph {
 public:
  /// Starts a new run: bumps the run index, creates a fresh active component,
  /// and for every pre-existing view increments n_runs and clears n_obs_cur.
  RunHandle begin_run();

  /// Creates a view in `component` at `pose` during the active run.
  /// New views start with n_runs = 1 and no observations.
  View& create_view(ComponentId component, const Pose2D& pose, std::string appearance_key,
                    std::uint32_t frame_index);

  /// Counts one observation of `view_id` in the current run. The first
  /// observation of a run also bumps n_obs_runs. Returns the updated stats.
  ViewStats record_observation(ViewId view_id);

  /// Moves every view of `active` into `target`, re-expressing poses through
  /// `active_to_target`, removes `active`, and marks `reloc_views` (the views
  /// whose observation triggered the merge) as used for relocalization.
  /// Returns the id of the merged component (always `target`).
  ComponentId merge_components(ComponentId active, ComponentId target,
                               const Transform2D& active_to_target,
                               const std::set<ViewId>& reloc_views);

  /// Removes `ids` from `component`. All-or-nothing: if any id does not
  /// belong to the component, throws and deletes nothing. Returns the number
  /// of views deleted. Deleted ids are never reallocated.
  std::size_t delete_views(ComponentId component, const std::set<ViewId>& ids);

  const std::map<ComponentId, Component>& components() const { return components_; }
  Component& component(ComponentId id);
  const Component& component(ComponentId id) const;
  bool has_component(ComponentId id) const { return components_.contains(id); }

  /// Returns nullptr when the id is unknown (e.g. after deletion).
  const View* find_view(ViewId id) const;

  std::size_t total_views() const;
  RunIndex run_index() const { return run_index_; }
  ViewId next_view_id() const { return next_view_id_; }

  const std::string& environment_id() const { return environment_id_; }
  void set_environment_id(std::string id) { environment_id_ = std::move(id); }

  // Restore API, used by persistence and by tests building maps by hand.
  // Inserting an existing id throws; allocator state advances past any id
  // inserted this way.
  Component& add_component(ComponentId id, std::uint32_t run_count);
  View& insert_view(ComponentId component, View view);
  void set_run_index(RunIndex run) { run_index_ = run; }

 private:
  std::map<ComponentId, Component> components_;
  std::unordered_map<ViewId, ComponentId> view_lookup_;
  ViewId next_view_id_ = 1;
  ComponentId next_component_id_ = 1;
  RunIndex run_index_ = 0;
  std::string environment_id_;
};

}  // namespace viewprune
