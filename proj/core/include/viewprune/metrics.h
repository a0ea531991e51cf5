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
#include <optional>
#include <utility>
#include <vector>

#include "viewprune/geometry.h"
#include "viewprune/map_model.h"

namespace viewprune {

/// One simulated camera frame: where the robot was, how far it had traveled,
/// and what it saw or created.
struct FrameEvent {
  std::uint32_t frame = 0;
  double travel = 0.0;  // cumulative odometry distance, non-decreasing
  Pose2D robot_pose;
  std::vector<ViewId> observed_views;
  std::vector<ViewId> created_views;
  bool cross_observation = false;  // some observed view was created in a previous run
};

struct RelocEvent {
  std::uint32_t frame = 0;
  double travel = 0.0;
};

/// Per-frame record of one robot run.
struct RunTrace {
  RunIndex run_index = 0;
  ComponentId start_component = 0;
  std::vector<FrameEvent> frames;
  std::optional<RelocEvent> reloc_event;  // first relocalization only
};

/// Evaluation metrics for one run. Cross-observation metrics are undefined
/// for the first run (there is nothing to cross-observe).
struct MetricsReport {
  std::optional<double> avg_dist_between_cross_obs;
  std::optional<double> fraction_cross_observed;  // in [0, 1] when present
  std::optional<double> reloc_distance;
  std::size_t views_at_run_end = 0;
};

/// Metric means across runs plus the growth rate.
struct ExperimentSummary {
  double growth_rate = 0.0;
  std::optional<double> mean_reloc_distance;
  std::optional<double> mean_avg_dist_between_cross_obs;
  std::optional<double> mean_fraction_cross_observed;
};

/// Average per-run view growth starting from the second run:
/// (v_n - v_2) / (n - 1). The first run builds a brand-new map, so it is
/// excluded. Throws std::invalid_argument when fewer than 2 counts are given.
double growth_rate(const std::vector<std::size_t>& view_counts);

/// (average travel distance between consecutive cross-observation frames,
/// fraction of frames with a cross-observation). The first gap is measured
/// from the run start. The average is absent when the run never
/// cross-observed. Throws std::invalid_argument for first-run traces.
std::pair<std::optional<double>, double> cross_observation_stats(const RunTrace& trace);

/// Travel distance at the first relocalization, absent if the run never
/// relocalized.
std::optional<double> relocalization_distance(const RunTrace& trace);

/// Bundles the per-run metrics for `trace`. Cross-observation metrics are
/// filled only for runs >= 2.
MetricsReport run_metrics(const RunTrace& trace, std::size_t views_at_run_end);

/// Arithmetic means over the given reports (runs with an absent value are
/// excluded from that metric's mean) plus growth_rate(view_counts). Callers
/// pass the reports of runs >= 2; the first run has nothing to cross-observe.
/// Throws std::invalid_argument when view_counts has fewer than 2 entries.
ExperimentSummary aggregate(const std::vector<MetricsReport>& reports,
                            const std::vector<std::size_t>& view_counts);

}  // namespace viewprune
