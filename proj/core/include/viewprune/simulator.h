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
#include <string>
#include <vector>

#include "viewprune/map_model.h"
#include "viewprune/metrics.h"
#include "viewprune/pruner.h"

namespace viewprune {

// Deterministic stand-in for the visual front end: an abstract environment
// with discrete lighting states, a seeded waypoint walker starting at the
// dock, and a probabilistic observation model keyed on whether a view's
// appearance matches the run's lighting.

struct Rect {
  double x0 = 0.0;
  double y0 = 0.0;
  double x1 = 0.0;
  double y1 = 0.0;

  bool contains(double x, double y) const { return x >= x0 && x <= x1 && y >= y0 && y <= y1; }
  double area() const { return (x1 - x0) * (y1 - y0); }
};

struct Environment {
  std::string name;
  std::vector<Rect> region;  // navigable area as a union of axis-aligned rectangles
  Pose2D dock;
  std::vector<std::string> lighting_states;  // ordered, at least one
  std::uint32_t lighting_hold = 1;           // runs spent in a state before cycling
  std::uint64_t seed = 0;

  bool contains(double x, double y) const;
  double area_m2() const;
  double area_ft2() const { return area_m2() * 10.7639; }
  Rect bounding_box() const;

  /// Lighting state for a 1-based run index (cyclic schedule).
  const std::string& lighting_for_run(RunIndex run) const;

  /// Throws std::invalid_argument on an unusable environment (empty region,
  /// dock outside it, no lighting states, ...).
  void validate() const;
};

struct SimConfig {
  std::uint32_t frames_per_run = 1000;
  double step_distance = 0.1;        // meters per frame
  double observation_radius = 1.2;   // meters
  double observation_fov = 1.2;      // radians, total width around the heading
  double p_observe_matched = 0.75;   // lighting matches the view's appearance
  double p_observe_mismatched = 0.05;
  double create_gap_distance = 0.5;  // unobserved travel that triggers view creation
  std::uint32_t reloc_min_views = 3; // distinct prior-component views needed to merge

  void validate() const;
};

/// splitmix64-based mixing for deriving per-run and per-cell seeds.
std::uint64_t mix_seed(std::uint64_t base, std::uint64_t salt);

/// Simulates one run: begin_run, walk the region frame by frame, observe and
/// create views, merge components on relocalization, and at run end apply the
/// pruner (when `prune` is non-null) to every component. Returns the trace;
/// the map is mutated in place.
RunTrace execute_run(const Environment& env, MapGraph& map, const SimConfig& sim,
                     const PruneConfig* prune, std::uint64_t run_seed);

struct ExperimentResult {
  std::vector<MetricsReport> run_reports;  // index i -> run i+1
  std::vector<std::size_t> view_counts;    // total views at each run end
  ExperimentSummary summary;               // aggregated over runs >= 2
  MapGraph final_map;
};

/// Runs `n_runs` sequential runs (n_runs >= 2), cycling lighting per the
/// environment schedule and round-tripping the map through the viewmap-v1
/// serializer between runs, exactly as a robot reloading its saved map would.
/// Per-run seeds derive from mix_seed(master_seed, run). Pass `traces` to
/// also collect the full per-run traces.
ExperimentResult lifelong_experiment(const Environment& env, std::uint32_t n_runs,
                                     const SimConfig& sim, const PruneConfig* prune,
                                     std::uint64_t master_seed,
                                     std::vector<RunTrace>* traces = nullptr);

}  // namespace viewprune
