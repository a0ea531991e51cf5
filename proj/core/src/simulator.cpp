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

#include "viewprune/simulator.h"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>
#include <stdexcept>

#include "viewprune/persistence.h"

namespace viewprune {

bool Environment::contains(double x, double y) const {
  for (const Rect& r : region) {
    if (r.contains(x, y)) {
      return true;
    }
  }
  return false;
}

double Environment::area_m2() const {
  // Rectangles are treated as non-overlapping; overlaps only skew the
  // reported area, not the simulation.
  double a = 0.0;
  for (const Rect& r : region) {
    a += r.area();
  }
  return a;
}

Rect Environment::bounding_box() const {
  Rect box = region.front();
  for (const Rect& r : region) {
    box.x0 = std::min(box.x0, r.x0);
    box.y0 = std::min(box.y0, r.y0);
    box.x1 = std::max(box.x1, r.x1);
    box.y1 = std::max(box.y1, r.y1);
  }
  return box;
}

const std::string& Environment::lighting_for_run(RunIndex run) const {
  const std::size_t idx = ((run - 1) / lighting_hold) % lighting_states.size();
  return lighting_states[idx];
}

void Environment::validate() const {
  if (region.empty()) {
    throw std::invalid_argument("environment: empty navigable region");
  }
  for (const Rect& r : region) {
    if (!(r.x1 > r.x0) || !(r.y1 > r.y0)) {
      throw std::invalid_argument("environment: degenerate region rectangle");
    }
  }
  if (!contains(dock.x, dock.y)) {
    throw std::invalid_argument("environment: dock outside the navigable region");
  }
  if (lighting_states.empty()) {
    throw std::invalid_argument("environment: need at least one lighting state");
  }
  if (lighting_hold == 0) {
    throw std::invalid_argument("environment: lighting hold must be >= 1");
  }
}

void SimConfig::validate() const {
  if (frames_per_run == 0) {
    throw std::invalid_argument("sim config: frames_per_run must be >= 1");
  }
  if (!(step_distance > 0.0) || !(observation_radius > 0.0) || !(create_gap_distance > 0.0)) {
    throw std::invalid_argument("sim config: distances must be positive");
  }
  if (!(observation_fov > 0.0) || observation_fov > kTwoPi) {
    throw std::invalid_argument("sim config: observation_fov must be in (0, 2*pi]");
  }
  if (p_observe_matched < 0.0 || p_observe_matched > 1.0 || p_observe_mismatched < 0.0 ||
      p_observe_mismatched > 1.0) {
    throw std::invalid_argument("sim config: probabilities must be in [0, 1]");
  }
  if (p_observe_mismatched > p_observe_matched) {
    throw std::invalid_argument("sim config: p_observe_mismatched must not exceed p_observe_matched");
  }
  if (reloc_min_views == 0) {
    throw std::invalid_argument("sim config: reloc_min_views must be >= 1");
  }
}

std::uint64_t mix_seed(std::uint64_t base, std::uint64_t salt) {
  std::uint64_t z = base + 0x9e3779b97f4a7c15ULL * (salt + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

namespace {

double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Seeded random-waypoint walker confined to the navigable region.
class Walker {
 public:
  Walker(const Environment& env, const SimConfig& sim, std::mt19937_64& rng)
      : env_(env), sim_(sim), rng_(rng), x_(env.dock.x), y_(env.dock.y),
        heading_(env.dock.theta) {}

  void advance() {
    for (int attempt = 0; attempt < 64; ++attempt) {
      if (!have_waypoint_) {
        sample_waypoint();
      }
      const double dx = wx_ - x_;
      const double dy = wy_ - y_;
      const double dist = std::hypot(dx, dy);
      if (dist < 1e-9) {
        have_waypoint_ = false;
        continue;
      }
      const double step = std::min(dist, sim_.step_distance);
      const double cx = x_ + step * dx / dist;
      const double cy = y_ + step * dy / dist;
      if (!env_.contains(cx, cy)) {
        // Straight segment leaves the region (possible in L-shaped regions):
        // pick another waypoint.
        have_waypoint_ = false;
        continue;
      }
      heading_ = std::atan2(dy, dx);
      x_ = cx;
      y_ = cy;
      travel_ += step;
      if (step >= dist - 1e-9) {
        have_waypoint_ = false;
      }
      return;
    }
    // Region too tight to move this frame; stay put.
  }

  Pose2D pose() const { return Pose2D(x_, y_, heading_); }
  double travel() const { return travel_; }

 private:
  void sample_waypoint() {
    double total = env_.area_m2();
    double pick = uniform01(rng_) * total;
    const Rect* chosen = &env_.region.back();
    for (const Rect& r : env_.region) {
      pick -= r.area();
      if (pick <= 0.0) {
        chosen = &r;
        break;
      }
    }
    wx_ = chosen->x0 + uniform01(rng_) * (chosen->x1 - chosen->x0);
    wy_ = chosen->y0 + uniform01(rng_) * (chosen->y1 - chosen->y0);
    have_waypoint_ = true;
  }

  const Environment& env_;
  const SimConfig& sim_;
  std::mt19937_64& rng_;
  double x_;
  double y_;
  double heading_;
  double travel_ = 0.0;
  double wx_ = 0.0;
  double wy_ = 0.0;
  bool have_waypoint_ = false;
};

}  // namespace

RunTrace execute_run(const Environment& env, MapGraph& map, const SimConfig& sim,
                     const PruneConfig* prune, std::uint64_t run_seed) {
  env.validate();
  sim.validate();
  if (prune != nullptr) {
    prune->validate();
  }

  std::mt19937_64 rng(run_seed);
  const RunHandle handle = map.begin_run();
  const std::string& lighting = env.lighting_for_run(handle.run);

  RunTrace trace;
  trace.run_index = handle.run;
  trace.start_component = handle.active_component;
  trace.frames.reserve(sim.frames_per_run);

  Walker walker(env, sim, rng);
  ComponentId active = handle.active_component;
  double unobserved_travel = 0.0;
  // Distinct prior-component views observed this run, per component.
  std::map<ComponentId, std::set<ViewId>> prior_observed;

  const double radius_sq = sim.observation_radius * sim.observation_radius;
  const double half_fov = sim.observation_fov / 2.0;

  for (std::uint32_t frame = 0; frame < sim.frames_per_run; ++frame) {
    if (frame > 0) {
      const double before = walker.travel();
      walker.advance();
      unobserved_travel += walker.travel() - before;
    }
    const Pose2D pose = walker.pose();

    FrameEvent ev;
    ev.frame = frame;
    ev.travel = walker.travel();
    ev.robot_pose = pose;

    // A view is observable when the robot is near its capture pose, facing
    // roughly the same way, and the lighting cooperates.
    for (const auto& [cid, comp] : map.components()) {
      for (const auto& [vid, view] : comp.views) {
        if (squared_distance(view.pose, pose) > radius_sq ||
            angular_distance(view.pose.theta, pose.theta) > half_fov) {
          continue;
        }
        const double p =
            view.appearance_key == lighting ? sim.p_observe_matched : sim.p_observe_mismatched;
        if (uniform01(rng) >= p) {
          continue;
        }
        ev.observed_views.push_back(vid);
        if (view.stats.created_run < handle.run) {
          ev.cross_observation = true;
        }
        if (cid != active) {
          prior_observed[cid].insert(vid);
        }
      }
    }
    for (ViewId vid : ev.observed_views) {
      map.record_observation(vid);
    }
    if (!ev.observed_views.empty()) {
      unobserved_travel = 0.0;
    }

    // Relocalize into every component that has accumulated enough distinct
    // observations. Chained merges keep a single active component.
    bool merged = true;
    while (merged) {
      merged = false;
      for (auto it = prior_observed.begin(); it != prior_observed.end(); ++it) {
        if (it->first == active || it->second.size() < sim.reloc_min_views) {
          continue;
        }
        const ComponentId target = it->first;
        map.merge_components(active, target, Transform2D::identity(), it->second);
        active = target;
        prior_observed.erase(it);
        if (!trace.reloc_event) {
          trace.reloc_event = RelocEvent{frame, walker.travel()};
        }
        merged = true;
        break;
      }
    }

    if (ev.observed_views.empty() && unobserved_travel >= sim.create_gap_distance) {
      const View& created = map.create_view(active, pose, lighting, frame);
      ev.created_views.push_back(created.id);
      unobserved_travel = 0.0;
    }

    trace.frames.push_back(std::move(ev));
  }

  if (prune != nullptr) {
    std::vector<ComponentId> ids;
    for (const auto& [cid, comp] : map.components()) {
      ids.push_back(cid);
    }
    for (ComponentId cid : ids) {
      const Component& comp = map.component(cid);
      if (comp.views.empty()) {
        continue;
      }
      RunObservationContext ctx;
      for (const auto& [vid, view] : comp.views) {
        ctx.max_obs = std::max(ctx.max_obs, view.stats.n_obs_cur);
      }
      const PruneReport report = find_views_for_deletion(comp, *prune, ctx);
      map.delete_views(cid, report.delete_set);
    }
  }
  return trace;
}

ExperimentResult lifelong_experiment(const Environment& env, std::uint32_t n_runs,
                                     const SimConfig& sim, const PruneConfig* prune,
                                     std::uint64_t master_seed, std::vector<RunTrace>* traces) {
  if (n_runs < 2) {
    throw std::invalid_argument("lifelong_experiment: need at least 2 runs");
  }
  ExperimentResult result;
  MapGraph map;
  map.set_environment_id(env.name);
  for (std::uint32_t run = 1; run <= n_runs; ++run) {
    RunTrace trace = execute_run(env, map, sim, prune, mix_seed(master_seed, run));
    result.view_counts.push_back(map.total_views());
    result.run_reports.push_back(run_metrics(trace, result.view_counts.back()));
    if (traces != nullptr) {
      traces->push_back(std::move(trace));
    }
    // Round-trip through the serializer, as a robot reloading its saved map
    // between runs would.
    std::stringstream buffer;
    save_map(map, buffer);
    map = load_map(buffer);
  }
  result.summary = aggregate({result.run_reports.begin() + 1, result.run_reports.end()},
                             result.view_counts);
  result.final_map = std::move(map);
  return result;
}

}  // namespace viewprune
