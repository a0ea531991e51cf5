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

#include "viewprune/spatial_index.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace viewprune {

void VoxelSize::validate() const {
  if (!std::isfinite(sx) || !std::isfinite(sy) || !std::isfinite(stheta) || sx <= 0.0 ||
      sy <= 0.0 || stheta <= 0.0 || stheta > kTwoPi) {
    throw std::invalid_argument(
        "voxel size must have finite positive extents with stheta in (0, 2*pi]");
  }
}

ViewGridIndex::ViewGridIndex(const VoxelSize& voxel) : voxel_(voxel) {
  voxel_.validate();
  // Theta buckets must be at least stheta wide so that any angle within
  // stheta/2 of the query falls in the query's bucket or an adjacent one.
  theta_cells_ = std::max(1, static_cast<int>(std::floor(kTwoPi / voxel_.stheta)));
  theta_cell_width_ = kTwoPi / theta_cells_;
}

ViewGridIndex::CellKey ViewGridIndex::cell_for(const Pose2D& pose) const {
  // theta in (-pi, pi] -> [0, 2*pi) for bucketing.
  double tw = pose.theta < 0.0 ? pose.theta + kTwoPi : pose.theta;
  int ct = static_cast<int>(tw / theta_cell_width_);
  if (ct >= theta_cells_) {
    ct = theta_cells_ - 1;
  }
  return CellKey{static_cast<std::int64_t>(std::floor(pose.x / voxel_.sx)),
                 static_cast<std::int64_t>(std::floor(pose.y / voxel_.sy)), ct};
}

bool ViewGridIndex::in_voxel(const Pose2D& query, const Pose2D& candidate) const {
  return std::abs(candidate.x - query.x) <= voxel_.sx / 2.0 &&
         std::abs(candidate.y - query.y) <= voxel_.sy / 2.0 &&
         angular_distance(candidate.theta, query.theta) <= voxel_.stheta / 2.0;
}

void ViewGridIndex::insert(ViewId id, const Pose2D& pose) {
  auto [it, inserted] = poses_.emplace(id, pose);
  if (!inserted) {
    throw std::invalid_argument("ViewGridIndex::insert: duplicate view id " + std::to_string(id));
  }
  cells_[cell_for(pose)].emplace_back(id, pose);
}

void ViewGridIndex::remove(ViewId id) {
  auto it = poses_.find(id);
  if (it == poses_.end()) {
    throw std::invalid_argument("ViewGridIndex::remove: unknown view id " + std::to_string(id));
  }
  auto cell_it = cells_.find(cell_for(it->second));
  auto& bucket = cell_it->second;
  bucket.erase(std::find_if(bucket.begin(), bucket.end(),
                            [id](const auto& entry) { return entry.first == id; }));
  if (bucket.empty()) {
    cells_.erase(cell_it);
  }
  poses_.erase(it);
}

int ViewGridIndex::count_neighbors(const Pose2D& query, ViewId exclude) const {
  const CellKey center = cell_for(query);
  int count = 0;
  // Theta wraps; with fewer than 3 buckets the offsets alias, so dedupe.
  int theta_offsets[3];
  int n_theta = 0;
  for (int dt = -1; dt <= 1; ++dt) {
    int ct = (center.ct + dt + theta_cells_) % theta_cells_;
    bool seen = false;
    for (int i = 0; i < n_theta; ++i) {
      seen = seen || theta_offsets[i] == ct;
    }
    if (!seen) {
      theta_offsets[n_theta++] = ct;
    }
  }
  for (std::int64_t dx = -1; dx <= 1; ++dx) {
    for (std::int64_t dy = -1; dy <= 1; ++dy) {
      for (int i = 0; i < n_theta; ++i) {
        auto it = cells_.find(CellKey{center.cx + dx, center.cy + dy, theta_offsets[i]});
        if (it == cells_.end()) {
          continue;
        }
        for (const auto& [id, pose] : it->second) {
          if (id != exclude && in_voxel(query, pose)) {
            ++count;
          }
        }
      }
    }
  }
  return count;
}

}  // namespace viewprune
