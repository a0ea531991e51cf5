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
#include <unordered_map>
#include <vector>

#include "viewprune/geometry.h"
#include "viewprune/map_model.h"

namespace viewprune {

/// (x, y, theta) voxel extents used for the neighbor test. A view u is a
/// neighbor of query q when |u.x - q.x| <= sx/2, |u.y - q.y| <= sy/2 and
/// angular_distance(u.theta, q.theta) <= stheta/2 (total extents, centered
/// on the query).
struct VoxelSize {
  double sx = 1.0;
  double sy = 1.0;
  double stheta = 1.0;  // radians, in (0, 2*pi]

  /// Throws std::invalid_argument unless all extents are finite, positive,
  /// and stheta <= 2*pi.
  void validate() const;

  bool operator==(const VoxelSize&) const = default;
};

/// Hash grid over (ViewId, Pose2D) with cells sized to one voxel, wrapping
/// in theta, so a neighbor query only has to scan the 3x3x3 cell
/// neighborhood around the query pose.
class ViewGridIndex {
 public:
  explicit ViewGridIndex(const VoxelSize& voxel);

  void insert(ViewId id, const Pose2D& pose);

  /// Makes `id` invisible to all subsequent queries. Throws on unknown id.
  void remove(ViewId id);

  /// Number of indexed views other than `exclude` inside the voxel centered
  /// on `query`.
  int count_neighbors(const Pose2D& query, ViewId exclude) const;

  std::size_t size() const { return poses_.size(); }
  const VoxelSize& voxel() const { return voxel_; }

 private:
  struct CellKey {
    std::int64_t cx = 0;
    std::int64_t cy = 0;
    std::int32_t ct = 0;
    bool operator==(const CellKey&) const = default;
  };
  struct CellKeyHash {
    std::size_t operator()(const CellKey& k) const {
      return 73856093ULL * static_cast<std::size_t>(k.cx) ^
             19349669ULL * static_cast<std::size_t>(k.cy) ^
             83492791ULL * static_cast<std::size_t>(k.ct);
    }
  };

  CellKey cell_for(const Pose2D& pose) const;
  bool in_voxel(const Pose2D& query, const Pose2D& candidate) const;

  VoxelSize voxel_;
  int theta_cells_ = 1;       // buckets of uniform width 2*pi / theta_cells_
  double theta_cell_width_ = kTwoPi;
  std::unordered_map<CellKey, std::vector<std::pair<ViewId, Pose2D>>, CellKeyHash> cells_;
  std::unordered_map<ViewId, Pose2D> poses_;
};

}  // namespace viewprune
