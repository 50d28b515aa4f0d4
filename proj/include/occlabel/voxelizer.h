// Copyright 2026 The occlabel Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef OCCLABEL_VOXELIZER_H_
#define OCCLABEL_VOXELIZER_H_

#include <array>
#include <cstdint>
#include <unordered_map>

#include "occlabel/grid.h"
#include "occlabel/point_cloud.h"

namespace occlabel {

// Per-voxel class counts for the voxels that received at least one point,
// keyed by linear voxel index. Histograms over disjoint point sets merge by
// addition, so building one in parallel partitions and merging gives the
// same counts as a single pass.
class VoxelHistogram {
 public:
  using Counts = std::array<uint32_t, kNumClasses>;

  explicit VoxelHistogram(const GridSpec& spec) : spec_(spec) {}

  // Bins every in-grid point; out-of-grid points are counted in
  // dropped_points(). Throws InvariantError for labels >= 17.
  void Add(const SemanticPointCloud& cloud, int workers = 1);
  void Merge(const VoxelHistogram& other);

  // Voxels with at least `threshold` points take their majority class
  // (ties to the smaller index); everything else is empty.
  LabelGrid Label(uint32_t threshold) const;
  // Number of voxels Label(threshold) would mark occupied.
  size_t OccupiedAt(uint32_t threshold) const;
  // Largest per-voxel point count (0 when empty).
  uint32_t MaxVoxelCount() const;

  const GridSpec& spec() const { return spec_; }
  const std::unordered_map<uint32_t, Counts>& bins() const { return bins_; }
  uint64_t binned_points() const { return binned_; }
  uint64_t dropped_points() const { return dropped_; }

 private:
  GridSpec spec_;
  std::unordered_map<uint32_t, Counts> bins_;
  uint64_t binned_ = 0;
  uint64_t dropped_ = 0;
};

// Threshold + majority-vote voxelization of an ego-frame cloud.
// Throws InvariantError for threshold < 1.
LabelGrid Voxelize(const SemanticPointCloud& cloud, const GridSpec& spec,
                   uint32_t threshold, int workers = 1);

// Voxels whose label is not empty.
size_t OccupiedCount(const LabelGrid& grid);

}  // namespace occlabel

#endif  // OCCLABEL_VOXELIZER_H_
