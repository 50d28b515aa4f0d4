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

#include "occlabel/voxelizer.h"

#include <algorithm>
#include <numeric>
#include <string>
#include <vector>

#include "occlabel/error.h"
#include "occlabel/parallel.h"

namespace occlabel {
namespace {

uint32_t Total(const VoxelHistogram::Counts& c) {
  return std::accumulate(c.begin(), c.end(), 0u);
}

uint8_t Majority(const VoxelHistogram::Counts& c) {
  // max_element returns the first maximum, i.e. the smallest class index.
  return static_cast<uint8_t>(std::max_element(c.begin(), c.end()) - c.begin());
}

}  // namespace

void VoxelHistogram::Add(const SemanticPointCloud& cloud, int workers) {
  if (cloud.labels.size() != cloud.size()) {
    throw InvariantError("point cloud arrays differ in length");
  }
  const int parts = std::max(1, workers);
  std::vector<VoxelHistogram> partial(parts, VoxelHistogram(spec_));
  ParallelChunks(cloud.size(), parts, [&](int part, size_t begin, size_t end) {
    VoxelHistogram& h = partial[part];
    h.bins_.reserve((end - begin) / 8 + 16);
    for (size_t i = begin; i < end; ++i) {
      const uint8_t label = cloud.labels[i];
      if (label >= kEmptyClass) {
        throw InvariantError("cannot voxelize point label " + std::to_string(label));
      }
      const auto v = spec_.VoxelOf(cloud.points[i]);
      if (!v) {
        ++h.dropped_;
        continue;
      }
      ++h.bins_[static_cast<uint32_t>(spec_.Linear(*v))][label];
      ++h.binned_;
    }
  });
  for (const VoxelHistogram& h : partial) Merge(h);
}

void VoxelHistogram::Merge(const VoxelHistogram& other) {
  if (!(other.spec_ == spec_)) throw ShapeError("cannot merge histograms over different grids");
  if (bins_.empty()) {
    bins_ = other.bins_;
  } else {
    for (const auto& [key, counts] : other.bins_) {
      Counts& mine = bins_[key];
      for (int c = 0; c < kNumClasses; ++c) mine[c] += counts[c];
    }
  }
  binned_ += other.binned_;
  dropped_ += other.dropped_;
}

LabelGrid VoxelHistogram::Label(uint32_t threshold) const {
  if (threshold < 1) throw InvariantError("occupancy threshold must be >= 1");
  LabelGrid grid = LabelGrid::Empty(spec_);
  for (const auto& [key, counts] : bins_) {
    if (Total(counts) >= threshold) grid.labels[key] = Majority(counts);
  }
  return grid;
}

size_t VoxelHistogram::OccupiedAt(uint32_t threshold) const {
  size_t n = 0;
  for (const auto& [key, counts] : bins_) n += Total(counts) >= threshold ? 1 : 0;
  return n;
}

uint32_t VoxelHistogram::MaxVoxelCount() const {
  uint32_t best = 0;
  for (const auto& [key, counts] : bins_) best = std::max(best, Total(counts));
  return best;
}

LabelGrid Voxelize(const SemanticPointCloud& cloud, const GridSpec& spec,
                   uint32_t threshold, int workers) {
  if (threshold < 1) throw InvariantError("occupancy threshold must be >= 1");
  VoxelHistogram hist(spec);
  hist.Add(cloud, workers);
  return hist.Label(threshold);
}

size_t OccupiedCount(const LabelGrid& grid) {
  return static_cast<size_t>(std::count_if(grid.labels.begin(), grid.labels.end(),
                                           [](uint8_t l) { return l != kEmptyClass; }));
}

}  // namespace occlabel
