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

#ifndef OCCLABEL_VISIBILITY_H_
#define OCCLABEL_VISIBILITY_H_

#include <functional>
#include <span>
#include <vector>

#include "occlabel/geometry.h"
#include "occlabel/grid.h"

namespace occlabel {

struct RigCamera {
  Intrinsics intrinsics;
  RigidTransform camera_to_ego;
};

// Walks the voxels pierced by the ray origin + t * dir, t >= 0, in order
// (Amanatides-Woo). `visit` returns false to stop the walk. Rays starting
// outside the grid enter it at their first intersection.
void TraverseRay(const GridSpec& spec, const Vec3& origin, const Vec3& dir,
                 const std::function<bool(const VoxelIndex&)>& visit);

// Union over cameras and stride-grid pixels of the voxels each pixel ray
// crosses up to and including its first non-empty voxel. Empty voxels in
// front of the first hit are visible; everything past it is not.
// Throws InvariantError for ray_stride < 1.
CameraMask ComputeMask(const LabelGrid& grid, std::span<const RigCamera> cameras,
                       int ray_stride = 4, int workers = 1);

size_t MaskCount(const CameraMask& mask);

}  // namespace occlabel

#endif  // OCCLABEL_VISIBILITY_H_
