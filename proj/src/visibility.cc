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

#include "occlabel/visibility.h"

#include <algorithm>
#include <cmath>
#include <limits>

#include "occlabel/error.h"
#include "occlabel/parallel.h"

namespace occlabel {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Ray parameter interval [t_enter, t_exit] inside the grid box, t >= 0.
bool ClipToGrid(const GridSpec& spec, const Vec3& o, const Vec3& d,
                double* t_enter, double* t_exit) {
  double t0 = 0.0;
  double t1 = kInf;
  for (int a = 0; a < 3; ++a) {
    if (d[a] == 0.0) {
      if (o[a] < spec.min()[a] || o[a] >= spec.max()[a]) return false;
      continue;
    }
    double ta = (spec.min()[a] - o[a]) / d[a];
    double tb = (spec.max()[a] - o[a]) / d[a];
    if (ta > tb) std::swap(ta, tb);
    t0 = std::max(t0, ta);
    t1 = std::min(t1, tb);
  }
  if (!(t0 < t1)) return false;
  *t_enter = t0;
  *t_exit = t1;
  return true;
}

}  // namespace

void TraverseRay(const GridSpec& spec, const Vec3& origin, const Vec3& dir,
                 const std::function<bool(const VoxelIndex&)>& visit) {
  double t_enter = 0.0;
  double t_exit = 0.0;
  if (!ClipToGrid(spec, origin, dir, &t_enter, &t_exit)) return;

  const double vs = spec.voxel_size();
  const Vec3 entry = origin + t_enter * dir;
  int cell[3];
  int step[3];
  double t_max[3];
  double t_delta[3];
  for (int a = 0; a < 3; ++a) {
    const int dim = spec.dims()[a];
    const int c = static_cast<int>(std::floor((entry[a] - spec.min()[a]) / vs));
    cell[a] = std::clamp(c, 0, dim - 1);
    if (dir[a] > 0.0) {
      step[a] = 1;
      t_max[a] = (spec.min()[a] + (cell[a] + 1) * vs - origin[a]) / dir[a];
      t_delta[a] = vs / dir[a];
    } else if (dir[a] < 0.0) {
      step[a] = -1;
      t_max[a] = (spec.min()[a] + cell[a] * vs - origin[a]) / dir[a];
      t_delta[a] = -vs / dir[a];
    } else {
      step[a] = 0;
      t_max[a] = kInf;
      t_delta[a] = kInf;
    }
  }

  while (true) {
    if (!visit(VoxelIndex{cell[0], cell[1], cell[2]})) return;
    int axis = 0;
    if (t_max[1] < t_max[axis]) axis = 1;
    if (t_max[2] < t_max[axis]) axis = 2;
    if (t_max[axis] >= t_exit) return;
    cell[axis] += step[axis];
    if (cell[axis] < 0 || cell[axis] >= spec.dims()[axis]) return;
    t_max[axis] += t_delta[axis];
  }
}

CameraMask ComputeMask(const LabelGrid& grid, std::span<const RigCamera> cameras,
                       int ray_stride, int workers) {
  if (ray_stride < 1) throw InvariantError("ray_stride must be >= 1");
  const GridSpec& spec = grid.spec;
  if (grid.labels.size() != spec.num_voxels()) {
    throw ShapeError("label grid size does not match its spec");
  }

  // One work item per (camera, pixel row on the stride grid).
  struct Row {
    size_t camera;
    int v;
  };
  std::vector<Row> rows;
  for (size_t c = 0; c < cameras.size(); ++c) {
    cameras[c].intrinsics.Validate();
    for (int v = 0; v < cameras[c].intrinsics.height; v += ray_stride) {
      rows.push_back({c, v});
    }
  }

  const int parts = std::max(1, workers);
  std::vector<std::vector<uint8_t>> partial(parts);
  ParallelChunks(rows.size(), parts, [&](int part, size_t begin, size_t end) {
    std::vector<uint8_t>& visible = partial[part];
    visible.assign(spec.num_voxels(), 0);
    for (size_t r = begin; r < end; ++r) {
      const RigCamera& cam = cameras[rows[r].camera];
      const Vec3 origin = cam.camera_to_ego.translation();
      const Mat3& rot = cam.camera_to_ego.rotation();
      for (int u = 0; u < cam.intrinsics.width; u += ray_stride) {
        const Vec3 dir = rot * PixelRay(cam.intrinsics, u, rows[r].v);
        TraverseRay(spec, origin, dir, [&](const VoxelIndex& vox) {
          const size_t i = spec.Linear(vox);
          visible[i] = 1;
          return grid.labels[i] == kEmptyClass;
        });
      }
    }
  });

  CameraMask mask = CameraMask::None(spec);
  for (const auto& p : partial) {
    if (p.empty()) continue;
    for (size_t i = 0; i < p.size(); ++i) mask.visible[i] |= p[i];
  }
  return mask;
}

size_t MaskCount(const CameraMask& mask) {
  return static_cast<size_t>(
      std::count_if(mask.visible.begin(), mask.visible.end(), [](uint8_t v) { return v != 0; }));
}

}  // namespace occlabel
