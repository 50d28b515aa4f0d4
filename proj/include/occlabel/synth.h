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

#ifndef OCCLABEL_SYNTH_H_
#define OCCLABEL_SYNTH_H_

// Analytic scenes: a horizontal ground plane and axis-aligned boxes in the
// global frame, observed by a camera rig riding an ego trajectory.
//
// Scene document (JSON):
//
//   {
//     "timesteps": 3,
//     "world": {"min": [x, y, z], "max": [x, y, z]},
//     "ground": {"z": 0.1, "class": "driveable_surface"},        (optional)
//     "boxes": [{"center": [..], "size": [..], "class": 4,
//                "dynamic": true, "motion": [[dx, dy, dz], ...]}],
//     "cameras": [{"camera_id": "CAM_FRONT", "K": [9], "width": 256,
//                  "height": 144, "T_camera_to_ego": [16]}],
//     "trajectory": [[16 numbers, ego -> global], ...]
//   }
//
// Classes are names or indices. A dynamic box sits at center + motion[t]
// at timestep t; static boxes carry no motion.

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "occlabel/calibration.h"
#include "occlabel/geometry.h"
#include "occlabel/grid.h"
#include "occlabel/point_cloud.h"
#include "occlabel/visibility.h"

namespace occlabel {

struct SceneBox {
  Vec3 center = Vec3::Zero();
  Vec3 size = Vec3::Ones();
  uint8_t label = 0;
  bool dynamic = false;
  std::vector<Vec3> motion;  // one offset per timestep when dynamic

  Vec3 CenterAt(int t) const;
  // Half-open [lo, hi) extent at timestep t.
  Vec3 Lo(int t) const { return CenterAt(t) - 0.5 * size; }
  Vec3 Hi(int t) const { return CenterAt(t) + 0.5 * size; }
};

struct GroundPlane {
  double z = 0.0;
  uint8_t label = kDriveableSurface;
};

struct SceneCamera {
  std::string camera_id;
  Intrinsics intrinsics;
  RigidTransform camera_to_ego;
};

struct SceneSpec {
  int timesteps = 1;
  Vec3 world_min = Vec3::Constant(-50.0);
  Vec3 world_max = Vec3::Constant(50.0);
  std::optional<GroundPlane> ground;
  std::vector<SceneBox> boxes;
  std::vector<SceneCamera> cameras;
  std::vector<RigidTransform> trajectory;  // ego -> global per timestep

  // Throws InvariantError: timesteps >= 1, one trajectory pose per
  // timestep, at least one camera, positive box sizes, labels below 17,
  // motion present exactly for dynamic boxes (one entry per timestep), and
  // every box inside the world extent at every timestep.
  void Validate() const;
  std::vector<RigCamera> Rig() const;
};

SceneSpec ParseSceneSpec(std::string_view text);
SceneSpec ReadSceneSpec(const std::filesystem::path& path);
std::string SerializeSceneSpec(const SceneSpec& scene);

// Surround-view street scene used by the end-to-end checks. Every surface
// lies strictly inside a voxel of the grid lattice anchored at (-40, -40,
// -1) with 0.4 m voxels, so each lifted point falls in a voxel whose
// analytic label equals the point's label.
SceneSpec DemoScene(int timesteps = 14, bool with_dynamic = true);

// Exact z-buffer render of one camera at timestep t. Pixels whose ray
// misses everything get depth 0 and label 17. Boxes win exact depth ties
// with the ground; among boxes the smaller class wins. A box containing
// the camera center is not rendered.
CameraSample RenderSample(const SceneSpec& scene, int t, int camera_index,
                          int workers = 1);

CalibrationRecord SceneCalibration(const SceneSpec& scene, int t,
                                   const std::string& sample_id);

// Labels every voxel of the ego-frame grid at timestep t by the object
// containing its center (boxes over ground, smaller class among boxes;
// ground fills z < ground.z); 17 elsewhere.
LabelGrid AnalyticGroundTruth(const SceneSpec& scene, int t, const GridSpec& spec);

// "t000", "t001", ...
std::string SyntheticSampleId(int t);

// Writes a pipeline input tree under `dir`/input (manifest.txt, per-sample
// calibration and maps) and analytic ground truth under `dir`/gt.
void WriteSyntheticDataset(const SceneSpec& scene, const GridSpec& spec,
                           const std::filesystem::path& dir, int workers = 1);

}  // namespace occlabel

#endif  // OCCLABEL_SYNTH_H_
