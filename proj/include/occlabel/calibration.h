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

#ifndef OCCLABEL_CALIBRATION_H_
#define OCCLABEL_CALIBRATION_H_

// Per-sample calibration document (JSON):
//
//   {
//     "sample_id": "scene-0001_t000",
//     "cameras": [
//       {"camera_id": "CAM_FRONT",
//        "K": [9 numbers, row-major 3x3],
//        "T_camera_to_global": [16 numbers, row-major 4x4]},
//       ...
//     ],
//     "T_global_to_ego": [16 numbers, row-major 4x4]
//   }

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "occlabel/geometry.h"

namespace occlabel {

struct CameraCalibration {
  std::string camera_id;
  Mat3 k = Mat3::Identity();
  RigidTransform camera_to_global;
};

struct CalibrationRecord {
  std::string sample_id;
  std::vector<CameraCalibration> cameras;
  RigidTransform global_to_ego;
};

// Parses and validates. Throws FormatError on malformed/missing fields and
// InvariantError (message names the camera_id or transform) when K or a
// transform violates its invariants.
CalibrationRecord ParseCalibration(std::string_view text);
CalibrationRecord ReadCalibration(const std::filesystem::path& path);

std::string SerializeCalibration(const CalibrationRecord& record);
void WriteCalibration(const std::filesystem::path& path,
                      const CalibrationRecord& record);

}  // namespace occlabel

#endif  // OCCLABEL_CALIBRATION_H_
