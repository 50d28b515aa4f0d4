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

#ifndef OCCLABEL_DATASET_H_
#define OCCLABEL_DATASET_H_

// On-disk layout of a pipeline input directory:
//
//   <root>/manifest.txt                  sample ids, one per line, in order
//   <root>/<id>/calib.json               CalibrationRecord
//   <root>/<id>/<camera_id>_depth.vxt    f32 [H, W] z-depth
//   <root>/<id>/<camera_id>_sem.vxt      u8  [H, W] class per pixel

#include <filesystem>
#include <string>
#include <vector>

#include "occlabel/calibration.h"
#include "occlabel/point_cloud.h"

namespace occlabel {

struct SampleInputs {
  CalibrationRecord calibration;
  std::vector<CameraSample> cameras;  // calibration order
};

// Blank lines are ignored; surrounding whitespace is trimmed. Throws
// IoError when missing and FormatError on duplicate ids.
std::vector<std::string> ReadManifest(const std::filesystem::path& path);
void WriteManifest(const std::filesystem::path& path,
                   const std::vector<std::string>& sample_ids);

// Throws IoError for missing files, ShapeError when the depth and
// semantic maps disagree, and rethrows calibration errors prefixed with the
// sample id.
SampleInputs ReadSampleInputs(const std::filesystem::path& root,
                              const std::string& sample_id);
void WriteSampleInputs(const std::filesystem::path& root, const SampleInputs& inputs);

}  // namespace occlabel

#endif  // OCCLABEL_DATASET_H_
