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

#ifndef OCCLABEL_POINT_CLOUD_H_
#define OCCLABEL_POINT_CLOUD_H_

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "occlabel/geometry.h"
#include "occlabel/label_space.h"

namespace occlabel {

// Points with a class label and the relative sample offset they came from
// (0 = current sample, -d = d samples in the past). Structure of arrays;
// the three vectors always have equal length.
struct SemanticPointCloud {
  std::vector<Vec3> points;
  std::vector<uint8_t> labels;
  std::vector<int32_t> stamps;

  size_t size() const { return points.size(); }
  bool empty() const { return points.empty(); }
  void Reserve(size_t n);
  void Append(const Vec3& p, uint8_t label, int32_t stamp = 0) {
    points.push_back(p);
    labels.push_back(label);
    stamps.push_back(stamp);
  }
  void AppendCloud(const SemanticPointCloud& other);

  // Throws InvariantError on length mismatch, labels >= 18 or the empty
  // label.
  void Validate() const;
};

// One camera's maps for one timestep. Maps are row-major H x W, indexed
// v * width + u.
struct CameraSample {
  std::string camera_id;
  Intrinsics intrinsics;
  RigidTransform camera_to_global;
  std::vector<float> depth;       // z-depth in meters; <= 0 means no return
  std::vector<uint8_t> semantics; // class index per pixel
};

// One point per stride-grid pixel with depth > 0 and label != empty,
// positioned by UnprojectPixel in the pose's target frame; stamps are 0.
// Throws ShapeError when map sizes disagree with the intrinsics and
// InvariantError for stride < 1 or labels outside the label space.
SemanticPointCloud LiftCamera(const CameraSample& sample, int stride = 1);

// Concatenation in input order.
SemanticPointCloud MergeCameras(std::span<const SemanticPointCloud> clouds);

// Statistical outlier removal: drops points whose mean distance to their
// k nearest neighbours exceeds mean + std_ratio * stddev over the cloud.
// Survivors keep their input order. Clouds with size() <= k are returned
// unchanged.
SemanticPointCloud RemoveOutliers(const SemanticPointCloud& cloud, size_t k,
                                  double std_ratio, int workers = 1);

// Applies `t` to every point; labels and stamps are copied.
SemanticPointCloud TransformCloud(const SemanticPointCloud& cloud,
                                  const RigidTransform& t);

}  // namespace occlabel

#endif  // OCCLABEL_POINT_CLOUD_H_
