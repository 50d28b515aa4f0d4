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

#include "occlabel/point_cloud.h"

#include <cmath>
#include <string>

#include "occlabel/error.h"
#include "occlabel/knn.h"

namespace occlabel {

void SemanticPointCloud::Reserve(size_t n) {
  points.reserve(n);
  labels.reserve(n);
  stamps.reserve(n);
}

void SemanticPointCloud::AppendCloud(const SemanticPointCloud& other) {
  points.insert(points.end(), other.points.begin(), other.points.end());
  labels.insert(labels.end(), other.labels.begin(), other.labels.end());
  stamps.insert(stamps.end(), other.stamps.begin(), other.stamps.end());
}

void SemanticPointCloud::Validate() const {
  if (labels.size() != points.size() || stamps.size() != points.size()) {
    throw InvariantError("point cloud arrays differ in length");
  }
  for (uint8_t label : labels) {
    if (label >= kNumClasses) {
      throw InvariantError("point label " + std::to_string(label) +
                           " outside the label space");
    }
    if (label == kEmptyClass) {
      throw InvariantError("point cloud contains the empty label");
    }
  }
}

SemanticPointCloud LiftCamera(const CameraSample& sample, int stride) {
  const Intrinsics& intr = sample.intrinsics;
  intr.Validate();
  if (stride < 1) throw InvariantError("pixel stride must be >= 1");
  const size_t pixels = static_cast<size_t>(intr.width) * intr.height;
  if (sample.depth.size() != pixels || sample.semantics.size() != pixels) {
    throw ShapeError("camera " + sample.camera_id + ": depth (" +
                     std::to_string(sample.depth.size()) + ") and semantic (" +
                     std::to_string(sample.semantics.size()) +
                     ") maps must both have " + std::to_string(intr.height) +
                     "x" + std::to_string(intr.width) + " pixels");
  }

  SemanticPointCloud cloud;
  cloud.Reserve(pixels / (static_cast<size_t>(stride) * stride) + 1);
  const RigidTransform& pose = sample.camera_to_global;
  for (int v = 0; v < intr.height; v += stride) {
    for (int u = 0; u < intr.width; u += stride) {
      const size_t i = static_cast<size_t>(v) * intr.width + u;
      const uint8_t label = sample.semantics[i];
      if (label > kEmptyClass) {
        throw InvariantError("camera " + sample.camera_id + ": semantic label " +
                             std::to_string(label) + " outside the label space");
      }
      const double depth = sample.depth[i];
      if (label == kEmptyClass || !(depth > 0.0) || !std::isfinite(depth)) continue;
      cloud.Append(pose.Apply(depth * PixelRay(intr, u, v)), label, 0);
    }
  }
  return cloud;
}

SemanticPointCloud MergeCameras(std::span<const SemanticPointCloud> clouds) {
  size_t total = 0;
  for (const auto& c : clouds) total += c.size();
  SemanticPointCloud merged;
  merged.Reserve(total);
  for (const auto& c : clouds) merged.AppendCloud(c);
  return merged;
}

SemanticPointCloud RemoveOutliers(const SemanticPointCloud& cloud, size_t k,
                                  double std_ratio, int workers) {
  if (k < 1) throw InvariantError("outlier neighbour count must be >= 1");
  if (!(std_ratio > 0.0)) throw InvariantError("outlier std_ratio must be > 0");
  if (cloud.size() <= k) return cloud;

  const std::vector<double> mean_dist =
      MeanNeighborDistances(cloud.points, k, workers);
  const double n = static_cast<double>(mean_dist.size());
  double mu = 0.0;
  for (double d : mean_dist) mu += d;
  mu /= n;
  double var = 0.0;
  for (double d : mean_dist) var += (d - mu) * (d - mu);
  const double sigma = std::sqrt(var / n);
  const double limit = mu + std_ratio * sigma;

  SemanticPointCloud kept;
  kept.Reserve(cloud.size());
  for (size_t i = 0; i < cloud.size(); ++i) {
    if (mean_dist[i] <= limit) {
      kept.Append(cloud.points[i], cloud.labels[i], cloud.stamps[i]);
    }
  }
  return kept;
}

SemanticPointCloud TransformCloud(const SemanticPointCloud& cloud,
                                  const RigidTransform& t) {
  SemanticPointCloud out;
  out.points.resize(cloud.size());
  for (size_t i = 0; i < cloud.size(); ++i) out.points[i] = t.Apply(cloud.points[i]);
  out.labels = cloud.labels;
  out.stamps = cloud.stamps;
  return out;
}

}  // namespace occlabel
