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

#ifndef OCCLABEL_PIPELINE_H_
#define OCCLABEL_PIPELINE_H_

// Label generation for one sequence:
//
//   lift every camera -> merge -> outlier removal        (global frame)
//   -> densify with the static part of up to `history` previous samples
//   -> transform to ego -> threshold + majority voxelization
//
// Configuration document (JSON, every key optional, unknown keys rejected):
//
//   {"grid": {"min": [..], "max": [..], "voxel_size": 0.4},
//    "threshold": 10, "history": 13, "outlier_k": 20,
//    "outlier_std_ratio": 2.0, "dynamic_classes": ["car", 3, ...],
//    "pixel_stride": 1, "ray_stride": 4, "lambda": 0.1,
//    "ignore_empty": true, "workers": 1}

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "occlabel/dataset.h"
#include "occlabel/grid.h"
#include "occlabel/label_space.h"
#include "occlabel/point_cloud.h"
#include "occlabel/temporal.h"
#include "occlabel/visibility.h"
#include "occlabel/voxelizer.h"

namespace occlabel {

struct PipelineConfig {
  GridSpec grid;
  uint32_t threshold = 10;
  size_t history = kMaxHistory;
  size_t outlier_k = 20;  // 0 disables outlier removal
  double outlier_std_ratio = 2.0;
  ClassSet dynamic_classes = LabelSpace::DefaultDynamicSet();
  int pixel_stride = 1;
  int ray_stride = 4;
  double lambda = 0.1;
  bool ignore_empty = true;
  int workers = 1;

  // Throws InvariantError naming the offending field.
  void Validate() const;
  LabelSpace label_space() const { return LabelSpace(dynamic_classes); }
};

PipelineConfig ParseConfig(std::string_view text);
PipelineConfig ReadConfig(const std::filesystem::path& path);
std::string SerializeConfig(const PipelineConfig& config);

// One sample after lifting and outlier removal, in the global frame.
struct LiftedSample {
  std::string sample_id;
  SemanticPointCloud cloud;
  RigidTransform global_to_ego;
  size_t points_before = 0;  // before outlier removal
};

LiftedSample LiftSample(const SampleInputs& inputs, const PipelineConfig& config);

// Camera rig of a sample expressed in its ego frame.
std::vector<RigCamera> EgoRig(const SampleInputs& inputs);

struct GeneratedSample {
  std::string sample_id;
  LabelGrid grid;
  size_t points_before = 0;
  size_t points_after = 0;
  size_t densified_points = 0;
  size_t occupied_voxels = 0;
};

// Streams a sequence in manifest order, keeping the last `history` lifted
// samples. Feed samples with Next(); outputs do not depend on `workers`.
class SequenceLabeler {
 public:
  explicit SequenceLabeler(PipelineConfig config);

  GeneratedSample Next(const SampleInputs& inputs);
  // As Next() for an already lifted sample.
  GeneratedSample NextLifted(LiftedSample lifted);

  const PipelineConfig& config() const { return config_; }

 private:
  PipelineConfig config_;
  LabelSpace space_;
  SequenceContext context_;
};

// Ego-frame histogram of `current` plus the static points of history
// entries 1..h for h = 0..history.size(), one call per step: step(h, hist)
// sees the histogram with h history entries added.
template <typename Fn>
void ForEachHistoryLength(const LiftedSample& current,
                          std::span<const SemanticPointCloud> history,
                          const GridSpec& spec, const LabelSpace& space, int workers,
                          Fn&& step) {
  VoxelHistogram hist(spec);
  hist.Add(TransformCloud(current.cloud, current.global_to_ego), workers);
  step(size_t{0}, hist);
  for (size_t h = 0; h < history.size(); ++h) {
    hist.Add(TransformCloud(FilterDynamic(history[h], space), current.global_to_ego),
             workers);
    step(h + 1, hist);
  }
}

std::string SummaryCsvHeader();
std::string SummaryCsvRow(const GeneratedSample& sample);

}  // namespace occlabel

#endif  // OCCLABEL_PIPELINE_H_
