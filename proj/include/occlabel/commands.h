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

#ifndef OCCLABEL_COMMANDS_H_
#define OCCLABEL_COMMANDS_H_

// Batch commands behind the command-line tool. Each throws occlabel::Error
// on failure; the tool maps that to a nonzero exit status.

#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "occlabel/losses.h"
#include "occlabel/metrics.h"
#include "occlabel/pipeline.h"
#include "occlabel/synth.h"

namespace occlabel {

// Label grids <output>/<id>.vxt for every manifest entry plus
// <output>/summary.csv. Returns the number of samples written.
size_t RunGenerate(const PipelineConfig& config, const std::filesystem::path& input_dir,
                   const std::filesystem::path& output_dir);

struct EvalResult {
  std::vector<std::pair<std::string, EvalReport>> samples;  // sorted by id
  EvalReport aggregate;
};

// Pairs <pred>/<id>.vxt with <gt>/<id>.vxt (and <mask>/<id>.vxt). The id
// sets must agree exactly. Writes per-sample CSV rows and a final row
// "ALL" from the pooled confusion counts.
EvalResult RunEval(const std::filesystem::path& pred_dir,
                   const std::filesystem::path& gt_dir,
                   const std::optional<std::filesystem::path>& mask_dir,
                   const std::filesystem::path& report_path,
                   MiouMode mode = MiouMode::kExcludeAbsent);

// Camera masks of the ground-truth grids, <output>/<id>.vxt.
size_t RunMask(const PipelineConfig& config, const std::filesystem::path& input_dir,
               const std::filesystem::path& gt_dir,
               const std::filesystem::path& output_dir);

struct ThresholdRow {
  uint32_t threshold = 0;
  double miou = 0.0;
  double iou = 0.0;
  size_t occupied_count = 0;  // summed over samples
};

// Thresholds first..last on histograms built once per sample.
std::vector<ThresholdRow> RunSweepThreshold(
    const PipelineConfig& config, const std::filesystem::path& input_dir,
    const std::filesystem::path& gt_dir,
    const std::optional<std::filesystem::path>& mask_dir,
    const std::filesystem::path& csv_path, uint32_t first = 1, uint32_t last = 25);

struct TemporalRow {
  size_t history = 0;
  double miou = 0.0;
  double iou = 0.0;
  size_t densified_points = 0;  // summed over samples
  size_t occupied_count = 0;
};

// History lengths 0..config.history, each sample lifted once.
std::vector<TemporalRow> RunSweepTemporal(
    const PipelineConfig& config, const std::filesystem::path& input_dir,
    const std::filesystem::path& gt_dir,
    const std::optional<std::filesystem::path>& mask_dir,
    const std::filesystem::path& csv_path);

// Loss breakdown (and optionally the finite-difference check) as a JSON
// object.
std::string RunLossCheck(const std::filesystem::path& logits_path,
                         const std::filesystem::path& target_path,
                         const LossOptions& options, bool check_gradient,
                         double h = 1e-4);

void RunSynth(const SceneSpec& scene, const GridSpec& spec,
              const std::filesystem::path& output_dir, int workers = 1);

}  // namespace occlabel

#endif  // OCCLABEL_COMMANDS_H_
