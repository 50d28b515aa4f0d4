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

#ifndef OCCLABEL_METRICS_H_
#define OCCLABEL_METRICS_H_

#include <array>
#include <cstdint>
#include <string>
#include <utility>

#include "occlabel/grid.h"
#include "occlabel/label_space.h"

namespace occlabel {

// Confusion counts. Per-class counts use exact label equality (class 17
// included); binary counts treat any label != 17 as occupied.
struct ConfusionAccumulator {
  std::array<uint64_t, kNumClasses> tp{};
  std::array<uint64_t, kNumClasses> fp{};
  std::array<uint64_t, kNumClasses> fn{};
  uint64_t occ_tp = 0;
  uint64_t occ_fp = 0;
  uint64_t occ_fn = 0;
  uint64_t evaluated = 0;

  ConfusionAccumulator& operator+=(const ConfusionAccumulator& other);
  bool operator==(const ConfusionAccumulator&) const = default;
};

// How classes whose TP + FP + FN is zero enter the mIoU.
enum class MiouMode {
  kExcludeAbsent,  // skipped from the mean (default)
  kStrict,         // count as 0 over a fixed 17-class denominator
};

struct EvalReport {
  double iou = 0.0;   // binary occupancy IoU, percent
  double miou = 0.0;  // mean over classes 0..16, percent
  double miou_table = 0.0;  // same rule over the 15 table classes
  std::array<double, kNumClasses> per_class_iou{};  // percent; 0 if absent
  std::array<bool, kNumClasses> class_present{};    // denominator > 0
  uint64_t evaluated_voxel_count = 0;
};

// Adds the voxels of (pred, gt) where `mask` is set (all voxels when mask
// is null). Throws ShapeError when dims disagree.
void Accumulate(const LabelGrid& pred, const LabelGrid& gt, const CameraMask* mask,
                ConfusionAccumulator& acc);

EvalReport Finalize(const ConfusionAccumulator& acc,
                    MiouMode mode = MiouMode::kExcludeAbsent);

EvalReport Evaluate(const LabelGrid& pred, const LabelGrid& gt,
                    const CameraMask* mask = nullptr,
                    MiouMode mode = MiouMode::kExcludeAbsent);

// {with mask, without mask}.
std::pair<EvalReport, EvalReport> CompareMaskedUnmasked(
    const LabelGrid& pred, const LabelGrid& gt, const CameraMask& mask,
    MiouMode mode = MiouMode::kExcludeAbsent);

// CSV with two-decimal percentages:
//   sample_id,iou,miou,<18 class columns>,evaluated_voxel_count
std::string EvalCsvHeader(const LabelSpace& space = LabelSpace());
std::string EvalCsvRow(const std::string& sample_id, const EvalReport& report);

// Structured-text form of a report (JSON object).
std::string EvalReportJson(const std::string& sample_id, const EvalReport& report,
                           const LabelSpace& space = LabelSpace());

// Two-decimal fixed formatting used by every report.
std::string FormatPercent(double value);

}  // namespace occlabel

#endif  // OCCLABEL_METRICS_H_
