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

#include "occlabel/metrics.h"

#include <cstdio>

#include "json.hpp"
#include "occlabel/error.h"

namespace occlabel {
namespace {

double Percent(uint64_t tp, uint64_t fp, uint64_t fn) {
  const uint64_t denom = tp + fp + fn;
  return denom == 0 ? 0.0 : 100.0 * static_cast<double>(tp) / static_cast<double>(denom);
}

double MeanOver(const EvalReport& r, const ClassSet& classes, MiouMode mode) {
  double sum = 0.0;
  int count = 0;
  for (int c = 0; c < kNumClasses; ++c) {
    if (!classes.test(c)) continue;
    if (mode == MiouMode::kExcludeAbsent && !r.class_present[c]) continue;
    sum += r.per_class_iou[c];
    ++count;
  }
  return count == 0 ? 0.0 : sum / count;
}

}  // namespace

ConfusionAccumulator& ConfusionAccumulator::operator+=(const ConfusionAccumulator& o) {
  for (int c = 0; c < kNumClasses; ++c) {
    tp[c] += o.tp[c];
    fp[c] += o.fp[c];
    fn[c] += o.fn[c];
  }
  occ_tp += o.occ_tp;
  occ_fp += o.occ_fp;
  occ_fn += o.occ_fn;
  evaluated += o.evaluated;
  return *this;
}

void Accumulate(const LabelGrid& pred, const LabelGrid& gt, const CameraMask* mask,
                ConfusionAccumulator& acc) {
  if (!(pred.spec.dims() == gt.spec.dims()) ||
      pred.labels.size() != gt.labels.size()) {
    throw ShapeError("prediction and ground truth dims differ");
  }
  if (mask != nullptr && (!(mask->spec.dims() == gt.spec.dims()) ||
                          mask->visible.size() != gt.labels.size())) {
    throw ShapeError("camera mask dims differ from the grids");
  }
  for (size_t i = 0; i < gt.labels.size(); ++i) {
    if (mask != nullptr && !mask->visible[i]) continue;
    const uint8_t p = pred.labels[i];
    const uint8_t g = gt.labels[i];
    if (p > kEmptyClass || g > kEmptyClass) {
      throw InvariantError("label grid value > 17 at voxel " + std::to_string(i));
    }
    ++acc.evaluated;
    if (p == g) {
      ++acc.tp[g];
    } else {
      ++acc.fp[p];
      ++acc.fn[g];
    }
    const bool po = p != kEmptyClass;
    const bool go = g != kEmptyClass;
    if (po && go) ++acc.occ_tp;
    else if (po) ++acc.occ_fp;
    else if (go) ++acc.occ_fn;
  }
}

EvalReport Finalize(const ConfusionAccumulator& acc, MiouMode mode) {
  EvalReport r;
  r.evaluated_voxel_count = acc.evaluated;
  r.iou = Percent(acc.occ_tp, acc.occ_fp, acc.occ_fn);
  for (int c = 0; c < kNumClasses; ++c) {
    r.class_present[c] = acc.tp[c] + acc.fp[c] + acc.fn[c] > 0;
    r.per_class_iou[c] = Percent(acc.tp[c], acc.fp[c], acc.fn[c]);
  }
  ClassSet semantic;
  for (int c = 0; c < kEmptyClass; ++c) semantic.set(c);
  r.miou = MeanOver(r, semantic, mode);
  r.miou_table = MeanOver(r, TableClassSet(), mode);
  return r;
}

EvalReport Evaluate(const LabelGrid& pred, const LabelGrid& gt, const CameraMask* mask,
                    MiouMode mode) {
  ConfusionAccumulator acc;
  Accumulate(pred, gt, mask, acc);
  return Finalize(acc, mode);
}

std::pair<EvalReport, EvalReport> CompareMaskedUnmasked(const LabelGrid& pred,
                                                        const LabelGrid& gt,
                                                        const CameraMask& mask,
                                                        MiouMode mode) {
  return {Evaluate(pred, gt, &mask, mode), Evaluate(pred, gt, nullptr, mode)};
}

std::string FormatPercent(double value) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", value);
  return buf;
}

std::string EvalCsvHeader(const LabelSpace& space) {
  std::string h = "sample_id,iou,miou";
  for (const auto& name : space.names()) h += ",iou_" + name;
  return h + ",evaluated_voxel_count";
}

std::string EvalCsvRow(const std::string& sample_id, const EvalReport& r) {
  std::string row = sample_id + "," + FormatPercent(r.iou) + "," + FormatPercent(r.miou);
  for (double v : r.per_class_iou) row += "," + FormatPercent(v);
  return row + "," + std::to_string(r.evaluated_voxel_count);
}

std::string EvalReportJson(const std::string& sample_id, const EvalReport& r,
                           const LabelSpace& space) {
  nlohmann::ordered_json doc;
  doc["sample_id"] = sample_id;
  doc["iou"] = std::stod(FormatPercent(r.iou));
  doc["miou"] = std::stod(FormatPercent(r.miou));
  doc["miou_table_classes"] = std::stod(FormatPercent(r.miou_table));
  nlohmann::ordered_json classes = nlohmann::ordered_json::object();
  for (int c = 0; c < kNumClasses; ++c) {
    classes[space.name(c)] = {{"iou", std::stod(FormatPercent(r.per_class_iou[c]))},
                              {"present", r.class_present[c]}};
  }
  doc["per_class"] = classes;
  doc["evaluated_voxel_count"] = r.evaluated_voxel_count;
  return doc.dump(2);
}

}  // namespace occlabel
