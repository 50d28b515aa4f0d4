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

#include "occlabel/commands.h"

#include <algorithm>
#include <set>
#include <sstream>

#include "json_util.h"
#include "occlabel/dataset.h"
#include "occlabel/error.h"
#include "occlabel/visibility.h"

namespace occlabel {
namespace {

namespace fs = std::filesystem;

std::set<std::string> ListSamples(const fs::path& dir) {
  if (!fs::is_directory(dir)) throw IoError("not a directory: " + dir.string());
  std::set<std::string> ids;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".vxt") {
      ids.insert(entry.path().stem().string());
    }
  }
  return ids;
}

std::string Describe(const std::set<std::string>& ids) {
  std::string out;
  size_t n = 0;
  for (const auto& id : ids) {
    if (n++ == 5) return out + ", ...";
    out += (out.empty() ? "" : ", ") + id;
  }
  return out;
}

void CheckSameSamples(const std::set<std::string>& a, const std::string& a_name,
                      const std::set<std::string>& b, const std::string& b_name) {
  std::set<std::string> only_a;
  std::set<std::string> only_b;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(),
                      std::inserter(only_a, only_a.end()));
  std::set_difference(b.begin(), b.end(), a.begin(), a.end(),
                      std::inserter(only_b, only_b.end()));
  if (!only_a.empty() || !only_b.empty()) {
    throw InvariantError("sample mismatch: only in " + a_name + ": [" + Describe(only_a) +
                         "], only in " + b_name + ": [" + Describe(only_b) + "]");
  }
}

LabelGrid ReadGroundTruth(const fs::path& gt_dir, const std::string& id,
                          const GridSpec& spec) {
  const fs::path path = gt_dir / (id + ".vxt");
  if (!fs::exists(path)) throw IoError("sample " + id + ": missing ground truth " + path.string());
  LabelGrid gt = ReadLabelGrid(path);
  if (!(gt.spec == spec)) {
    throw ShapeError("sample " + id + ": ground-truth grid spec differs from the config grid");
  }
  return gt;
}

std::optional<CameraMask> ReadOptionalMask(const std::optional<fs::path>& mask_dir,
                                           const std::string& id) {
  if (!mask_dir) return std::nullopt;
  const fs::path path = *mask_dir / (id + ".vxt");
  if (!fs::exists(path)) throw IoError("sample " + id + ": missing mask " + path.string());
  return ReadCameraMask(path);
}

void WriteLines(const fs::path& path, const std::vector<std::string>& lines) {
  std::string text;
  for (const auto& l : lines) text += l + "\n";
  internal::WriteTextFile(path, text);
}

}  // namespace

size_t RunGenerate(const PipelineConfig& config, const fs::path& input_dir,
                   const fs::path& output_dir) {
  config.Validate();
  const std::vector<std::string> ids = ReadManifest(input_dir / "manifest.txt");
  fs::create_directories(output_dir);
  SequenceLabeler labeler(config);
  std::vector<std::string> summary = {SummaryCsvHeader()};
  for (const std::string& id : ids) {
    const SampleInputs inputs = ReadSampleInputs(input_dir, id);
    if (inputs.calibration.sample_id != id) {
      throw InvariantError("sample " + id + ": calibration carries sample_id '" +
                           inputs.calibration.sample_id + "'");
    }
    const GeneratedSample out = labeler.Next(inputs);
    WriteLabelGrid(output_dir / (id + ".vxt"), out.grid);
    summary.push_back(SummaryCsvRow(out));
  }
  WriteLines(output_dir / "summary.csv", summary);
  return ids.size();
}

EvalResult RunEval(const fs::path& pred_dir, const fs::path& gt_dir,
                   const std::optional<fs::path>& mask_dir, const fs::path& report_path,
                   MiouMode mode) {
  const std::set<std::string> pred_ids = ListSamples(pred_dir);
  const std::set<std::string> gt_ids = ListSamples(gt_dir);
  CheckSameSamples(pred_ids, "predictions", gt_ids, "ground truth");
  if (mask_dir) CheckSameSamples(ListSamples(*mask_dir), "masks", gt_ids, "ground truth");

  EvalResult result;
  ConfusionAccumulator total;
  std::vector<std::string> lines = {EvalCsvHeader()};
  for (const std::string& id : gt_ids) {
    const LabelGrid pred = ReadLabelGrid(pred_dir / (id + ".vxt"));
    const LabelGrid gt = ReadLabelGrid(gt_dir / (id + ".vxt"));
    const std::optional<CameraMask> mask = ReadOptionalMask(mask_dir, id);
    ConfusionAccumulator acc;
    try {
      Accumulate(pred, gt, mask ? &*mask : nullptr, acc);
    } catch (const ShapeError& e) {
      throw ShapeError("sample " + id + ": " + e.what());
    }
    total += acc;
    const EvalReport report = Finalize(acc, mode);
    lines.push_back(EvalCsvRow(id, report));
    result.samples.emplace_back(id, report);
  }
  result.aggregate = Finalize(total, mode);
  lines.push_back(EvalCsvRow("ALL", result.aggregate));
  WriteLines(report_path, lines);
  return result;
}

size_t RunMask(const PipelineConfig& config, const fs::path& input_dir,
               const fs::path& gt_dir, const fs::path& output_dir) {
  config.Validate();
  const std::vector<std::string> ids = ReadManifest(input_dir / "manifest.txt");
  fs::create_directories(output_dir);
  for (const std::string& id : ids) {
    const SampleInputs inputs = ReadSampleInputs(input_dir, id);
    const LabelGrid gt = ReadGroundTruth(gt_dir, id, config.grid);
    const std::vector<RigCamera> rig = EgoRig(inputs);
    WriteCameraMask(output_dir / (id + ".vxt"),
                    ComputeMask(gt, rig, config.ray_stride, config.workers));
  }
  return ids.size();
}

std::vector<ThresholdRow> RunSweepThreshold(const PipelineConfig& config,
                                            const fs::path& input_dir,
                                            const fs::path& gt_dir,
                                            const std::optional<fs::path>& mask_dir,
                                            const fs::path& csv_path, uint32_t first,
                                            uint32_t last) {
  config.Validate();
  if (first < 1 || last < first) throw InvariantError("threshold range must satisfy 1 <= first <= last");
  const std::vector<std::string> ids = ReadManifest(input_dir / "manifest.txt");
  const LabelSpace space = config.label_space();
  const size_t steps = last - first + 1;
  std::vector<ConfusionAccumulator> acc(steps);
  std::vector<size_t> occupied(steps, 0);
  SequenceContext context(config.history);
  for (const std::string& id : ids) {
    LiftedSample lifted = LiftSample(ReadSampleInputs(input_dir, id), config);
    const LabelGrid gt = ReadGroundTruth(gt_dir, id, config.grid);
    const std::optional<CameraMask> mask = ReadOptionalMask(mask_dir, id);
    VoxelHistogram hist(config.grid);
    hist.Add(context.DensifyCurrent(lifted.cloud, lifted.global_to_ego, space, config.history),
             config.workers);
    for (size_t s = 0; s < steps; ++s) {
      const LabelGrid pred = hist.Label(first + static_cast<uint32_t>(s));
      Accumulate(pred, gt, mask ? &*mask : nullptr, acc[s]);
      occupied[s] += OccupiedCount(pred);
    }
    context.Push(id, std::move(lifted.cloud));
  }
  std::vector<ThresholdRow> rows;
  std::vector<std::string> lines = {"threshold,miou,iou,occupied_count"};
  for (size_t s = 0; s < steps; ++s) {
    const EvalReport r = Finalize(acc[s]);
    rows.push_back({first + static_cast<uint32_t>(s), r.miou, r.iou, occupied[s]});
    lines.push_back(std::to_string(rows.back().threshold) + "," + FormatPercent(r.miou) +
                    "," + FormatPercent(r.iou) + "," + std::to_string(occupied[s]));
  }
  WriteLines(csv_path, lines);
  return rows;
}

std::vector<TemporalRow> RunSweepTemporal(const PipelineConfig& config,
                                          const fs::path& input_dir,
                                          const fs::path& gt_dir,
                                          const std::optional<fs::path>& mask_dir,
                                          const fs::path& csv_path) {
  config.Validate();
  const std::vector<std::string> ids = ReadManifest(input_dir / "manifest.txt");
  const LabelSpace space = config.label_space();
  const size_t steps = config.history + 1;
  std::vector<ConfusionAccumulator> acc(steps);
  std::vector<size_t> occupied(steps, 0);
  std::vector<size_t> points(steps, 0);
  SequenceContext context(config.history);
  for (const std::string& id : ids) {
    LiftedSample lifted = LiftSample(ReadSampleInputs(input_dir, id), config);
    const LabelGrid gt = ReadGroundTruth(gt_dir, id, config.grid);
    const std::optional<CameraMask> mask = ReadOptionalMask(mask_dir, id);
    const std::vector<SemanticPointCloud> history = context.History(config.history);
    // Samples early in the sequence have fewer predecessors; longer history
    // settings then see the same cloud as the longest available one.
    LabelGrid last;
    size_t last_points = 0;
    ForEachHistoryLength(lifted, history, config.grid, space, config.workers,
                         [&](size_t h, const VoxelHistogram& hist) {
                           last = hist.Label(config.threshold);
                           last_points = hist.binned_points() + hist.dropped_points();
                           Accumulate(last, gt, mask ? &*mask : nullptr, acc[h]);
                           occupied[h] += OccupiedCount(last);
                           points[h] += last_points;
                         });
    for (size_t h = history.size() + 1; h < steps; ++h) {
      Accumulate(last, gt, mask ? &*mask : nullptr, acc[h]);
      occupied[h] += OccupiedCount(last);
      points[h] += last_points;
    }
    context.Push(id, std::move(lifted.cloud));
  }
  std::vector<TemporalRow> rows;
  std::vector<std::string> lines = {"history,miou,iou,densified_points,occupied_count"};
  for (size_t h = 0; h < steps; ++h) {
    const EvalReport r = Finalize(acc[h]);
    rows.push_back({h, r.miou, r.iou, points[h], occupied[h]});
    lines.push_back(std::to_string(h) + "," + FormatPercent(r.miou) + "," +
                    FormatPercent(r.iou) + "," + std::to_string(points[h]) + "," +
                    std::to_string(occupied[h]));
  }
  WriteLines(csv_path, lines);
  return rows;
}

std::string RunLossCheck(const fs::path& logits_path, const fs::path& target_path,
                         const LossOptions& options, bool check_gradient, double h) {
  const LogitsGrid logits = LogitsFromTensor(ReadTensor(logits_path));
  const Tensor target = ReadTensor(target_path);
  if (target.dtype() != DType::kU8 || target.ndim() != 3) {
    throw ShapeError("target must be a u8 tensor of shape [Nx, Ny, Nz]");
  }
  for (int a = 0; a < 3; ++a) {
    if (static_cast<int>(target.dims()[a]) != logits.dims[a]) {
      throw ShapeError("target dims do not match the logits' spatial dims");
    }
  }
  const auto& labels = target.values<uint8_t>();
  const LossBreakdown loss = PseudoLoss(logits, labels, options);
  nlohmann::ordered_json doc;
  doc["total"] = loss.total;
  doc["ce"] = loss.ce;
  doc["geom_scal"] = loss.geom_scal;
  doc["sem_scal"] = loss.sem_scal;
  doc["lovasz"] = loss.lovasz;
  doc["lambda"] = loss.lambda;
  doc["ignore_empty"] = options.ignore_empty;
  if (check_gradient) {
    const GradientCheck check = CheckGradient(logits, labels, options, h);
    doc["grad_check"] = {{"h", h},
                         {"max_abs_error", check.max_abs_error},
                         {"max_rel_error", check.max_rel_error}};
  }
  return doc.dump(2);
}

void RunSynth(const SceneSpec& scene, const GridSpec& spec, const fs::path& output_dir,
              int workers) {
  WriteSyntheticDataset(scene, spec, output_dir, workers);
}

}  // namespace occlabel
