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

#include "occlabel/pipeline.h"

#include <cmath>
#include <set>

#include "json_util.h"
#include "occlabel/error.h"

namespace occlabel {
namespace {

using internal::json;

const std::set<std::string>& KnownKeys() {
  static const std::set<std::string> keys = {
      "grid",         "threshold",    "history",    "outlier_k",
      "outlier_std_ratio", "dynamic_classes", "pixel_stride", "ray_stride",
      "lambda",       "ignore_empty", "workers"};
  return keys;
}

template <typename T>
T Integer(const json& node, const char* key) {
  if (!node.is_number_integer()) {
    throw FormatError(std::string("config: ") + key + " must be an integer");
  }
  const long long v = node.get<long long>();
  if (v < 0) throw InvariantError(std::string("config: ") + key + " must be >= 0");
  return static_cast<T>(v);
}

double Number(const json& node, const char* key) {
  if (!node.is_number()) throw FormatError(std::string("config: ") + key + " must be a number");
  return node.get<double>();
}

}  // namespace

void PipelineConfig::Validate() const {
  if (threshold < 1) throw InvariantError("config: threshold must be >= 1");
  if (history > kMaxHistory) {
    throw InvariantError("config: history must be in 0.." + std::to_string(kMaxHistory));
  }
  if (!(outlier_std_ratio > 0.0) || !std::isfinite(outlier_std_ratio)) {
    throw InvariantError("config: outlier_std_ratio must be positive");
  }
  if (dynamic_classes.test(kEmptyClass)) {
    throw InvariantError("config: dynamic_classes must not contain the empty class");
  }
  if (pixel_stride < 1) throw InvariantError("config: pixel_stride must be >= 1");
  if (ray_stride < 1) throw InvariantError("config: ray_stride must be >= 1");
  if (!(lambda >= 0.0) || !std::isfinite(lambda)) {
    throw InvariantError("config: lambda must be finite and >= 0");
  }
  if (workers < 1) throw InvariantError("config: workers must be >= 1");
}

PipelineConfig ParseConfig(std::string_view text) {
  const json doc = internal::ParseJson(text, "config");
  if (!doc.is_object()) throw FormatError("config: top level must be an object");
  for (const auto& [key, value] : doc.items()) {
    if (!KnownKeys().contains(key)) throw FormatError("config: unknown key '" + key + "'");
  }
  PipelineConfig c;
  if (doc.contains("grid")) {
    const json& g = doc["grid"];
    if (!g.is_object()) throw FormatError("config: grid must be an object");
    for (const auto& [key, value] : g.items()) {
      if (key != "min" && key != "max" && key != "voxel_size") {
        throw FormatError("config: unknown key 'grid." + key + "'");
      }
    }
    const Vec3 min = g.contains("min") ? internal::Vec3Of(g["min"], "config grid.min")
                                       : c.grid.min();
    const Vec3 max = g.contains("max") ? internal::Vec3Of(g["max"], "config grid.max")
                                       : c.grid.max();
    const double vs = g.contains("voxel_size") ? Number(g["voxel_size"], "grid.voxel_size")
                                               : c.grid.voxel_size();
    c.grid = GridSpec::Create(min, max, vs);
  }
  if (doc.contains("threshold")) c.threshold = Integer<uint32_t>(doc["threshold"], "threshold");
  if (doc.contains("history")) c.history = Integer<size_t>(doc["history"], "history");
  if (doc.contains("outlier_k")) c.outlier_k = Integer<size_t>(doc["outlier_k"], "outlier_k");
  if (doc.contains("outlier_std_ratio")) {
    c.outlier_std_ratio = Number(doc["outlier_std_ratio"], "outlier_std_ratio");
  }
  if (doc.contains("dynamic_classes")) {
    const json& d = doc["dynamic_classes"];
    if (!d.is_array()) throw FormatError("config: dynamic_classes must be an array");
    static const LabelSpace space;
    c.dynamic_classes.reset();
    for (const json& entry : d) {
      std::optional<uint8_t> label;
      if (entry.is_string()) label = space.Lookup(entry.get<std::string>());
      if (entry.is_number_integer()) label = space.Lookup(std::to_string(entry.get<int>()));
      if (!label) throw FormatError("config: unknown class " + entry.dump());
      c.dynamic_classes.set(*label);
    }
  }
  if (doc.contains("pixel_stride")) c.pixel_stride = Integer<int>(doc["pixel_stride"], "pixel_stride");
  if (doc.contains("ray_stride")) c.ray_stride = Integer<int>(doc["ray_stride"], "ray_stride");
  if (doc.contains("lambda")) c.lambda = Number(doc["lambda"], "lambda");
  if (doc.contains("ignore_empty")) {
    if (!doc["ignore_empty"].is_boolean()) throw FormatError("config: ignore_empty must be a boolean");
    c.ignore_empty = doc["ignore_empty"].get<bool>();
  }
  if (doc.contains("workers")) c.workers = Integer<int>(doc["workers"], "workers");
  c.Validate();
  return c;
}

PipelineConfig ReadConfig(const std::filesystem::path& path) {
  return ParseConfig(internal::ReadTextFile(path, "config"));
}

std::string SerializeConfig(const PipelineConfig& c) {
  json doc;
  doc["grid"] = {{"min", {c.grid.min()[0], c.grid.min()[1], c.grid.min()[2]}},
                 {"max", {c.grid.max()[0], c.grid.max()[1], c.grid.max()[2]}},
                 {"voxel_size", c.grid.voxel_size()}};
  doc["threshold"] = c.threshold;
  doc["history"] = c.history;
  doc["outlier_k"] = c.outlier_k;
  doc["outlier_std_ratio"] = c.outlier_std_ratio;
  doc["dynamic_classes"] = json::array();
  for (int k = 0; k < kNumClasses; ++k) {
    if (c.dynamic_classes.test(k)) doc["dynamic_classes"].push_back(k);
  }
  doc["pixel_stride"] = c.pixel_stride;
  doc["ray_stride"] = c.ray_stride;
  doc["lambda"] = c.lambda;
  doc["ignore_empty"] = c.ignore_empty;
  doc["workers"] = c.workers;
  return doc.dump(2) + "\n";
}

LiftedSample LiftSample(const SampleInputs& inputs, const PipelineConfig& config) {
  LiftedSample out;
  out.sample_id = inputs.calibration.sample_id;
  out.global_to_ego = inputs.calibration.global_to_ego;
  std::vector<SemanticPointCloud> per_camera;
  for (const CameraSample& cam : inputs.cameras) {
    try {
      per_camera.push_back(LiftCamera(cam, config.pixel_stride));
    } catch (const Error& e) {
      throw InvariantError("sample " + out.sample_id + " camera " + cam.camera_id + ": " +
                           e.what());
    }
  }
  SemanticPointCloud merged = MergeCameras(per_camera);
  out.points_before = merged.size();
  out.cloud = config.outlier_k == 0
                  ? std::move(merged)
                  : RemoveOutliers(merged, config.outlier_k, config.outlier_std_ratio,
                                   config.workers);
  return out;
}

std::vector<RigCamera> EgoRig(const SampleInputs& inputs) {
  std::vector<RigCamera> rig;
  for (const CameraSample& cam : inputs.cameras) {
    rig.push_back({cam.intrinsics, inputs.calibration.global_to_ego * cam.camera_to_global});
  }
  return rig;
}

SequenceLabeler::SequenceLabeler(PipelineConfig config)
    : config_(std::move(config)),
      space_(config_.dynamic_classes),
      context_(config_.history) {
  config_.Validate();
}

GeneratedSample SequenceLabeler::Next(const SampleInputs& inputs) {
  return NextLifted(LiftSample(inputs, config_));
}

GeneratedSample SequenceLabeler::NextLifted(LiftedSample lifted) {
  GeneratedSample out;
  out.sample_id = lifted.sample_id;
  out.points_before = lifted.points_before;
  out.points_after = lifted.cloud.size();
  const SemanticPointCloud densified =
      context_.DensifyCurrent(lifted.cloud, lifted.global_to_ego, space_, config_.history);
  out.densified_points = densified.size();
  out.grid = Voxelize(densified, config_.grid, config_.threshold, config_.workers);
  out.occupied_voxels = OccupiedCount(out.grid);
  context_.Push(lifted.sample_id, std::move(lifted.cloud));
  return out;
}

std::string SummaryCsvHeader() {
  return "sample_id,points_before,points_after,densified_points,occupied_voxels";
}

std::string SummaryCsvRow(const GeneratedSample& s) {
  return s.sample_id + "," + std::to_string(s.points_before) + "," +
         std::to_string(s.points_after) + "," + std::to_string(s.densified_points) + "," +
         std::to_string(s.occupied_voxels);
}

}  // namespace occlabel
