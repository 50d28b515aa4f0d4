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

#include "occlabel/calibration.h"

#include "json_util.h"
#include "occlabel/error.h"

namespace occlabel {
namespace {

using internal::CheckedTransform;
using internal::json;
using internal::MatrixJson;
using internal::MatrixOf;
using internal::Required;
using internal::TransformJson;

void ValidatePinhole(const Mat3& k, const std::string& camera_id) {
  const std::string who = "camera " + camera_id + ": ";
  if (k(2, 0) != 0.0 || k(2, 1) != 0.0 || k(2, 2) != 1.0) {
    throw InvariantError(who + "K bottom row must be (0, 0, 1)");
  }
  if (k(0, 1) != 0.0 || k(1, 0) != 0.0) {
    throw InvariantError(who + "K must have zero skew");
  }
  if (!(k(0, 0) > 0.0) || !(k(1, 1) > 0.0)) {
    throw InvariantError(who + "K focal lengths must be positive");
  }
  if (!k.allFinite()) throw InvariantError(who + "K has non-finite entries");
}

}  // namespace

CalibrationRecord ParseCalibration(std::string_view text) {
  const json doc = internal::ParseJson(text, "calibration");
  if (!doc.is_object()) throw FormatError("calibration: top level must be an object");

  CalibrationRecord record;
  const json& sample_id = Required(doc, "sample_id", "calibration");
  if (!sample_id.is_string()) throw FormatError("calibration: sample_id must be a string");
  record.sample_id = sample_id.get<std::string>();
  const std::string where = "calibration " + record.sample_id;

  const json& cameras = Required(doc, "cameras", where);
  if (!cameras.is_array()) throw FormatError(where + ": cameras must be an array");
  const json& to_ego = Required(doc, "T_global_to_ego", where);

  for (const json& cam : cameras) {
    if (!cam.is_object()) throw FormatError(where + ": camera entry must be an object");
    const json& id = Required(cam, "camera_id", where);
    if (!id.is_string()) throw FormatError(where + ": camera_id must be a string");
    CameraCalibration cc;
    cc.camera_id = id.get<std::string>();
    const std::string cam_where = where + " camera " + cc.camera_id;
    cc.k = MatrixOf(Required(cam, "K", cam_where), cam_where + " K");
    const json& pose = Required(cam, "T_camera_to_global", cam_where);
    ValidatePinhole(cc.k, cc.camera_id);
    cc.camera_to_global =
        CheckedTransform(pose, "camera " + cc.camera_id + " T_camera_to_global");
    record.cameras.push_back(std::move(cc));
  }
  record.global_to_ego = CheckedTransform(to_ego, "T_global_to_ego");
  return record;
}

CalibrationRecord ReadCalibration(const std::filesystem::path& path) {
  return ParseCalibration(internal::ReadTextFile(path, "calibration"));
}

std::string SerializeCalibration(const CalibrationRecord& record) {
  json doc;
  doc["sample_id"] = record.sample_id;
  doc["cameras"] = json::array();
  for (const CameraCalibration& cam : record.cameras) {
    doc["cameras"].push_back({{"camera_id", cam.camera_id},
                              {"K", MatrixJson(cam.k)},
                              {"T_camera_to_global", TransformJson(cam.camera_to_global)}});
  }
  doc["T_global_to_ego"] = TransformJson(record.global_to_ego);
  return doc.dump(2) + "\n";
}

void WriteCalibration(const std::filesystem::path& path,
                      const CalibrationRecord& record) {
  internal::WriteTextFile(path, SerializeCalibration(record));
}

}  // namespace occlabel
