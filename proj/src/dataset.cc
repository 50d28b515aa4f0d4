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

#include "occlabel/dataset.h"

#include <fstream>
#include <set>

#include "occlabel/error.h"
#include "occlabel/tensor_io.h"

namespace occlabel {
namespace {

namespace fs = std::filesystem;

std::string Trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

fs::path DepthPath(const fs::path& dir, const std::string& camera_id) {
  return dir / (camera_id + "_depth.vxt");
}

fs::path SemPath(const fs::path& dir, const std::string& camera_id) {
  return dir / (camera_id + "_sem.vxt");
}

}  // namespace

std::vector<std::string> ReadManifest(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open manifest: " + path.string());
  std::vector<std::string> ids;
  std::set<std::string> seen;
  std::string line;
  while (std::getline(in, line)) {
    const std::string id = Trim(line);
    if (id.empty()) continue;
    if (!seen.insert(id).second) {
      throw FormatError(path.string() + ": duplicate sample id '" + id + "'");
    }
    ids.push_back(id);
  }
  return ids;
}

void WriteManifest(const fs::path& path, const std::vector<std::string>& sample_ids) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw IoError("cannot open for writing: " + path.string());
  for (const auto& id : sample_ids) out << id << "\n";
  if (!out) throw IoError("write failed: " + path.string());
}

SampleInputs ReadSampleInputs(const fs::path& root, const std::string& sample_id) {
  const fs::path dir = root / sample_id;
  const fs::path calib_path = dir / "calib.json";
  if (!fs::exists(calib_path)) {
    throw IoError("sample " + sample_id + ": missing " + calib_path.string());
  }
  SampleInputs inputs;
  try {
    inputs.calibration = ReadCalibration(calib_path);
  } catch (const InvariantError& e) {
    throw InvariantError("sample " + sample_id + ": " + e.what());
  } catch (const FormatError& e) {
    throw FormatError("sample " + sample_id + ": " + e.what());
  }

  for (const CameraCalibration& cam : inputs.calibration.cameras) {
    const fs::path depth_path = DepthPath(dir, cam.camera_id);
    const fs::path sem_path = SemPath(dir, cam.camera_id);
    for (const auto& p : {depth_path, sem_path}) {
      if (!fs::exists(p)) throw IoError("sample " + sample_id + ": missing " + p.string());
    }
    const Tensor depth = ReadTensor(depth_path);
    const Tensor sem = ReadTensor(sem_path);
    if (depth.ndim() != 2 || depth.dtype() != DType::kF32) {
      throw ShapeError("sample " + sample_id + " camera " + cam.camera_id +
                       ": depth map must be f32 [H, W]");
    }
    if (sem.ndim() != 2 || sem.dtype() != DType::kU8) {
      throw ShapeError("sample " + sample_id + " camera " + cam.camera_id +
                       ": semantic map must be u8 [H, W]");
    }
    if (depth.dims() != sem.dims()) {
      throw ShapeError("sample " + sample_id + " camera " + cam.camera_id +
                       ": depth and semantic maps differ in size");
    }
    CameraSample sample;
    sample.camera_id = cam.camera_id;
    sample.intrinsics = Intrinsics::FromMatrix(cam.k, static_cast<int>(depth.dims()[1]),
                                               static_cast<int>(depth.dims()[0]));
    sample.camera_to_global = cam.camera_to_global;
    sample.depth = depth.values<float>();
    sample.semantics = sem.values<uint8_t>();
    inputs.cameras.push_back(std::move(sample));
  }
  return inputs;
}

void WriteSampleInputs(const fs::path& root, const SampleInputs& inputs) {
  const fs::path dir = root / inputs.calibration.sample_id;
  fs::create_directories(dir);
  WriteCalibration(dir / "calib.json", inputs.calibration);
  for (const CameraSample& cam : inputs.cameras) {
    const std::vector<uint32_t> dims{static_cast<uint32_t>(cam.intrinsics.height),
                                     static_cast<uint32_t>(cam.intrinsics.width)};
    WriteTensor(DepthPath(dir, cam.camera_id), Tensor(dims, cam.depth));
    WriteTensor(SemPath(dir, cam.camera_id), Tensor(dims, cam.semantics));
  }
}

}  // namespace occlabel
