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

#include "occlabel/grid.h"

#include <cmath>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "occlabel/error.h"
#include "occlabel/tensor_io.h"

namespace occlabel {
namespace {

using json = nlohmann::json;

std::vector<uint32_t> TensorDims(const GridSpec& spec) {
  return {static_cast<uint32_t>(spec.nx()), static_cast<uint32_t>(spec.ny()),
          static_cast<uint32_t>(spec.nz())};
}

GridSpec SpecFor(const std::filesystem::path& path, const Tensor& tensor) {
  const std::filesystem::path sidecar = SidecarPath(path);
  GridSpec spec;
  if (std::filesystem::exists(sidecar)) {
    std::ifstream in(sidecar);
    std::stringstream ss;
    ss << in.rdbuf();
    spec = GridSpec::FromJson(ss.str());
  }
  if (tensor.dims() != TensorDims(spec)) {
    throw FormatError(path.string() + ": tensor dims do not match the grid spec" +
                      (std::filesystem::exists(sidecar) ? "" : " (no sidecar)"));
  }
  return spec;
}

void WriteSidecar(const std::filesystem::path& path, const GridSpec& spec) {
  std::ofstream out(SidecarPath(path), std::ios::trunc);
  if (!out) throw IoError("cannot open for writing: " + SidecarPath(path).string());
  out << spec.ToJson();
}

}  // namespace

GridSpec::GridSpec()
    : GridSpec(Vec3(-40.0, -40.0, -1.0), Vec3(40.0, 40.0, 5.4), 0.4,
               {200, 200, 16}) {}

GridSpec::GridSpec(const Vec3& min, const Vec3& max, double voxel_size,
                   const std::array<int, 3>& dims)
    : min_(min), max_(max), voxel_size_(voxel_size), dims_(dims) {}

GridSpec GridSpec::Create(const Vec3& min, const Vec3& max, double voxel_size) {
  if (!(voxel_size > 0.0) || !std::isfinite(voxel_size)) {
    throw InvariantError("voxel_size must be positive");
  }
  std::array<int, 3> dims{};
  for (int a = 0; a < 3; ++a) {
    const double extent = max[a] - min[a];
    if (!(extent > 0.0) || !std::isfinite(extent)) {
      throw InvariantError("grid max must exceed min on every axis");
    }
    const double cells = std::round(extent / voxel_size);
    if (std::abs(cells * voxel_size - extent) > 1e-9 || cells < 1.0 ||
        cells > 1 << 20) {
      throw InvariantError("grid extent is not a whole multiple of voxel_size");
    }
    dims[a] = static_cast<int>(cells);
  }
  return GridSpec(min, max, voxel_size, dims);
}

VoxelIndex GridSpec::Unlinear(size_t i) const {
  VoxelIndex v;
  v.z = static_cast<int>(i % dims_[2]);
  i /= dims_[2];
  v.y = static_cast<int>(i % dims_[1]);
  v.x = static_cast<int>(i / dims_[1]);
  return v;
}

std::optional<VoxelIndex> GridSpec::VoxelOf(const Vec3& p) const {
  std::array<int, 3> idx{};
  for (int a = 0; a < 3; ++a) {
    const double f = std::floor((p[a] - min_[a]) / voxel_size_);
    if (!(f >= 0.0) || f >= dims_[a]) return std::nullopt;  // also rejects NaN
    idx[a] = static_cast<int>(f);
  }
  return VoxelIndex{idx[0], idx[1], idx[2]};
}

Vec3 GridSpec::VoxelCenter(int x, int y, int z) const {
  return min_ + voxel_size_ * Vec3(x + 0.5, y + 0.5, z + 0.5);
}

bool GridSpec::operator==(const GridSpec& other) const {
  return min_ == other.min_ && max_ == other.max_ &&
         voxel_size_ == other.voxel_size_ && dims_ == other.dims_;
}

std::string GridSpec::ToJson() const {
  json doc;
  doc["min"] = {min_.x(), min_.y(), min_.z()};
  doc["max"] = {max_.x(), max_.y(), max_.z()};
  doc["voxel_size"] = voxel_size_;
  doc["dims"] = {dims_[0], dims_[1], dims_[2]};
  return doc.dump(2) + "\n";
}

GridSpec GridSpec::FromJson(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
    auto vec = [&](const char* key) {
      const auto v = doc.at(key).get<std::vector<double>>();
      if (v.size() != 3) throw FormatError(std::string("grid spec: ") + key + " needs 3 numbers");
      return Vec3(v[0], v[1], v[2]);
    };
    GridSpec spec = Create(vec("min"), vec("max"), doc.at("voxel_size").get<double>());
    if (doc.contains("dims") &&
        doc["dims"].get<std::vector<int>>() !=
            std::vector<int>(spec.dims_.begin(), spec.dims_.end())) {
      throw FormatError("grid spec: dims disagree with bounds and voxel_size");
    }
    return spec;
  } catch (const json::exception& e) {
    throw FormatError(std::string("grid spec: ") + e.what());
  }
}

void LabelGrid::Validate() const {
  if (labels.size() != spec.num_voxels()) {
    throw InvariantError("label grid size does not match its spec");
  }
  for (uint8_t l : labels) {
    if (l > kEmptyClass) {
      throw InvariantError("label grid value " + std::to_string(l) + " > 17");
    }
  }
}

void CameraMask::Validate() const {
  if (visible.size() != spec.num_voxels()) {
    throw InvariantError("camera mask size does not match its spec");
  }
  for (uint8_t v : visible) {
    if (v > 1) throw InvariantError("camera mask values must be 0 or 1");
  }
}

std::filesystem::path SidecarPath(const std::filesystem::path& tensor_path) {
  std::filesystem::path p = tensor_path;
  p.replace_extension(".grid.json");
  return p;
}

void WriteLabelGrid(const std::filesystem::path& path, const LabelGrid& grid) {
  grid.Validate();
  WriteTensor(path, Tensor(TensorDims(grid.spec), grid.labels));
  WriteSidecar(path, grid.spec);
}

void WriteCameraMask(const std::filesystem::path& path, const CameraMask& mask) {
  mask.Validate();
  WriteTensor(path, Tensor(TensorDims(mask.spec), mask.visible));
  WriteSidecar(path, mask.spec);
}

LabelGrid ReadLabelGrid(const std::filesystem::path& path) {
  Tensor t = ReadTensor(path);
  LabelGrid grid{SpecFor(path, t), t.values<uint8_t>()};
  try {
    grid.Validate();
  } catch (const InvariantError& e) {
    throw InvariantError(path.string() + ": " + e.what());
  }
  return grid;
}

CameraMask ReadCameraMask(const std::filesystem::path& path) {
  Tensor t = ReadTensor(path);
  CameraMask mask{SpecFor(path, t), t.values<uint8_t>()};
  try {
    mask.Validate();
  } catch (const InvariantError& e) {
    throw InvariantError(path.string() + ": " + e.what());
  }
  return mask;
}

}  // namespace occlabel
