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

#ifndef OCCLABEL_GRID_H_
#define OCCLABEL_GRID_H_

// Voxel grid geometry and the dense grids defined over it.
//
// Voxels are half-open boxes [lo, hi) per axis. Linear index of voxel
// (x, y, z) is (x * ny + y) * nz + z.

#include <array>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "occlabel/geometry.h"
#include "occlabel/label_space.h"

namespace occlabel {

struct VoxelIndex {
  int x = 0;
  int y = 0;
  int z = 0;
  bool operator==(const VoxelIndex&) const = default;
};

class GridSpec {
 public:
  // Occ3D: [-40, -40, -1] to [40, 40, 5.4] at 0.4 m, i.e. 200 x 200 x 16.
  GridSpec();

  // Throws InvariantError unless max > min and every extent is a whole
  // multiple of voxel_size (within 1e-9).
  static GridSpec Create(const Vec3& min, const Vec3& max, double voxel_size);

  const Vec3& min() const { return min_; }
  const Vec3& max() const { return max_; }
  double voxel_size() const { return voxel_size_; }
  const std::array<int, 3>& dims() const { return dims_; }
  int nx() const { return dims_[0]; }
  int ny() const { return dims_[1]; }
  int nz() const { return dims_[2]; }
  size_t num_voxels() const {
    return static_cast<size_t>(dims_[0]) * dims_[1] * dims_[2];
  }

  size_t Linear(int x, int y, int z) const {
    return (static_cast<size_t>(x) * dims_[1] + y) * dims_[2] + z;
  }
  size_t Linear(const VoxelIndex& v) const { return Linear(v.x, v.y, v.z); }
  VoxelIndex Unlinear(size_t i) const;
  bool InBounds(int x, int y, int z) const {
    return x >= 0 && y >= 0 && z >= 0 && x < dims_[0] && y < dims_[1] &&
           z < dims_[2];
  }

  // floor((p - min) / voxel_size) per axis; nullopt outside the grid
  // (including points exactly on the max faces).
  std::optional<VoxelIndex> VoxelOf(const Vec3& p) const;
  Vec3 VoxelCenter(int x, int y, int z) const;

  bool operator==(const GridSpec& other) const;

  std::string ToJson() const;
  static GridSpec FromJson(const std::string& text);

 private:
  GridSpec(const Vec3& min, const Vec3& max, double voxel_size,
           const std::array<int, 3>& dims);

  Vec3 min_;
  Vec3 max_;
  double voxel_size_;
  std::array<int, 3> dims_;
};

// Dense u8 class grid; 17 = empty.
struct LabelGrid {
  GridSpec spec;
  std::vector<uint8_t> labels;

  static LabelGrid Empty(const GridSpec& spec) {
    return LabelGrid{spec, std::vector<uint8_t>(spec.num_voxels(), kEmptyClass)};
  }
  uint8_t at(int x, int y, int z) const { return labels[spec.Linear(x, y, z)]; }
  uint8_t& at(int x, int y, int z) { return labels[spec.Linear(x, y, z)]; }
  // Throws InvariantError on size mismatch or labels > 17.
  void Validate() const;
};

// Dense boolean grid stored as 0/1 bytes.
struct CameraMask {
  GridSpec spec;
  std::vector<uint8_t> visible;

  static CameraMask None(const GridSpec& spec) {
    return CameraMask{spec, std::vector<uint8_t>(spec.num_voxels(), 0)};
  }
  static CameraMask All(const GridSpec& spec) {
    return CameraMask{spec, std::vector<uint8_t>(spec.num_voxels(), 1)};
  }
  void Validate() const;
};

// "<stem>.vxt" -> "<stem>.grid.json".
std::filesystem::path SidecarPath(const std::filesystem::path& tensor_path);

// Writes the u8 [nx, ny, nz] tensor and its GridSpec sidecar.
void WriteLabelGrid(const std::filesystem::path& path, const LabelGrid& grid);
void WriteCameraMask(const std::filesystem::path& path, const CameraMask& mask);

// Reads the tensor and its sidecar. Without a sidecar the default GridSpec
// is assumed when the dims match it; otherwise FormatError.
LabelGrid ReadLabelGrid(const std::filesystem::path& path);
CameraMask ReadCameraMask(const std::filesystem::path& path);

}  // namespace occlabel

#endif  // OCCLABEL_GRID_H_
