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

#ifndef OCCLABEL_GEOMETRY_H_
#define OCCLABEL_GEOMETRY_H_

// Pinhole cameras and rigid transforms.
//
// Camera frame convention: +z forward, +x right, +y down. Pixel (u, v) is
// used verbatim (no half-pixel shift): the ray through (u, v) is
// K^-1 * (u, v, 1)^T.

#include <array>
#include <optional>
#include <span>

#include <Eigen/Core>

namespace occlabel {

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;

struct Intrinsics {
  double fx = 1.0;
  double fy = 1.0;
  double cx = 0.0;
  double cy = 0.0;
  int width = 1;
  int height = 1;

  // Builds from a row-major 3x3 K. Requires zero skew, K[1][0] = 0, the
  // pinhole bottom row (0, 0, 1) and fx, fy > 0. Throws InvariantError.
  static Intrinsics FromMatrix(const Mat3& k, int width, int height);

  Mat3 Matrix() const;
  Mat3 InverseMatrix() const;
  // Throws InvariantError unless fx, fy > 0 and width, height >= 1.
  void Validate() const;
  bool Contains(int u, int v) const {
    return u >= 0 && v >= 0 && u < width && v < height;
  }
};

class RigidTransform {
 public:
  RigidTransform() = default;
  // No validation; use Validate() or FromRowMajor for checked input.
  RigidTransform(const Mat3& rotation, const Vec3& translation)
      : rotation_(rotation), translation_(translation) {}

  static RigidTransform Identity() { return RigidTransform(); }
  // Parses a row-major 4x4. Throws InvariantError if the bottom row is not
  // (0, 0, 0, 1) or the 3x3 block is not a proper rotation within 1e-6.
  static RigidTransform FromRowMajor(std::span<const double, 16> m);
  std::array<double, 16> ToRowMajor() const;

  // Throws InvariantError when the rotation is not orthonormal with
  // determinant +1 (both within `tolerance`).
  void Validate(double tolerance = 1e-6) const;

  const Mat3& rotation() const { return rotation_; }
  const Vec3& translation() const { return translation_; }

  Vec3 Apply(const Vec3& p) const { return rotation_ * p + translation_; }
  RigidTransform Inverse() const;
  // Compose(a, b) maps p to a(b(p)).
  static RigidTransform Compose(const RigidTransform& a, const RigidTransform& b);

 private:
  Mat3 rotation_ = Mat3::Identity();
  Vec3 translation_ = Vec3::Zero();
};

inline RigidTransform operator*(const RigidTransform& a, const RigidTransform& b) {
  return RigidTransform::Compose(a, b);
}

struct PixelDepth {
  double u = 0.0;
  double v = 0.0;
  double depth = 0.0;
};

// Camera-frame direction K^-1 (u, v, 1); its z component is exactly 1.
inline Vec3 PixelRay(const Intrinsics& intr, double u, double v) {
  return Vec3((u - intr.cx) / intr.fx, (v - intr.cy) / intr.fy, 1.0);
}

// Lifts pixel (u, v) at z-depth `depth` into the frame `pose` maps to.
// Throws InvariantError for depth <= 0 (or non-finite) and out-of-bounds
// pixels.
Vec3 UnprojectPixel(const Intrinsics& intr, const RigidTransform& pose, int u,
                    int v, double depth);

// `pose` is camera -> frame of p. Returns nullopt when the point is at or
// behind the image plane (camera-frame z <= 0).
std::optional<PixelDepth> ProjectPoint(const Intrinsics& intr,
                                       const RigidTransform& pose, const Vec3& p);

}  // namespace occlabel

#endif  // OCCLABEL_GEOMETRY_H_
