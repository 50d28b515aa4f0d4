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

#include "occlabel/geometry.h"

#include <cmath>
#include <string>

#include <Eigen/LU>

#include "occlabel/error.h"

namespace occlabel {

Intrinsics Intrinsics::FromMatrix(const Mat3& k, int width, int height) {
  if (k(2, 0) != 0.0 || k(2, 1) != 0.0 || k(2, 2) != 1.0) {
    throw InvariantError("intrinsics bottom row must be (0, 0, 1)");
  }
  if (k(0, 1) != 0.0 || k(1, 0) != 0.0) {
    throw InvariantError("intrinsics must have zero skew");
  }
  Intrinsics intr{k(0, 0), k(1, 1), k(0, 2), k(1, 2), width, height};
  intr.Validate();
  return intr;
}

Mat3 Intrinsics::Matrix() const {
  Mat3 k;
  k << fx, 0.0, cx, 0.0, fy, cy, 0.0, 0.0, 1.0;
  return k;
}

Mat3 Intrinsics::InverseMatrix() const {
  Mat3 k;
  k << 1.0 / fx, 0.0, -cx / fx, 0.0, 1.0 / fy, -cy / fy, 0.0, 0.0, 1.0;
  return k;
}

void Intrinsics::Validate() const {
  if (!(fx > 0.0) || !(fy > 0.0) || !std::isfinite(fx) || !std::isfinite(fy)) {
    throw InvariantError("focal lengths must be positive and finite");
  }
  if (!std::isfinite(cx) || !std::isfinite(cy)) {
    throw InvariantError("principal point must be finite");
  }
  if (width < 1 || height < 1) {
    throw InvariantError("image size must be at least 1x1");
  }
}

RigidTransform RigidTransform::FromRowMajor(std::span<const double, 16> m) {
  if (m[12] != 0.0 || m[13] != 0.0 || m[14] != 0.0 || m[15] != 1.0) {
    throw InvariantError("transform bottom row must be (0, 0, 0, 1)");
  }
  Mat3 r;
  r << m[0], m[1], m[2], m[4], m[5], m[6], m[8], m[9], m[10];
  RigidTransform t(r, Vec3(m[3], m[7], m[11]));
  t.Validate();
  return t;
}

std::array<double, 16> RigidTransform::ToRowMajor() const {
  const Mat3& r = rotation_;
  const Vec3& t = translation_;
  return {r(0, 0), r(0, 1), r(0, 2), t.x(),  //
          r(1, 0), r(1, 1), r(1, 2), t.y(),  //
          r(2, 0), r(2, 1), r(2, 2), t.z(),  //
          0.0,     0.0,     0.0,     1.0};
}

void RigidTransform::Validate(double tolerance) const {
  if (!rotation_.allFinite() || !translation_.allFinite()) {
    throw InvariantError("transform has non-finite entries");
  }
  const double det = rotation_.determinant();
  if (std::abs(det - 1.0) > tolerance) {
    throw InvariantError("rotation determinant " + std::to_string(det) +
                         " is not +1");
  }
  const Mat3 gram = rotation_ * rotation_.transpose();
  if ((gram - Mat3::Identity()).cwiseAbs().maxCoeff() > tolerance) {
    throw InvariantError("rotation block is not orthonormal");
  }
}

RigidTransform RigidTransform::Inverse() const {
  const Mat3 rt = rotation_.transpose();
  return RigidTransform(rt, -(rt * translation_));
}

RigidTransform RigidTransform::Compose(const RigidTransform& a,
                                       const RigidTransform& b) {
  return RigidTransform(a.rotation_ * b.rotation_,
                        a.rotation_ * b.translation_ + a.translation_);
}

Vec3 UnprojectPixel(const Intrinsics& intr, const RigidTransform& pose, int u,
                    int v, double depth) {
  if (!(depth > 0.0) || !std::isfinite(depth)) {
    throw InvariantError("depth must be positive, got " + std::to_string(depth));
  }
  if (!intr.Contains(u, v)) {
    throw InvariantError("pixel (" + std::to_string(u) + ", " +
                         std::to_string(v) + ") outside image");
  }
  return pose.Apply(depth * PixelRay(intr, u, v));
}

std::optional<PixelDepth> ProjectPoint(const Intrinsics& intr,
                                       const RigidTransform& pose, const Vec3& p) {
  const Vec3 c = pose.Inverse().Apply(p);
  if (!(c.z() > 0.0)) return std::nullopt;
  return PixelDepth{intr.fx * c.x() / c.z() + intr.cx,
                    intr.fy * c.y() / c.z() + intr.cy, c.z()};
}

}  // namespace occlabel
