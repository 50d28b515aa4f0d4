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

#include <random>

#include <gtest/gtest.h>

#include "occlabel/error.h"
#include "oracles.h"
#include "test_util.h"

namespace occlabel {
namespace {

using ::occlabel::testing::RandomIntrinsics;
using ::occlabel::testing::RandomTransform;

double MaxDiff(const RigidTransform& a, const RigidTransform& b) {
  const auto ma = a.ToRowMajor();
  const auto mb = b.ToRowMajor();
  double d = 0.0;
  for (size_t i = 0; i < 16; ++i) d = std::max(d, std::abs(ma[i] - mb[i]));
  return d;
}

TEST(Geometry, IdentityCameraCenterRay) {
  const Intrinsics k;
  const Vec3 p = UnprojectPixel(k, RigidTransform::Identity(), 0, 0, 1.0);
  EXPECT_EQ(p, Vec3(0, 0, 1));
}

TEST(Geometry, PrincipalPointRay) {
  const Intrinsics k{100, 100, 50, 30, 100, 60};
  const Vec3 p = UnprojectPixel(k, RigidTransform::Identity(), 50, 30, 7.0);
  EXPECT_EQ(p, Vec3(0, 0, 7));
}

TEST(Geometry, UnprojectRejectsBadInputs) {
  const Intrinsics k{100, 100, 50, 30, 100, 60};
  EXPECT_THROW(UnprojectPixel(k, RigidTransform::Identity(), 1, 1, 0.0), InvariantError);
  EXPECT_THROW(UnprojectPixel(k, RigidTransform::Identity(), 1, 1, -2.0), InvariantError);
  EXPECT_THROW(UnprojectPixel(k, RigidTransform::Identity(), 100, 1, 1.0), InvariantError);
  EXPECT_THROW(UnprojectPixel(k, RigidTransform::Identity(), 0, -1, 1.0), InvariantError);
}

TEST(Geometry, CameraFrameDepthIsExact) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> depth(0.1, 80.0);
  for (int i = 0; i < 1000; ++i) {
    const Intrinsics k = RandomIntrinsics(rng);
    std::uniform_int_distribution<int> u(0, k.width - 1), v(0, k.height - 1);
    const double d = depth(rng);
    EXPECT_EQ(UnprojectPixel(k, RigidTransform::Identity(), u(rng), v(rng), d).z(), d);
  }
}

TEST(Geometry, ProjectIdentity) {
  const auto pd = ProjectPoint(Intrinsics{}, RigidTransform::Identity(), Vec3(0, 0, 5));
  ASSERT_TRUE(pd.has_value());
  EXPECT_EQ(pd->u, 0.0);
  EXPECT_EQ(pd->v, 0.0);
  EXPECT_EQ(pd->depth, 5.0);
  EXPECT_FALSE(ProjectPoint(Intrinsics{}, RigidTransform::Identity(), Vec3(0, 0, -1)));
  EXPECT_FALSE(ProjectPoint(Intrinsics{}, RigidTransform::Identity(), Vec3(1, 1, 0)));
}

TEST(Geometry, ProjectMatchesComponentwiseOracle) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> c(-30.0, 30.0);
  for (int i = 0; i < 2000; ++i) {
    const Intrinsics k = RandomIntrinsics(rng);
    const RigidTransform pose = RandomTransform(rng);
    const Vec3 p(c(rng), c(rng), c(rng));
    const auto got = ProjectPoint(k, pose, p);
    const auto want = oracle::Project(k, pose, p);
    ASSERT_EQ(got.has_value(), want.has_value());
    if (!got) continue;
    EXPECT_NEAR(got->u, (*want)[0], 1e-6 * std::max(1.0, std::abs((*want)[0])));
    EXPECT_NEAR(got->v, (*want)[1], 1e-6 * std::max(1.0, std::abs((*want)[1])));
    EXPECT_NEAR(got->depth, (*want)[2], 1e-9);
  }
}

TEST(Geometry, RoundTripTenThousandPixels) {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> depth(0.05, 100.0);
  double worst = 0.0;
  for (int i = 0; i < 10000; ++i) {
    const Intrinsics k = RandomIntrinsics(rng);
    const RigidTransform pose = RandomTransform(rng, 100.0);
    std::uniform_int_distribution<int> u(0, k.width - 1), v(0, k.height - 1);
    const int pu = u(rng), pv = v(rng);
    const double d = depth(rng);
    const auto back = ProjectPoint(k, pose, UnprojectPixel(k, pose, pu, pv, d));
    ASSERT_TRUE(back.has_value());
    worst = std::max({worst, std::abs(back->u - pu), std::abs(back->v - pv),
                      std::abs(back->depth - d)});
  }
  EXPECT_LT(worst, 1e-6);
}

TEST(Geometry, IntrinsicsInverse) {
  std::mt19937_64 rng(2);
  for (int i = 0; i < 500; ++i) {
    const Intrinsics k = RandomIntrinsics(rng);
    const Mat3 prod = k.InverseMatrix() * k.Matrix();
    EXPECT_LT((prod - Mat3::Identity()).cwiseAbs().maxCoeff(), 1e-9);
  }
}

TEST(Geometry, IntrinsicsValidation) {
  Mat3 k = Mat3::Identity();
  EXPECT_NO_THROW(Intrinsics::FromMatrix(k, 4, 4));
  k(2, 2) = 2.0;
  EXPECT_THROW(Intrinsics::FromMatrix(k, 4, 4), InvariantError);
  k = Mat3::Identity();
  k(0, 0) = 0.0;
  EXPECT_THROW(Intrinsics::FromMatrix(k, 4, 4), InvariantError);
  EXPECT_THROW(Intrinsics::FromMatrix(Mat3::Identity(), 0, 4), InvariantError);
}

TEST(Geometry, ComposeWithIdentity) {
  std::mt19937_64 rng(9);
  for (int i = 0; i < 100; ++i) {
    const RigidTransform t = RandomTransform(rng);
    EXPECT_EQ(MaxDiff(t * RigidTransform::Identity(), t), 0.0);
    EXPECT_EQ(MaxDiff(RigidTransform::Identity() * t, t), 0.0);
  }
}

TEST(Geometry, InverseUndoesApply) {
  std::mt19937_64 rng(10);
  std::uniform_real_distribution<double> c(-50.0, 50.0);
  for (int i = 0; i < 1000; ++i) {
    const RigidTransform t = RandomTransform(rng);
    const Vec3 p(c(rng), c(rng), c(rng));
    EXPECT_LT((t.Inverse().Apply(t.Apply(p)) - p).cwiseAbs().maxCoeff(), 1e-9);
    EXPECT_LT(MaxDiff(t * t.Inverse(), RigidTransform::Identity()), 1e-9);
  }
}

TEST(Geometry, ComposeIsAssociativeAndMatchesApply) {
  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> c(-50.0, 50.0);
  for (int i = 0; i < 1000; ++i) {
    const RigidTransform a = RandomTransform(rng), b = RandomTransform(rng),
                         d = RandomTransform(rng);
    EXPECT_LT(MaxDiff((a * b) * d, a * (b * d)), 1e-9);
    const Vec3 p(c(rng), c(rng), c(rng));
    EXPECT_LT(((a * b).Apply(p) - a.Apply(b.Apply(p))).cwiseAbs().maxCoeff(), 1e-9);
  }
}

TEST(Geometry, RowMajorRoundTripIsExact) {
  std::mt19937_64 rng(13);
  for (int i = 0; i < 100; ++i) {
    const RigidTransform t = RandomTransform(rng);
    const auto m = t.ToRowMajor();
    EXPECT_EQ(RigidTransform::FromRowMajor(m).ToRowMajor(), m);
  }
}

TEST(Geometry, FromRowMajorRejectsNonRigid) {
  std::array<double, 16> m = RigidTransform::Identity().ToRowMajor();
  m[15] = 2.0;
  EXPECT_THROW(RigidTransform::FromRowMajor(m), InvariantError);
  m = RigidTransform::Identity().ToRowMajor();
  m[0] = -1.0;  // reflection
  EXPECT_THROW(RigidTransform::FromRowMajor(m), InvariantError);
  m = RigidTransform::Identity().ToRowMajor();
  m[0] = 2.0;
  m[5] = 0.5;  // det 1 but not orthonormal
  EXPECT_THROW(RigidTransform::FromRowMajor(m), InvariantError);
}

}  // namespace
}  // namespace occlabel
