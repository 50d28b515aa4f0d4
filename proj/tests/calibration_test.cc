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

#include <random>

#include <gtest/gtest.h>
#include <json.hpp>

#include "occlabel/error.h"
#include "test_util.h"

namespace occlabel {
namespace {

using json = nlohmann::json;
using ::occlabel::testing::RandomTransform;
using ::occlabel::testing::TempDir;

json Identity4() { return json({1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 1}); }
json Identity3() { return json({1, 0, 0, 0, 1, 0, 0, 0, 1}); }

json IdentityDoc() {
  json doc;
  doc["sample_id"] = "s0";
  doc["cameras"] = json::array({{{"camera_id", "CAM_FRONT"},
                                  {"K", Identity3()},
                                  {"T_camera_to_global", Identity4()}}});
  doc["T_global_to_ego"] = Identity4();
  return doc;
}

std::string ErrorOf(const std::string& text) {
  try {
    ParseCalibration(text);
  } catch (const Error& e) {
    return e.what();
  }
  return "";
}

TEST(Calibration, IdentityRecord) {
  const CalibrationRecord r = ParseCalibration(IdentityDoc().dump());
  EXPECT_EQ(r.sample_id, "s0");
  ASSERT_EQ(r.cameras.size(), 1u);
  EXPECT_EQ(r.cameras[0].camera_id, "CAM_FRONT");
  EXPECT_EQ(r.cameras[0].k, Mat3::Identity());
  EXPECT_EQ(r.cameras[0].camera_to_global.rotation(), Mat3::Identity());
  EXPECT_EQ(r.cameras[0].camera_to_global.translation(), Vec3::Zero());
  EXPECT_EQ(r.global_to_ego.rotation(), Mat3::Identity());
  EXPECT_EQ(r.global_to_ego.translation(), Vec3::Zero());
}

TEST(Calibration, BadKNamesTheCamera) {
  json doc = IdentityDoc();
  doc["cameras"][0]["camera_id"] = "CAM_BACK_LEFT";
  doc["cameras"][0]["K"][8] = 2;
  EXPECT_THROW(ParseCalibration(doc.dump()), InvariantError);
  EXPECT_NE(ErrorOf(doc.dump()).find("CAM_BACK_LEFT"), std::string::npos);
}

TEST(Calibration, NonRotationNamesTheCamera) {
  json doc = IdentityDoc();
  doc["cameras"][0]["T_camera_to_global"][0] = -1;
  EXPECT_THROW(ParseCalibration(doc.dump()), InvariantError);
  EXPECT_NE(ErrorOf(doc.dump()).find("CAM_FRONT"), std::string::npos);
}

TEST(Calibration, MissingGlobalToEgoIsAParseError) {
  json doc = IdentityDoc();
  doc.erase("T_global_to_ego");
  EXPECT_THROW(ParseCalibration(doc.dump()), FormatError);
  EXPECT_NE(ErrorOf(doc.dump()).find("T_global_to_ego"), std::string::npos);
}

TEST(Calibration, MalformedDocuments) {
  EXPECT_THROW(ParseCalibration("{not json"), FormatError);
  EXPECT_THROW(ParseCalibration("[]"), FormatError);
  json doc = IdentityDoc();
  doc["cameras"][0]["K"] = json({1, 0, 0});
  EXPECT_THROW(ParseCalibration(doc.dump()), FormatError);
  doc = IdentityDoc();
  doc["cameras"][0].erase("camera_id");
  EXPECT_THROW(ParseCalibration(doc.dump()), FormatError);
}

TEST(Calibration, FileRoundTrip) {
  TempDir dir;
  std::mt19937_64 rng(4);
  CalibrationRecord r;
  r.sample_id = "scene_t007";
  for (int i = 0; i < 6; ++i) {
    CameraCalibration c;
    c.camera_id = "CAM_" + std::to_string(i);
    c.k << 800 + i, 0, 640, 0, 810, 360, 0, 0, 1;
    c.camera_to_global = RandomTransform(rng);
    r.cameras.push_back(c);
  }
  r.global_to_ego = RandomTransform(rng);
  WriteCalibration(dir / "c.json", r);
  const CalibrationRecord back = ReadCalibration(dir / "c.json");
  ASSERT_EQ(back.cameras.size(), 6u);
  for (int i = 0; i < 6; ++i) {
    EXPECT_EQ(back.cameras[i].camera_id, r.cameras[i].camera_id);
    EXPECT_EQ(back.cameras[i].k, r.cameras[i].k);
    EXPECT_EQ(back.cameras[i].camera_to_global.ToRowMajor(),
              r.cameras[i].camera_to_global.ToRowMajor());
  }
  EXPECT_EQ(back.global_to_ego.ToRowMajor(), r.global_to_ego.ToRowMajor());
  EXPECT_THROW(ReadCalibration(dir / "missing.json"), IoError);
}

// Independent validity rules, applied to the raw numbers.
bool ValidK(const json& k) {
  const double v[9] = {k[0], k[1], k[2], k[3], k[4], k[5], k[6], k[7], k[8]};
  return v[6] == 0 && v[7] == 0 && v[8] == 1 && v[1] == 0 && v[3] == 0 && v[0] > 0 &&
         v[4] > 0;
}

bool ValidTransform(const json& t) {
  double m[16];
  for (int i = 0; i < 16; ++i) m[i] = t[i];
  if (m[12] != 0 || m[13] != 0 || m[14] != 0 || m[15] != 1) return false;
  const double r[3][3] = {{m[0], m[1], m[2]}, {m[4], m[5], m[6]}, {m[8], m[9], m[10]}};
  const double det = r[0][0] * (r[1][1] * r[2][2] - r[1][2] * r[2][1]) -
                     r[0][1] * (r[1][0] * r[2][2] - r[1][2] * r[2][0]) +
                     r[0][2] * (r[1][0] * r[2][1] - r[1][1] * r[2][0]);
  if (std::abs(det - 1.0) > 1e-6) return false;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      double dot = 0;
      for (int a = 0; a < 3; ++a) dot += r[i][a] * r[j][a];
      if (std::abs(dot - (i == j ? 1.0 : 0.0)) > 1e-6) return false;
    }
  }
  return true;
}

TEST(Calibration, GeneratedDocumentsAcceptedIffValid) {
  std::mt19937_64 rng(21);
  std::uniform_int_distribution<int> mutation(0, 9);
  std::uniform_int_distribution<int> cams(1, 6);
  std::uniform_real_distribution<double> noise(-1e-3, 1e-3);
  int accepted = 0, rejected = 0;
  for (int trial = 0; trial < 2000; ++trial) {
    json doc;
    doc["sample_id"] = "s" + std::to_string(trial);
    doc["cameras"] = json::array();
    const int n = cams(rng);
    for (int c = 0; c < n; ++c) {
      json k = json({700.0 + c, 0.0, 400.0, 0.0, 700.0, 300.0, 0.0, 0.0, 1.0});
      const auto t = RandomTransform(rng).ToRowMajor();
      doc["cameras"].push_back({{"camera_id", "C" + std::to_string(c)},
                                {"K", k},
                                {"T_camera_to_global", json(t)}});
    }
    doc["T_global_to_ego"] = json(RandomTransform(rng).ToRowMajor());

    std::uniform_int_distribution<int> pick_cam(0, n - 1);
    json& cam = doc["cameras"][pick_cam(rng)];
    switch (mutation(rng)) {
      case 0: cam["K"][8] = 2.0; break;
      case 1: cam["K"][6] = noise(rng); break;
      case 2: cam["K"][1] = 0.5; break;
      case 3: cam["K"][0] = -cam["K"][0].get<double>(); break;
      case 4: cam["T_camera_to_global"][15] = 0.5; break;
      case 5: cam["T_camera_to_global"][0] = cam["T_camera_to_global"][0].get<double>() + noise(rng); break;
      case 6: {
        // Negate one row: determinant -1.
        for (int j = 0; j < 3; ++j) {
          cam["T_camera_to_global"][4 + j] = -cam["T_camera_to_global"][4 + j].get<double>();
        }
        break;
      }
      case 7: doc["T_global_to_ego"][13] = 1.0; break;
      case 8: cam["K"][2] = cam["K"][2].get<double>() + 10.0; break;  // still valid
      default: break;
    }
    bool valid = ValidTransform(doc["T_global_to_ego"]);
    for (const json& c : doc["cameras"]) {
      valid = valid && ValidK(c["K"]) && ValidTransform(c["T_camera_to_global"]);
    }
    bool ok = true;
    try {
      ParseCalibration(doc.dump());
    } catch (const InvariantError&) {
      ok = false;
    }
    ASSERT_EQ(ok, valid) << doc.dump();
    (ok ? accepted : rejected)++;
  }
  EXPECT_GT(accepted, 100);
  EXPECT_GT(rejected, 100);
}

}  // namespace
}  // namespace occlabel
