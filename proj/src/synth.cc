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

#include "occlabel/synth.h"

#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>

#include <Eigen/Geometry>

#include "json_util.h"
#include "occlabel/dataset.h"
#include "occlabel/error.h"
#include "occlabel/parallel.h"

namespace occlabel {
namespace {

using internal::json;
using internal::Required;

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr uint8_t kNoHit = 255;

uint8_t ClassOf(const json& node, const std::string& where) {
  static const LabelSpace space;
  std::optional<uint8_t> label;
  if (node.is_number_integer()) {
    const int v = node.get<int>();
    if (v >= 0 && v < kNumClasses) label = static_cast<uint8_t>(v);
  } else if (node.is_string()) {
    label = space.Lookup(node.get<std::string>());
  }
  if (!label) throw FormatError(where + ": unknown class " + node.dump());
  return *label;
}

// Ray parameter of the first entry into the half-open box, or +inf.
double RayBox(const Vec3& o, const Vec3& d, const Vec3& lo, const Vec3& hi) {
  double t0 = -kInf;
  double t1 = kInf;
  for (int a = 0; a < 3; ++a) {
    if (d[a] == 0.0) {
      if (o[a] < lo[a] || o[a] >= hi[a]) return kInf;
      continue;
    }
    double ta = (lo[a] - o[a]) / d[a];
    double tb = (hi[a] - o[a]) / d[a];
    if (ta > tb) std::swap(ta, tb);
    t0 = std::max(t0, ta);
    t1 = std::min(t1, tb);
  }
  if (t0 > t1 || t0 <= 0.0) return kInf;
  return t0;
}

bool Contains(const Vec3& lo, const Vec3& hi, const Vec3& p) {
  for (int a = 0; a < 3; ++a) {
    if (p[a] < lo[a] || p[a] >= hi[a]) return false;
  }
  return true;
}

// Camera looking along yaw `yaw` (radians, about ego +z) pitched down by
// `pitch`, mounted at `position`.
RigidTransform MountedCamera(double yaw, double pitch, const Vec3& position) {
  const Vec3 forward(std::cos(yaw) * std::cos(pitch), std::sin(yaw) * std::cos(pitch),
                     -std::sin(pitch));
  const Vec3 right(std::sin(yaw), -std::cos(yaw), 0.0);
  const Vec3 down = forward.cross(right);
  Mat3 r;
  r.col(0) = right;
  r.col(1) = down;
  r.col(2) = forward;
  return RigidTransform(r, position);
}

// Box covering the voxel-center lattice from (x0, y0) to (x1, y1) and up to
// the layer centered at z_top, with faces 0.1 m inside the outer voxels and
// the bottom 0.15 m below the first layer above the ground layer.
SceneBox LatticeBox(double x0, double x1, double y0, double y1, double z_top,
                    uint8_t label) {
  const Vec3 lo(x0 - 0.1, y0 - 0.1, 0.25);
  const Vec3 hi(x1 + 0.1, y1 + 0.1, z_top + 0.1);
  SceneBox box;
  box.center = 0.5 * (lo + hi);
  box.size = hi - lo;
  box.label = label;
  return box;
}

}  // namespace

Vec3 SceneBox::CenterAt(int t) const {
  if (!dynamic) return center;
  return center + motion.at(static_cast<size_t>(t));
}

void SceneSpec::Validate() const {
  if (timesteps < 1) throw InvariantError("scene: timesteps must be >= 1");
  if (static_cast<int>(trajectory.size()) != timesteps) {
    throw InvariantError("scene: trajectory has " + std::to_string(trajectory.size()) +
                         " poses for " + std::to_string(timesteps) + " timesteps");
  }
  for (const auto& pose : trajectory) pose.Validate();
  if (cameras.empty()) throw InvariantError("scene: at least one camera is required");
  for (const auto& cam : cameras) {
    cam.intrinsics.Validate();
    cam.camera_to_ego.Validate();
  }
  if (ground && ground->label >= kEmptyClass) {
    throw InvariantError("scene: ground class must be below 17");
  }
  for (size_t b = 0; b < boxes.size(); ++b) {
    const SceneBox& box = boxes[b];
    const std::string who = "scene box " + std::to_string(b);
    if (!(box.size.array() > 0.0).all()) throw InvariantError(who + ": size must be positive");
    if (box.label >= kEmptyClass) throw InvariantError(who + ": class must be below 17");
    if (box.dynamic && static_cast<int>(box.motion.size()) != timesteps) {
      throw InvariantError(who + ": dynamic box needs one motion entry per timestep");
    }
    if (!box.dynamic && !box.motion.empty()) {
      throw InvariantError(who + ": static box must not carry motion");
    }
    for (int t = 0; t < timesteps; ++t) {
      if ((box.Lo(t).array() < world_min.array()).any() ||
          (box.Hi(t).array() > world_max.array()).any()) {
        throw InvariantError(who + ": leaves the world extent at timestep " +
                             std::to_string(t));
      }
    }
  }
}

std::vector<RigCamera> SceneSpec::Rig() const {
  std::vector<RigCamera> rig;
  for (const auto& cam : cameras) rig.push_back({cam.intrinsics, cam.camera_to_ego});
  return rig;
}

SceneSpec ParseSceneSpec(std::string_view text) {
  const json doc = internal::ParseJson(text, "scene");
  if (!doc.is_object()) throw FormatError("scene: top level must be an object");
  SceneSpec scene;
  const json& timesteps = Required(doc, "timesteps", "scene");
  if (!timesteps.is_number_integer()) throw FormatError("scene: timesteps must be an integer");
  scene.timesteps = timesteps.get<int>();

  if (doc.contains("world")) {
    const json& world = doc["world"];
    scene.world_min = internal::Vec3Of(Required(world, "min", "scene world"), "scene world min");
    scene.world_max = internal::Vec3Of(Required(world, "max", "scene world"), "scene world max");
  }
  if (doc.contains("ground") && !doc["ground"].is_null()) {
    const json& g = doc["ground"];
    const json& z = Required(g, "z", "scene ground");
    if (!z.is_number()) throw FormatError("scene ground: z must be a number");
    scene.ground = GroundPlane{z.get<double>(), ClassOf(Required(g, "class", "scene ground"),
                                                        "scene ground")};
  }
  if (doc.contains("boxes")) {
    for (const json& b : doc["boxes"]) {
      const std::string where = "scene box " + std::to_string(scene.boxes.size());
      SceneBox box;
      box.center = internal::Vec3Of(Required(b, "center", where), where + " center");
      box.size = internal::Vec3Of(Required(b, "size", where), where + " size");
      box.label = ClassOf(Required(b, "class", where), where);
      box.dynamic = b.value("dynamic", false);
      if (b.contains("motion")) {
        for (const json& m : b["motion"]) {
          box.motion.push_back(internal::Vec3Of(m, where + " motion"));
        }
      }
      scene.boxes.push_back(std::move(box));
    }
  }
  for (const json& c : Required(doc, "cameras", "scene")) {
    const json& id = Required(c, "camera_id", "scene camera");
    if (!id.is_string()) throw FormatError("scene camera: camera_id must be a string");
    const std::string where = "scene camera " + id.get<std::string>();
    SceneCamera cam;
    cam.camera_id = id.get<std::string>();
    cam.intrinsics = Intrinsics::FromMatrix(
        internal::MatrixOf(Required(c, "K", where), where + " K"),
        Required(c, "width", where).get<int>(), Required(c, "height", where).get<int>());
    cam.camera_to_ego =
        internal::CheckedTransform(Required(c, "T_camera_to_ego", where), where);
    scene.cameras.push_back(std::move(cam));
  }
  for (const json& pose : Required(doc, "trajectory", "scene")) {
    scene.trajectory.push_back(internal::CheckedTransform(pose, "scene trajectory"));
  }
  scene.Validate();
  return scene;
}

SceneSpec ReadSceneSpec(const std::filesystem::path& path) {
  return ParseSceneSpec(internal::ReadTextFile(path, "scene"));
}

std::string SerializeSceneSpec(const SceneSpec& scene) {
  auto vec = [](const Vec3& v) { return json::array({v[0], v[1], v[2]}); };
  json doc;
  doc["timesteps"] = scene.timesteps;
  doc["world"] = {{"min", vec(scene.world_min)}, {"max", vec(scene.world_max)}};
  if (scene.ground) doc["ground"] = {{"z", scene.ground->z}, {"class", scene.ground->label}};
  doc["boxes"] = json::array();
  for (const SceneBox& b : scene.boxes) {
    json node = {{"center", vec(b.center)},
                 {"size", vec(b.size)},
                 {"class", b.label},
                 {"dynamic", b.dynamic}};
    if (b.dynamic) {
      node["motion"] = json::array();
      for (const Vec3& m : b.motion) node["motion"].push_back(vec(m));
    }
    doc["boxes"].push_back(std::move(node));
  }
  doc["cameras"] = json::array();
  for (const SceneCamera& c : scene.cameras) {
    doc["cameras"].push_back({{"camera_id", c.camera_id},
                              {"K", internal::MatrixJson(c.intrinsics.Matrix())},
                              {"width", c.intrinsics.width},
                              {"height", c.intrinsics.height},
                              {"T_camera_to_ego", internal::TransformJson(c.camera_to_ego)}});
  }
  doc["trajectory"] = json::array();
  for (const auto& pose : scene.trajectory) {
    doc["trajectory"].push_back(internal::TransformJson(pose));
  }
  return doc.dump(2) + "\n";
}

SceneSpec DemoScene(int timesteps, bool with_dynamic) {
  SceneSpec scene;
  scene.timesteps = timesteps;
  scene.world_min = Vec3(-60.0, -60.0, -5.0);
  scene.world_max = Vec3(60.0, 60.0, 20.0);
  scene.ground = GroundPlane{0.1, kDriveableSurface};

  // Voxel centers sit at 0.2 + 0.4 k in x and y and at 0.4 k in z.
  scene.boxes.push_back(LatticeBox(-6.2, 18.2, 8.2, 9.4, 3.2, kManmade));
  scene.boxes.push_back(LatticeBox(-2.2, 14.2, -10.2, -9.0, 2.4, kManmade));
  scene.boxes.push_back(LatticeBox(6.2, 10.2, 4.2, 5.8, 1.2, kCar));
  scene.boxes.push_back(LatticeBox(14.2, 15.0, -3.0, 3.0, 0.8, kBarrier));
  scene.boxes.push_back(LatticeBox(-10.2, -8.2, -4.2, -2.2, 2.0, kVegetation));
  if (with_dynamic) {
    SceneBox truck = LatticeBox(2.2, 6.2, -4.2, -2.6, 2.0, kTruck);
    truck.dynamic = true;
    for (int t = 0; t < timesteps; ++t) truck.motion.push_back(Vec3(0.4 * t, 0.0, 0.0));
    scene.boxes.push_back(std::move(truck));
  }

  const int width = 320;
  const int height = 180;
  const double focal = 0.5 * width / std::tan(35.0 * std::numbers::pi / 180.0);
  const char* names[] = {"CAM_FRONT", "CAM_FRONT_LEFT", "CAM_BACK_LEFT",
                         "CAM_BACK", "CAM_BACK_RIGHT", "CAM_FRONT_RIGHT"};
  for (int i = 0; i < 6; ++i) {
    const double yaw = i * std::numbers::pi / 3.0;
    SceneCamera cam;
    cam.camera_id = names[i];
    cam.intrinsics = Intrinsics{focal, focal, 0.5 * width, 0.5 * height, width, height};
    cam.camera_to_ego = MountedCamera(yaw, 8.0 * std::numbers::pi / 180.0,
                                      Vec3(0.5 * std::cos(yaw), 0.5 * std::sin(yaw), 1.5));
    scene.cameras.push_back(std::move(cam));
  }
  for (int t = 0; t < timesteps; ++t) {
    scene.trajectory.emplace_back(Mat3::Identity(), Vec3(0.8 * t, 0.0, 0.0));
  }
  scene.Validate();
  return scene;
}

CameraSample RenderSample(const SceneSpec& scene, int t, int camera_index, int workers) {
  if (t < 0 || t >= scene.timesteps) throw InvariantError("timestep out of range");
  if (camera_index < 0 || camera_index >= static_cast<int>(scene.cameras.size())) {
    throw InvariantError("camera index out of range");
  }
  const SceneCamera& cam = scene.cameras[camera_index];
  const Intrinsics& intr = cam.intrinsics;
  CameraSample sample;
  sample.camera_id = cam.camera_id;
  sample.intrinsics = intr;
  sample.camera_to_global = scene.trajectory[t] * cam.camera_to_ego;
  const size_t pixels = static_cast<size_t>(intr.width) * intr.height;
  sample.depth.assign(pixels, 0.0f);
  sample.semantics.assign(pixels, kEmptyClass);

  std::vector<Vec3> lo, hi;
  for (const SceneBox& b : scene.boxes) {
    lo.push_back(b.Lo(t));
    hi.push_back(b.Hi(t));
  }
  const Vec3& o = sample.camera_to_global.translation();
  const Mat3& r = sample.camera_to_global.rotation();
  ParallelChunks(static_cast<size_t>(intr.height), workers,
                 [&](int, size_t begin, size_t end) {
    for (size_t v = begin; v < end; ++v) {
      for (int u = 0; u < intr.width; ++u) {
        const Vec3 d = r * PixelRay(intr, u, static_cast<double>(v));
        double best = kInf;
        uint8_t label = kNoHit;
        if (scene.ground && d.z() != 0.0) {
          const double s = (scene.ground->z - o.z()) / d.z();
          if (s > 0.0) {
            best = s;
            label = scene.ground->label;
          }
        }
        bool box_hit = false;
        for (size_t b = 0; b < scene.boxes.size(); ++b) {
          const double s = RayBox(o, d, lo[b], hi[b]);
          if (s == kInf) continue;
          const uint8_t bl = scene.boxes[b].label;
          if (s < best || (s == best && (!box_hit || bl < label))) {
            best = s;
            label = bl;
            box_hit = true;
          }
        }
        if (label == kNoHit) continue;
        const size_t i = v * intr.width + u;
        sample.depth[i] = static_cast<float>(best);
        sample.semantics[i] = label;
      }
    }
  });
  return sample;
}

CalibrationRecord SceneCalibration(const SceneSpec& scene, int t,
                                   const std::string& sample_id) {
  if (t < 0 || t >= scene.timesteps) throw InvariantError("timestep out of range");
  CalibrationRecord record;
  record.sample_id = sample_id;
  for (const SceneCamera& cam : scene.cameras) {
    record.cameras.push_back(
        {cam.camera_id, cam.intrinsics.Matrix(), scene.trajectory[t] * cam.camera_to_ego});
  }
  record.global_to_ego = scene.trajectory[t].Inverse();
  return record;
}

LabelGrid AnalyticGroundTruth(const SceneSpec& scene, int t, const GridSpec& spec) {
  if (t < 0 || t >= scene.timesteps) throw InvariantError("timestep out of range");
  std::vector<Vec3> lo, hi;
  for (const SceneBox& b : scene.boxes) {
    lo.push_back(b.Lo(t));
    hi.push_back(b.Hi(t));
  }
  const RigidTransform& ego_to_global = scene.trajectory[t];
  LabelGrid grid = LabelGrid::Empty(spec);
  for (int x = 0; x < spec.nx(); ++x) {
    for (int y = 0; y < spec.ny(); ++y) {
      for (int z = 0; z < spec.nz(); ++z) {
        const Vec3 p = ego_to_global.Apply(spec.VoxelCenter(x, y, z));
        uint8_t label = kNoHit;
        for (size_t b = 0; b < scene.boxes.size(); ++b) {
          if (Contains(lo[b], hi[b], p)) label = std::min(label, scene.boxes[b].label);
        }
        if (label == kNoHit && scene.ground && p.z() < scene.ground->z) {
          label = scene.ground->label;
        }
        if (label != kNoHit) grid.at(x, y, z) = label;
      }
    }
  }
  return grid;
}

std::string SyntheticSampleId(int t) {
  char buf[16];
  std::snprintf(buf, sizeof(buf), "t%03d", t);
  return buf;
}

void WriteSyntheticDataset(const SceneSpec& scene, const GridSpec& spec,
                           const std::filesystem::path& dir, int workers) {
  scene.Validate();
  const std::filesystem::path input = dir / "input";
  const std::filesystem::path gt = dir / "gt";
  std::filesystem::create_directories(input);
  std::filesystem::create_directories(gt);
  std::vector<std::string> ids;
  for (int t = 0; t < scene.timesteps; ++t) {
    const std::string id = SyntheticSampleId(t);
    ids.push_back(id);
    SampleInputs inputs;
    inputs.calibration = SceneCalibration(scene, t, id);
    for (int c = 0; c < static_cast<int>(scene.cameras.size()); ++c) {
      inputs.cameras.push_back(RenderSample(scene, t, c, workers));
    }
    WriteSampleInputs(input, inputs);
    WriteLabelGrid(gt / (id + ".vxt"), AnalyticGroundTruth(scene, t, spec));
  }
  WriteManifest(input / "manifest.txt", ids);
  internal::WriteTextFile(dir / "scene.json", SerializeSceneSpec(scene));
}

}  // namespace occlabel
