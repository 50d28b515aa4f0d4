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

// occlabel: pseudo-label generation, masking, evaluation and sweeps.
//
//   occlabel generate --input DIR --output DIR [config flags]
//   occlabel eval --pred DIR --gt DIR [--mask DIR] --report CSV
//   occlabel mask --input DIR --gt DIR --output DIR [config flags]
//   occlabel sweep-threshold --input DIR --gt DIR --csv CSV [config flags]
//   occlabel sweep-temporal --input DIR --gt DIR --csv CSV [config flags]
//   occlabel loss-check --logits VXT --target VXT [--lambda X] [--grad]
//   occlabel synth (--scene JSON | --demo) --output DIR
//
// Errors print "error: <kind>: <message>" on stderr and exit with 1
// (2 for usage errors).

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "occlabel/commands.h"
#include "occlabel/error.h"

namespace {

using occlabel::PipelineConfig;

// Flags mirroring PipelineConfig; set values override --config.
struct ConfigFlags {
  std::string config_path;
  std::optional<uint32_t> threshold;
  std::optional<size_t> history;
  std::optional<size_t> outlier_k;
  std::optional<double> outlier_std_ratio;
  std::optional<std::vector<std::string>> dynamic_classes;
  std::optional<int> pixel_stride;
  std::optional<int> ray_stride;
  std::optional<int> workers;

  void Register(CLI::App* app) {
    app->add_option("--config", config_path, "pipeline config (JSON)");
    app->add_option("--threshold", threshold, "minimum points per occupied voxel");
    app->add_option("--history", history, "previous samples to aggregate (0-13)");
    app->add_option("--outlier-k", outlier_k, "neighbours for outlier removal (0 = off)");
    app->add_option("--outlier-std-ratio", outlier_std_ratio, "outlier cutoff in std devs");
    app->add_option("--dynamic-classes", dynamic_classes, "dynamic class names or indices");
    app->add_option("--pixel-stride", pixel_stride, "lift every n-th pixel");
    app->add_option("--ray-stride", ray_stride, "cast a mask ray every n-th pixel");
    app->add_option("--workers", workers, "worker threads");
  }

  PipelineConfig Build() const {
    PipelineConfig c = config_path.empty() ? PipelineConfig{} : occlabel::ReadConfig(config_path);
    if (threshold) c.threshold = *threshold;
    if (history) c.history = *history;
    if (outlier_k) c.outlier_k = *outlier_k;
    if (outlier_std_ratio) c.outlier_std_ratio = *outlier_std_ratio;
    if (dynamic_classes) {
      const occlabel::LabelSpace space;
      c.dynamic_classes.reset();
      for (const auto& name : *dynamic_classes) {
        const auto label = space.Lookup(name);
        if (!label) throw occlabel::InvariantError("unknown class '" + name + "'");
        c.dynamic_classes.set(*label);
      }
    }
    if (pixel_stride) c.pixel_stride = *pixel_stride;
    if (ray_stride) c.ray_stride = *ray_stride;
    if (workers) c.workers = *workers;
    c.Validate();
    return c;
  }
};

std::optional<std::filesystem::path> OptionalPath(const std::string& s) {
  if (s.empty()) return std::nullopt;
  return std::filesystem::path(s);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Semantic occupancy pseudo-label toolkit"};
  app.require_subcommand(1);

  ConfigFlags gen_flags;
  std::string gen_input, gen_output;
  CLI::App* generate = app.add_subcommand("generate", "generate label grids for a sequence");
  generate->add_option("--input", gen_input, "input directory")->required();
  generate->add_option("--output", gen_output, "output directory")->required();
  gen_flags.Register(generate);

  std::string eval_pred, eval_gt, eval_mask, eval_report, eval_json;
  bool eval_strict = false;
  CLI::App* eval = app.add_subcommand("eval", "evaluate predictions against ground truth");
  eval->add_option("--pred", eval_pred, "prediction directory")->required();
  eval->add_option("--gt", eval_gt, "ground-truth directory")->required();
  eval->add_option("--mask", eval_mask, "camera-mask directory");
  eval->add_option("--report", eval_report, "CSV report path")->required();
  eval->add_option("--json", eval_json, "aggregate report path (JSON)");
  eval->add_flag("--strict", eval_strict, "absent classes count as 0 in the mIoU");

  ConfigFlags mask_flags;
  std::string mask_input, mask_gt, mask_output;
  CLI::App* mask = app.add_subcommand("mask", "compute camera masks of ground-truth grids");
  mask->add_option("--input", mask_input, "input directory (calibration)")->required();
  mask->add_option("--gt", mask_gt, "ground-truth directory")->required();
  mask->add_option("--output", mask_output, "mask output directory")->required();
  mask_flags.Register(mask);

  ConfigFlags thr_flags;
  std::string thr_input, thr_gt, thr_mask, thr_csv;
  uint32_t thr_first = 1, thr_last = 25;
  CLI::App* sweep_thr = app.add_subcommand("sweep-threshold", "mIoU versus occupancy threshold");
  sweep_thr->add_option("--input", thr_input, "input directory")->required();
  sweep_thr->add_option("--gt", thr_gt, "ground-truth directory")->required();
  sweep_thr->add_option("--mask", thr_mask, "camera-mask directory");
  sweep_thr->add_option("--csv", thr_csv, "output CSV")->required();
  sweep_thr->add_option("--first", thr_first, "first threshold")->capture_default_str();
  sweep_thr->add_option("--last", thr_last, "last threshold")->capture_default_str();
  thr_flags.Register(sweep_thr);

  ConfigFlags tmp_flags;
  std::string tmp_input, tmp_gt, tmp_mask, tmp_csv;
  CLI::App* sweep_tmp = app.add_subcommand("sweep-temporal", "mIoU versus history length");
  sweep_tmp->add_option("--input", tmp_input, "input directory")->required();
  sweep_tmp->add_option("--gt", tmp_gt, "ground-truth directory")->required();
  sweep_tmp->add_option("--mask", tmp_mask, "camera-mask directory");
  sweep_tmp->add_option("--csv", tmp_csv, "output CSV")->required();
  tmp_flags.Register(sweep_tmp);

  std::string loss_logits, loss_target;
  occlabel::LossOptions loss_options;
  bool loss_grad = false;
  double loss_h = 1e-4;
  CLI::App* loss = app.add_subcommand("loss-check", "evaluate the pseudo-label loss");
  loss->add_option("--logits", loss_logits, "f32 [C, Nx, Ny, Nz] tensor")->required();
  loss->add_option("--target", loss_target, "u8 [Nx, Ny, Nz] tensor")->required();
  loss->add_option("--lambda", loss_options.lambda, "weight of the auxiliary terms")
      ->capture_default_str();
  loss->add_option("--ignore-empty", loss_options.ignore_empty,
                   "drop the empty class from the Lovasz term")
      ->capture_default_str();
  loss->add_option("--class-weights", loss_options.class_weights, "cross-entropy weights");
  loss->add_flag("--grad", loss_grad, "check the gradient against finite differences");
  loss->add_option("--step", loss_h, "finite-difference step")->capture_default_str();

  ConfigFlags synth_flags;
  std::string synth_scene, synth_output;
  bool synth_demo = false, synth_static = false;
  int synth_timesteps = 14;
  CLI::App* synth = app.add_subcommand("synth", "render a synthetic dataset");
  auto* scene_opt = synth->add_option("--scene", synth_scene, "scene document (JSON)");
  synth->add_flag("--demo", synth_demo, "use the built-in street scene")->excludes(scene_opt);
  synth->add_option("--timesteps", synth_timesteps, "demo scene length")->capture_default_str();
  synth->add_flag("--static-only", synth_static, "demo scene without the moving truck");
  synth->add_option("--output", synth_output, "output directory")->required();
  synth_flags.Register(synth);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  try {
    if (generate->parsed()) {
      const size_t n = occlabel::RunGenerate(gen_flags.Build(), gen_input, gen_output);
      std::printf("generated %zu samples\n", n);
    } else if (eval->parsed()) {
      const auto mode = eval_strict ? occlabel::MiouMode::kStrict
                                    : occlabel::MiouMode::kExcludeAbsent;
      const auto result =
          occlabel::RunEval(eval_pred, eval_gt, OptionalPath(eval_mask), eval_report, mode);
      if (!eval_json.empty()) {
        std::ofstream out(eval_json);
        out << occlabel::EvalReportJson("ALL", result.aggregate) << "\n";
        if (!out) throw occlabel::IoError("write failed: " + eval_json);
      }
      std::printf("samples %zu  iou %s  miou %s\n", result.samples.size(),
                  occlabel::FormatPercent(result.aggregate.iou).c_str(),
                  occlabel::FormatPercent(result.aggregate.miou).c_str());
    } else if (mask->parsed()) {
      const size_t n = occlabel::RunMask(mask_flags.Build(), mask_input, mask_gt, mask_output);
      std::printf("wrote %zu masks\n", n);
    } else if (sweep_thr->parsed()) {
      occlabel::RunSweepThreshold(thr_flags.Build(), thr_input, thr_gt,
                                  OptionalPath(thr_mask), thr_csv, thr_first, thr_last);
    } else if (sweep_tmp->parsed()) {
      occlabel::RunSweepTemporal(tmp_flags.Build(), tmp_input, tmp_gt,
                                 OptionalPath(tmp_mask), tmp_csv);
    } else if (loss->parsed()) {
      std::cout << occlabel::RunLossCheck(loss_logits, loss_target, loss_options, loss_grad,
                                          loss_h)
                << "\n";
    } else if (synth->parsed()) {
      if (synth_scene.empty() && !synth_demo) {
        throw occlabel::InvariantError("synth needs --scene or --demo");
      }
      const PipelineConfig config = synth_flags.Build();
      const occlabel::SceneSpec scene =
          synth_demo ? occlabel::DemoScene(synth_timesteps, !synth_static)
                     : occlabel::ReadSceneSpec(synth_scene);
      occlabel::RunSynth(scene, config.grid, synth_output, config.workers);
    }
  } catch (const occlabel::Error& e) {
    std::fprintf(stderr, "error: %s: %s\n", e.kind().c_str(), e.what());
    return 1;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: internal: %s\n", e.what());
    return 1;
  }
  return 0;
}
