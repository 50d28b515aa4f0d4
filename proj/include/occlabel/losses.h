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

#ifndef OCCLABEL_LOSSES_H_
#define OCCLABEL_LOSSES_H_

// Reference implementation of the pseudo-label training loss
//
//   total = CE + lambda * (geom_scal + sem_scal + lovasz)
//
// and its exact gradient with respect to the logits.
//
// Grids hold C classes over Nx x Ny x Nz voxels, class-major:
// value(c, v) = values[c * num_voxels + v], v = (x * Ny + y) * Nz + z.
// The last class (C - 1) is the empty class; for C = 18 that is index 17.
//
// Scene-class affinity terms, for soft mass p_i and indicator y_i:
//   Prec = -log(sum p y / sum p)
//   Rec  = -log(sum p y / sum y)
//   Spec = -log(sum (1 - p)(1 - y) / sum (1 - y))
// sem_scal averages Prec + Rec + Spec over the non-empty classes present in
// the target. geom_scal applies the same triple to occupancy
// (p = 1 - p_empty, y = target != empty). Prec and Rec need sum y > 0, Spec
// needs sum (1 - y) > 0; a term whose condition fails is skipped. Every log
// is clamped at -100, as binary cross-entropy implementations do.
//
// Lovasz-softmax averages, over the classes present in the target (minus
// the empty class when ignore_empty), the Lovasz extension of the Jaccard
// loss evaluated at the per-voxel errors |[y_i = c] - p_i(c)|. Its gradient
// holds the sort permutation fixed.
//
// Sums over voxels use a fixed pairwise tree, so results do not depend on
// thread scheduling.

#include <array>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "occlabel/tensor_io.h"

namespace occlabel {

// C x Nx x Ny x Nz real grid (logits, probabilities or gradients).
struct ClassGrid {
  int num_classes = 0;
  std::array<int, 3> dims{};
  std::vector<double> values;

  static ClassGrid Zeros(int num_classes, const std::array<int, 3>& dims);
  size_t num_voxels() const {
    return static_cast<size_t>(dims[0]) * dims[1] * dims[2];
  }
  double at(int c, size_t v) const { return values[c * num_voxels() + v]; }
  double& at(int c, size_t v) { return values[c * num_voxels() + v]; }
  int empty_class() const { return num_classes - 1; }
};

using LogitsGrid = ClassGrid;
using ProbGrid = ClassGrid;

struct LossBreakdown {
  double total = 0.0;
  double ce = 0.0;
  double geom_scal = 0.0;
  double sem_scal = 0.0;
  double lovasz = 0.0;
  double lambda = 0.0;
};

struct LossOptions {
  double lambda = 0.1;
  bool ignore_empty = true;
  // Per-class CE weights (size C); empty means uniform.
  std::vector<double> class_weights;
};

// Per-voxel softmax with max subtraction. Throws InvariantError on
// non-finite logits.
ProbGrid SoftmaxProbs(const LogitsGrid& logits);

// Mean over voxels of -w[y] * log p[y]. Throws ShapeError when the target
// size differs from the voxel count and InvariantError for labels >= C.
double CrossEntropy(const LogitsGrid& logits, std::span<const uint8_t> target,
                    std::span<const double> class_weights = {});

struct ScalLossValues {
  double geom_scal = 0.0;
  double sem_scal = 0.0;
};
ScalLossValues ScalLosses(const ProbGrid& probs, std::span<const uint8_t> target);

// (class, loss) for every class that enters the Lovasz mean.
std::vector<std::pair<int, double>> LovaszPerClass(const ProbGrid& probs,
                                                   std::span<const uint8_t> target,
                                                   bool ignore_empty);
double LovaszSoftmax(const ProbGrid& probs, std::span<const uint8_t> target,
                     bool ignore_empty);

LossBreakdown PseudoLoss(const LogitsGrid& logits, std::span<const uint8_t> target,
                         const LossOptions& options = {});

// d total / d logits, same layout as the logits.
LogitsGrid PseudoLossGrad(const LogitsGrid& logits, std::span<const uint8_t> target,
                          const LossOptions& options = {});

struct GradientCheck {
  double max_abs_error = 0.0;
  // max over logits of |analytic - numeric| / max(|analytic|, |numeric|),
  // with entries where both are below 1e-10 skipped.
  double max_rel_error = 0.0;
};

// Compares PseudoLossGrad against central differences of PseudoLoss with
// step h on every logit.
GradientCheck CheckGradient(const LogitsGrid& logits, std::span<const uint8_t> target,
                            const LossOptions& options = {}, double h = 1e-4);

// Tensor interop: logits are f32 [C, Nx, Ny, Nz]; targets u8 [Nx, Ny, Nz].
LogitsGrid LogitsFromTensor(const Tensor& tensor);
Tensor LogitsToTensor(const LogitsGrid& logits);

}  // namespace occlabel

#endif  // OCCLABEL_LOSSES_H_
