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

#include "occlabel/losses.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "occlabel/error.h"

namespace occlabel {
namespace {

constexpr double kLogFloor = -100.0;

double PairwiseSum(std::span<const double> v) {
  if (v.size() <= 8) {
    double s = 0.0;
    for (double x : v) s += x;
    return s;
  }
  const size_t half = v.size() / 2;
  return PairwiseSum(v.first(half)) + PairwiseSum(v.subspan(half));
}

void CheckGrid(const ClassGrid& grid) {
  if (grid.num_classes < 2) throw ShapeError("need at least 2 classes");
  for (int d : grid.dims) {
    if (d <= 0) throw ShapeError("grid dims must be positive");
  }
  if (grid.values.size() != grid.num_voxels() * grid.num_classes) {
    throw ShapeError("grid holds " + std::to_string(grid.values.size()) +
                     " values, expected " +
                     std::to_string(grid.num_voxels() * grid.num_classes));
  }
}

void CheckTarget(const ClassGrid& grid, std::span<const uint8_t> target) {
  CheckGrid(grid);
  if (target.size() != grid.num_voxels()) {
    throw ShapeError("target has " + std::to_string(target.size()) +
                     " voxels, logits have " + std::to_string(grid.num_voxels()));
  }
  for (size_t i = 0; i < target.size(); ++i) {
    if (target[i] >= grid.num_classes) {
      throw InvariantError("target label " + std::to_string(target[i]) +
                           " at voxel " + std::to_string(i) + " is not below C = " +
                           std::to_string(grid.num_classes));
    }
  }
}

std::vector<double> UniformOr(std::span<const double> weights, int num_classes) {
  if (weights.empty()) return std::vector<double>(num_classes, 1.0);
  if (static_cast<int>(weights.size()) != num_classes) {
    throw ShapeError("class weights have " + std::to_string(weights.size()) +
                     " entries, expected " + std::to_string(num_classes));
  }
  return {weights.begin(), weights.end()};
}

// -log(num / den) clamped at -kLogFloor. Sets *clamped when the clamp (or a
// zero ratio) is active, in which case the term has zero gradient.
double NegLog(double num, double den, bool* clamped) {
  const double ratio = num / den;
  if (ratio <= 0.0 || std::log(ratio) < kLogFloor) {
    *clamped = true;
    return -kLogFloor;
  }
  *clamped = false;
  return -std::log(ratio);
}

// Prec + Rec + Spec for soft mass p and indicator y. When grad is non-null,
// adds scale * dL/dp_i to (*grad)[i].
double Affinity(const std::vector<double>& p, const std::vector<uint8_t>& y,
                double scale, std::vector<double>* grad) {
  const size_t n = p.size();
  std::vector<double> py(n), one_minus(n), y_d(n), not_y(n);
  for (size_t i = 0; i < n; ++i) {
    py[i] = y[i] ? p[i] : 0.0;
    one_minus[i] = y[i] ? 0.0 : 1.0 - p[i];
    y_d[i] = y[i] ? 1.0 : 0.0;
    not_y[i] = 1.0 - y_d[i];
  }
  const double sum_py = PairwiseSum(py);
  const double sum_p = PairwiseSum(p);
  const double sum_y = PairwiseSum(y_d);
  const double sum_not_y = PairwiseSum(not_y);
  const double sum_spec = PairwiseSum(one_minus);

  double loss = 0.0;
  bool clamped = false;
  if (sum_y > 0.0 && sum_p > 0.0) {
    loss += NegLog(sum_py, sum_p, &clamped);
    if (grad != nullptr && !clamped) {
      for (size_t i = 0; i < n; ++i) {
        (*grad)[i] += scale * -(y_d[i] / sum_py - 1.0 / sum_p);
      }
    }
  }
  if (sum_y > 0.0) {
    loss += NegLog(sum_py, sum_y, &clamped);
    if (grad != nullptr && !clamped) {
      for (size_t i = 0; i < n; ++i) (*grad)[i] += scale * -(y_d[i] / sum_py);
    }
  }
  if (sum_not_y > 0.0) {
    loss += NegLog(sum_spec, sum_not_y, &clamped);
    if (grad != nullptr && !clamped) {
      for (size_t i = 0; i < n; ++i) (*grad)[i] += scale * (not_y[i] / sum_spec);
    }
  }
  return loss;
}

std::vector<double> ClassColumn(const ProbGrid& probs, int c) {
  const size_t n = probs.num_voxels();
  const auto first = probs.values.begin() + static_cast<ptrdiff_t>(c * n);
  return {first, first + static_cast<ptrdiff_t>(n)};
}

ScalLossValues Scal(const ProbGrid& probs, std::span<const uint8_t> target,
                    double scale, ClassGrid* grad_p) {
  const size_t n = probs.num_voxels();
  const int empty = probs.empty_class();
  ScalLossValues out;

  std::vector<int> present;
  for (int c = 0; c < empty; ++c) {
    if (std::find(target.begin(), target.end(), c) != target.end()) present.push_back(c);
  }
  std::vector<double> g(n);
  std::vector<uint8_t> y(n);
  if (!present.empty()) {
    const double k = static_cast<double>(present.size());
    double sum = 0.0;
    for (int c : present) {
      for (size_t i = 0; i < n; ++i) y[i] = target[i] == c;
      std::fill(g.begin(), g.end(), 0.0);
      sum += Affinity(ClassColumn(probs, c), y, scale / k,
                      grad_p != nullptr ? &g : nullptr);
      if (grad_p != nullptr) {
        for (size_t i = 0; i < n; ++i) grad_p->at(c, i) += g[i];
      }
    }
    out.sem_scal = sum / k;
  }

  std::vector<double> occ(n);
  for (size_t i = 0; i < n; ++i) {
    occ[i] = 1.0 - probs.at(empty, i);
    y[i] = target[i] != empty;
  }
  std::fill(g.begin(), g.end(), 0.0);
  out.geom_scal = Affinity(occ, y, scale, grad_p != nullptr ? &g : nullptr);
  if (grad_p != nullptr) {
    for (size_t i = 0; i < n; ++i) grad_p->at(empty, i) -= g[i];
  }
  return out;
}

// Lovasz hinge of one class. When grad_p is non-null, adds scale * dL/dp.
double LovaszClass(const ProbGrid& probs, std::span<const uint8_t> target, int c,
                   double scale, ClassGrid* grad_p) {
  const size_t n = probs.num_voxels();
  std::vector<double> err(n);
  for (size_t i = 0; i < n; ++i) {
    const double fg = target[i] == c ? 1.0 : 0.0;
    err[i] = std::abs(fg - probs.at(c, i));
  }
  std::vector<size_t> order(n);
  std::iota(order.begin(), order.end(), size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](size_t a, size_t b) { return err[a] > err[b]; });

  double gts = 0.0;
  for (size_t i = 0; i < n; ++i) gts += target[i] == c ? 1.0 : 0.0;

  double loss = 0.0;
  double fg_cum = 0.0;
  double bg_cum = 0.0;
  double prev_jac = 0.0;
  for (size_t k = 0; k < n; ++k) {
    const size_t i = order[k];
    const bool fg = target[i] == c;
    (fg ? fg_cum : bg_cum) += 1.0;
    const double jac = 1.0 - (gts - fg_cum) / (gts + bg_cum);
    const double step = jac - prev_jac;
    prev_jac = jac;
    loss += err[i] * step;
    if (grad_p != nullptr) grad_p->at(c, i) += scale * (fg ? -step : step);
  }
  return loss;
}

std::vector<int> LovaszClasses(const ProbGrid& probs, std::span<const uint8_t> target,
                               bool ignore_empty) {
  std::vector<uint8_t> present(probs.num_classes, 0);
  for (uint8_t t : target) present[t] = 1;
  std::vector<int> classes;
  for (int c = 0; c < probs.num_classes; ++c) {
    if (!present[c]) continue;
    if (ignore_empty && c == probs.empty_class()) continue;
    classes.push_back(c);
  }
  return classes;
}

}  // namespace

ClassGrid ClassGrid::Zeros(int num_classes, const std::array<int, 3>& dims) {
  ClassGrid g;
  g.num_classes = num_classes;
  g.dims = dims;
  g.values.assign(g.num_voxels() * num_classes, 0.0);
  CheckGrid(g);
  return g;
}

ProbGrid SoftmaxProbs(const LogitsGrid& logits) {
  CheckGrid(logits);
  ProbGrid probs = logits;
  const size_t n = logits.num_voxels();
  for (size_t v = 0; v < n; ++v) {
    double m = -INFINITY;
    for (int c = 0; c < logits.num_classes; ++c) {
      const double z = logits.at(c, v);
      if (!std::isfinite(z)) {
        throw InvariantError("non-finite logit at class " + std::to_string(c) +
                             ", voxel " + std::to_string(v));
      }
      m = std::max(m, z);
    }
    double sum = 0.0;
    for (int c = 0; c < logits.num_classes; ++c) {
      const double e = std::exp(logits.at(c, v) - m);
      probs.at(c, v) = e;
      sum += e;
    }
    for (int c = 0; c < logits.num_classes; ++c) probs.at(c, v) /= sum;
  }
  return probs;
}

double CrossEntropy(const LogitsGrid& logits, std::span<const uint8_t> target,
                    std::span<const double> class_weights) {
  CheckTarget(logits, target);
  const std::vector<double> w = UniformOr(class_weights, logits.num_classes);
  const size_t n = logits.num_voxels();
  std::vector<double> terms(n);
  for (size_t v = 0; v < n; ++v) {
    double m = -INFINITY;
    for (int c = 0; c < logits.num_classes; ++c) m = std::max(m, logits.at(c, v));
    if (!std::isfinite(m)) throw InvariantError("non-finite logit at voxel " + std::to_string(v));
    double sum = 0.0;
    for (int c = 0; c < logits.num_classes; ++c) sum += std::exp(logits.at(c, v) - m);
    const double lse = m + std::log(sum);
    terms[v] = w[target[v]] * (lse - logits.at(target[v], v));
  }
  return PairwiseSum(terms) / static_cast<double>(n);
}

ScalLossValues ScalLosses(const ProbGrid& probs, std::span<const uint8_t> target) {
  CheckTarget(probs, target);
  return Scal(probs, target, 1.0, nullptr);
}

std::vector<std::pair<int, double>> LovaszPerClass(const ProbGrid& probs,
                                                   std::span<const uint8_t> target,
                                                   bool ignore_empty) {
  CheckTarget(probs, target);
  std::vector<std::pair<int, double>> out;
  for (int c : LovaszClasses(probs, target, ignore_empty)) {
    out.emplace_back(c, LovaszClass(probs, target, c, 1.0, nullptr));
  }
  return out;
}

double LovaszSoftmax(const ProbGrid& probs, std::span<const uint8_t> target,
                     bool ignore_empty) {
  const auto per_class = LovaszPerClass(probs, target, ignore_empty);
  if (per_class.empty()) return 0.0;
  double sum = 0.0;
  for (const auto& [c, l] : per_class) sum += l;
  return sum / static_cast<double>(per_class.size());
}

LossBreakdown PseudoLoss(const LogitsGrid& logits, std::span<const uint8_t> target,
                         const LossOptions& options) {
  LossBreakdown out;
  out.lambda = options.lambda;
  out.ce = CrossEntropy(logits, target, options.class_weights);
  const ProbGrid probs = SoftmaxProbs(logits);
  const ScalLossValues scal = ScalLosses(probs, target);
  out.geom_scal = scal.geom_scal;
  out.sem_scal = scal.sem_scal;
  out.lovasz = LovaszSoftmax(probs, target, options.ignore_empty);
  out.total = out.ce + options.lambda * (out.geom_scal + out.sem_scal + out.lovasz);
  return out;
}

LogitsGrid PseudoLossGrad(const LogitsGrid& logits, std::span<const uint8_t> target,
                          const LossOptions& options) {
  CheckTarget(logits, target);
  const std::vector<double> w = UniformOr(options.class_weights, logits.num_classes);
  const ProbGrid probs = SoftmaxProbs(logits);
  const size_t n = logits.num_voxels();
  const int num_classes = logits.num_classes;

  // d(lambda * (scal + lovasz)) / dp.
  ClassGrid grad_p = ClassGrid::Zeros(num_classes, logits.dims);
  Scal(probs, target, options.lambda, &grad_p);
  const std::vector<int> classes = LovaszClasses(probs, target, options.ignore_empty);
  for (int c : classes) {
    LovaszClass(probs, target, c, options.lambda / static_cast<double>(classes.size()),
                &grad_p);
  }

  // Back through the softmax, then add the cross-entropy term directly.
  LogitsGrid grad = ClassGrid::Zeros(num_classes, logits.dims);
  const double inv_n = 1.0 / static_cast<double>(n);
  for (size_t v = 0; v < n; ++v) {
    double dot = 0.0;
    for (int c = 0; c < num_classes; ++c) dot += probs.at(c, v) * grad_p.at(c, v);
    const double wy = w[target[v]] * inv_n;
    for (int c = 0; c < num_classes; ++c) {
      const double p = probs.at(c, v);
      const double onehot = c == target[v] ? 1.0 : 0.0;
      grad.at(c, v) = p * (grad_p.at(c, v) - dot) + wy * (p - onehot);
    }
  }
  return grad;
}

GradientCheck CheckGradient(const LogitsGrid& logits, std::span<const uint8_t> target,
                            const LossOptions& options, double h) {
  if (!(h > 0.0)) throw InvariantError("finite-difference step must be positive");
  const LogitsGrid analytic = PseudoLossGrad(logits, target, options);
  LogitsGrid probe = logits;
  GradientCheck out;
  for (size_t j = 0; j < probe.values.size(); ++j) {
    const double z = probe.values[j];
    probe.values[j] = z + h;
    const double up = PseudoLoss(probe, target, options).total;
    probe.values[j] = z - h;
    const double down = PseudoLoss(probe, target, options).total;
    probe.values[j] = z;
    const double numeric = (up - down) / (2.0 * h);
    const double a = analytic.values[j];
    const double abs_err = std::abs(a - numeric);
    out.max_abs_error = std::max(out.max_abs_error, abs_err);
    const double scale = std::max(std::abs(a), std::abs(numeric));
    if (scale >= 1e-10) out.max_rel_error = std::max(out.max_rel_error, abs_err / scale);
  }
  return out;
}

LogitsGrid LogitsFromTensor(const Tensor& tensor) {
  if (tensor.dtype() != DType::kF32 || tensor.ndim() != 4) {
    throw ShapeError("logits must be an f32 tensor of shape [C, Nx, Ny, Nz]");
  }
  const auto& d = tensor.dims();
  LogitsGrid g = ClassGrid::Zeros(
      static_cast<int>(d[0]),
      {static_cast<int>(d[1]), static_cast<int>(d[2]), static_cast<int>(d[3])});
  const auto& src = tensor.values<float>();
  std::copy(src.begin(), src.end(), g.values.begin());
  return g;
}

Tensor LogitsToTensor(const LogitsGrid& logits) {
  CheckGrid(logits);
  std::vector<float> data(logits.values.begin(), logits.values.end());
  return Tensor({static_cast<uint32_t>(logits.num_classes),
                 static_cast<uint32_t>(logits.dims[0]),
                 static_cast<uint32_t>(logits.dims[1]),
                 static_cast<uint32_t>(logits.dims[2])},
                std::move(data));
}

}  // namespace occlabel
