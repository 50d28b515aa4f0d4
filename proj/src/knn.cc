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

#include "occlabel/knn.h"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "occlabel/parallel.h"

namespace occlabel {
namespace {

constexpr uint32_t kLeafSize = 16;

inline double SquaredDistance(const Vec3& a, const Vec3& b) {
  const double dx = a.x() - b.x();
  const double dy = a.y() - b.y();
  const double dz = a.z() - b.z();
  return dx * dx + dy * dy + dz * dz;
}

// Bounded max-heap of the k smallest squared distances seen so far.
class Candidates {
 public:
  explicit Candidates(size_t k) : k_(k) { heap_.reserve(k); }

  bool full() const { return heap_.size() == k_; }
  double worst() const { return heap_.front(); }

  void Offer(double d2) {
    if (heap_.size() < k_) {
      heap_.push_back(d2);
      std::push_heap(heap_.begin(), heap_.end());
    } else if (d2 < heap_.front()) {
      std::pop_heap(heap_.begin(), heap_.end());
      heap_.back() = d2;
      std::push_heap(heap_.begin(), heap_.end());
    }
  }

  std::vector<double> Sorted() && {
    std::sort(heap_.begin(), heap_.end());
    return std::move(heap_);
  }

 private:
  size_t k_;
  std::vector<double> heap_;
};

double MeanOfSorted(const std::vector<double>& sorted_d2, size_t k) {
  if (k == 0) return 0.0;
  double sum = 0.0;
  for (double d2 : sorted_d2) sum += std::sqrt(d2);
  return sum / static_cast<double>(k);
}

}  // namespace

KdTree::KdTree(std::span<const Vec3> points) : points_(points) {
  order_.resize(points.size());
  std::iota(order_.begin(), order_.end(), 0u);
  if (!order_.empty()) {
    nodes_.reserve(2 * (points.size() / kLeafSize + 1));
    Build(0, static_cast<uint32_t>(order_.size()));
  }
}

int32_t KdTree::Build(uint32_t begin, uint32_t end) {
  const auto id = static_cast<int32_t>(nodes_.size());
  nodes_.push_back(Node{-1, -1, begin, end, 0, 0.0});
  if (end - begin <= kLeafSize) return id;

  Vec3 lo = points_[order_[begin]];
  Vec3 hi = lo;
  for (uint32_t i = begin + 1; i < end; ++i) {
    lo = lo.cwiseMin(points_[order_[i]]);
    hi = hi.cwiseMax(points_[order_[i]]);
  }
  int axis = 0;
  (hi - lo).maxCoeff(&axis);
  if (hi[axis] == lo[axis]) return id;  // all coincident; keep as leaf

  const uint32_t mid = begin + (end - begin) / 2;
  std::nth_element(order_.begin() + begin, order_.begin() + mid,
                   order_.begin() + end, [&](uint32_t a, uint32_t b) {
                     return points_[a][axis] < points_[b][axis];
                   });
  const double split = points_[order_[mid]][axis];
  const int32_t left = Build(begin, mid);
  const int32_t right = Build(mid, end);
  Node& node = nodes_[id];
  node.axis = axis;
  node.split = split;
  node.left = left;
  node.right = right;
  return id;
}

std::vector<double> KdTree::NearestSquaredDistances(size_t query, size_t k) const {
  Candidates best(k);
  if (nodes_.empty() || k == 0) return std::move(best).Sorted();
  const Vec3& q = points_[query];

  // Explicit stack of (node, lower bound on squared distance to its region).
  std::vector<std::pair<int32_t, double>> stack;
  stack.emplace_back(0, 0.0);
  while (!stack.empty()) {
    auto [id, bound] = stack.back();
    stack.pop_back();
    if (best.full() && bound >= best.worst()) continue;
    const Node& node = nodes_[id];
    if (node.left < 0) {
      for (uint32_t i = node.begin; i < node.end; ++i) {
        if (order_[i] == query) continue;
        best.Offer(SquaredDistance(q, points_[order_[i]]));
      }
      continue;
    }
    const double diff = q[node.axis] - node.split;
    const double far_bound = std::max(bound, diff * diff);
    const int32_t near = diff < 0.0 ? node.left : node.right;
    const int32_t far = diff < 0.0 ? node.right : node.left;
    // Far child pushed first so the near child is expanded first.
    stack.emplace_back(far, far_bound);
    stack.emplace_back(near, bound);
  }
  return std::move(best).Sorted();
}

std::vector<double> MeanNeighborDistances(std::span<const Vec3> points, size_t k,
                                          int workers, size_t brute_force_below) {
  const size_t n = points.size();
  std::vector<double> means(n, 0.0);
  if (n == 0 || k == 0) return means;

  if (n < brute_force_below) {
    ParallelChunks(n, workers, [&](int, size_t begin, size_t end) {
      std::vector<double> d2;
      d2.reserve(n);
      for (size_t i = begin; i < end; ++i) {
        d2.clear();
        for (size_t j = 0; j < n; ++j) {
          if (j != i) d2.push_back(SquaredDistance(points[i], points[j]));
        }
        const size_t kk = std::min(k, d2.size());
        std::partial_sort(d2.begin(), d2.begin() + kk, d2.end());
        d2.resize(kk);
        means[i] = MeanOfSorted(d2, kk);
      }
    });
    return means;
  }

  const KdTree tree(points);
  ParallelChunks(n, workers, [&](int, size_t begin, size_t end) {
    for (size_t i = begin; i < end; ++i) {
      const std::vector<double> d2 = tree.NearestSquaredDistances(i, k);
      means[i] = MeanOfSorted(d2, d2.size());
    }
  });
  return means;
}

}  // namespace occlabel
