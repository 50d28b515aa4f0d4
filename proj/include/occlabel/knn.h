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

#ifndef OCCLABEL_KNN_H_
#define OCCLABEL_KNN_H_

#include <cstdint>
#include <span>
#include <vector>

#include "occlabel/geometry.h"

namespace occlabel {

// Static k-d tree over a borrowed point array. Exact k-nearest-neighbour
// queries; the points must outlive the tree.
class KdTree {
 public:
  explicit KdTree(std::span<const Vec3> points);

  // Squared distances from points[query] to its k nearest other points
  // (the query index itself is excluded; coincident points are not),
  // ascending. Returns fewer than k when the tree has fewer points.
  std::vector<double> NearestSquaredDistances(size_t query, size_t k) const;

 private:
  struct Node {
    // Leaf when `left < 0`: covers order_[begin, end).
    int32_t left = -1;
    int32_t right = -1;
    uint32_t begin = 0;
    uint32_t end = 0;
    int axis = 0;
    double split = 0.0;
  };

  int32_t Build(uint32_t begin, uint32_t end);

  std::span<const Vec3> points_;
  std::vector<uint32_t> order_;
  std::vector<Node> nodes_;
};

// Mean Euclidean distance from every point to its k nearest other points.
// Distances are summed in ascending order so the result is bit-identical
// between the brute-force path (below `brute_force_below` points) and the
// tree path.
std::vector<double> MeanNeighborDistances(std::span<const Vec3> points, size_t k,
                                          int workers = 1,
                                          size_t brute_force_below = 2000);

}  // namespace occlabel

#endif  // OCCLABEL_KNN_H_
