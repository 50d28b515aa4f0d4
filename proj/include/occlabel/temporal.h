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

#ifndef OCCLABEL_TEMPORAL_H_
#define OCCLABEL_TEMPORAL_H_

#include <deque>
#include <span>
#include <string>
#include <vector>

#include "occlabel/geometry.h"
#include "occlabel/label_space.h"
#include "occlabel/point_cloud.h"

namespace occlabel {

inline constexpr size_t kMaxHistory = 13;

// Keeps only points whose label is not in the dynamic set. Order preserved.
SemanticPointCloud FilterDynamic(const SemanticPointCloud& cloud,
                                 const LabelSpace& space);

// global_to_ego applied to current ∪ FilterDynamic(history[0]) ∪ ... .
// All inputs are in the global frame. The current cloud keeps its dynamic
// points. Output order: current, then history in the given order.
SemanticPointCloud Densify(const SemanticPointCloud& current,
                           std::span<const SemanticPointCloud> history,
                           const RigidTransform& global_to_ego,
                           const LabelSpace& space);

// Sliding window over the last `max_history` samples of a sequence, each
// stored as a global-frame cloud. The context owns the temporal offsets:
// History() re-stamps the entry d samples back with -d.
class SequenceContext {
 public:
  explicit SequenceContext(size_t max_history = kMaxHistory);

  size_t max_history() const { return max_history_; }
  size_t size() const { return entries_.size(); }

  // Appends the newest sample; evicts the oldest beyond max_history.
  void Push(std::string sample_id, SemanticPointCloud global_cloud);

  // Up to `limit` most recent entries, newest first (offset -1, -2, ...).
  std::vector<SemanticPointCloud> History(size_t limit = kMaxHistory) const;
  std::vector<std::string> HistoryIds(size_t limit = kMaxHistory) const;

  // Densify(current, History(limit), global_to_ego, space).
  SemanticPointCloud DensifyCurrent(const SemanticPointCloud& current,
                                    const RigidTransform& global_to_ego,
                                    const LabelSpace& space,
                                    size_t limit = kMaxHistory) const;

 private:
  struct Entry {
    std::string sample_id;
    SemanticPointCloud cloud;
  };
  size_t max_history_;
  std::deque<Entry> entries_;  // oldest first
};

}  // namespace occlabel

#endif  // OCCLABEL_TEMPORAL_H_
