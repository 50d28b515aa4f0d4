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

#include "occlabel/temporal.h"

#include <algorithm>

#include "occlabel/error.h"

namespace occlabel {

SemanticPointCloud FilterDynamic(const SemanticPointCloud& cloud,
                                 const LabelSpace& space) {
  SemanticPointCloud out;
  out.Reserve(cloud.size());
  for (size_t i = 0; i < cloud.size(); ++i) {
    if (!space.IsDynamic(cloud.labels[i])) {
      out.Append(cloud.points[i], cloud.labels[i], cloud.stamps[i]);
    }
  }
  return out;
}

SemanticPointCloud Densify(const SemanticPointCloud& current,
                           std::span<const SemanticPointCloud> history,
                           const RigidTransform& global_to_ego,
                           const LabelSpace& space) {
  size_t total = current.size();
  for (const auto& h : history) total += h.size();

  SemanticPointCloud out;
  out.Reserve(total);
  auto append = [&](const SemanticPointCloud& c, bool keep_dynamic) {
    for (size_t i = 0; i < c.size(); ++i) {
      if (!keep_dynamic && space.IsDynamic(c.labels[i])) continue;
      out.Append(global_to_ego.Apply(c.points[i]), c.labels[i], c.stamps[i]);
    }
  };
  append(current, true);
  for (const auto& h : history) append(h, false);
  return out;
}

SequenceContext::SequenceContext(size_t max_history) : max_history_(max_history) {
  if (max_history_ > kMaxHistory) {
    throw InvariantError("history is capped at " + std::to_string(kMaxHistory));
  }
}

void SequenceContext::Push(std::string sample_id, SemanticPointCloud global_cloud) {
  if (max_history_ == 0) return;
  entries_.push_back(Entry{std::move(sample_id), std::move(global_cloud)});
  while (entries_.size() > max_history_) entries_.pop_front();
}

std::vector<SemanticPointCloud> SequenceContext::History(size_t limit) const {
  const size_t n = std::min(limit, entries_.size());
  std::vector<SemanticPointCloud> out;
  out.reserve(n);
  for (size_t d = 1; d <= n; ++d) {
    SemanticPointCloud c = entries_[entries_.size() - d].cloud;
    std::fill(c.stamps.begin(), c.stamps.end(), -static_cast<int32_t>(d));
    out.push_back(std::move(c));
  }
  return out;
}

std::vector<std::string> SequenceContext::HistoryIds(size_t limit) const {
  const size_t n = std::min(limit, entries_.size());
  std::vector<std::string> ids;
  for (size_t d = 1; d <= n; ++d) ids.push_back(entries_[entries_.size() - d].sample_id);
  return ids;
}

SemanticPointCloud SequenceContext::DensifyCurrent(const SemanticPointCloud& current,
                                                   const RigidTransform& global_to_ego,
                                                   const LabelSpace& space,
                                                   size_t limit) const {
  // Same result as Densify(current, History(limit), ...) without copying
  // the history clouds.
  const size_t n = std::min(limit, entries_.size());
  SemanticPointCloud out = Densify(current, {}, global_to_ego, space);
  for (size_t d = 1; d <= n; ++d) {
    const SemanticPointCloud& c = entries_[entries_.size() - d].cloud;
    for (size_t i = 0; i < c.size(); ++i) {
      if (space.IsDynamic(c.labels[i])) continue;
      out.Append(global_to_ego.Apply(c.points[i]), c.labels[i],
                 -static_cast<int32_t>(d));
    }
  }
  return out;
}

}  // namespace occlabel
