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

#ifndef OCCLABEL_PARALLEL_H_
#define OCCLABEL_PARALLEL_H_

#include <algorithm>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace occlabel {

// Splits [0, n) into `parts` contiguous chunks and runs fn(part, begin, end)
// for each, one thread per chunk beyond the first. Chunk boundaries depend
// only on (n, parts), so callers that merge per-part results in part order
// get output independent of scheduling. The first exception thrown by any
// part is rethrown after all threads join.
template <typename Fn>
void ParallelChunks(size_t n, int parts, Fn&& fn) {
  parts = std::max(1, std::min<int>(parts, static_cast<int>(std::max<size_t>(n, 1))));
  auto bounds = [n, parts](int p) { return n * static_cast<size_t>(p) / parts; };
  if (parts == 1) {
    fn(0, size_t{0}, n);
    return;
  }
  std::vector<std::exception_ptr> errors(parts);
  {
    std::vector<std::jthread> threads;
    threads.reserve(parts - 1);
    for (int p = 1; p < parts; ++p) {
      threads.emplace_back([&, p] {
        try {
          fn(p, bounds(p), bounds(p + 1));
        } catch (...) {
          errors[p] = std::current_exception();
        }
      });
    }
    try {
      fn(0, bounds(0), bounds(1));
    } catch (...) {
      errors[0] = std::current_exception();
    }
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

}  // namespace occlabel

#endif  // OCCLABEL_PARALLEL_H_
