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

#ifndef OCCLABEL_SRC_JSON_UTIL_H_
#define OCCLABEL_SRC_JSON_UTIL_H_

#include <array>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "occlabel/error.h"
#include "occlabel/geometry.h"

namespace occlabel::internal {

using json = nlohmann::json;

inline json ParseJson(std::string_view text, const std::string& what) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw FormatError(what + " parse error: " + e.what());
  }
}

inline std::string ReadTextFile(const std::filesystem::path& path,
                                const std::string& what) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + what + ": " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void WriteTextFile(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw IoError("cannot open for writing: " + path.string());
  out << text;
  if (!out) throw IoError("write failed: " + path.string());
}

template <size_t N>
std::array<double, N> NumberArray(const json& node, const std::string& where) {
  if (!node.is_array() || node.size() != N) {
    throw FormatError(where + ": expected an array of " + std::to_string(N) +
                      " numbers");
  }
  std::array<double, N> out{};
  for (size_t i = 0; i < N; ++i) {
    if (!node[i].is_number()) throw FormatError(where + ": non-numeric entry");
    out[i] = node[i].get<double>();
  }
  return out;
}

inline Vec3 Vec3Of(const json& node, const std::string& where) {
  const auto a = NumberArray<3>(node, where);
  return Vec3(a[0], a[1], a[2]);
}

inline const json& Required(const json& obj, const char* key, const std::string& where) {
  auto it = obj.find(key);
  if (it == obj.end()) {
    throw FormatError(where + ": missing required field '" + key + "'");
  }
  return *it;
}

inline RigidTransform CheckedTransform(const json& node, const std::string& what) {
  const auto m = NumberArray<16>(node, what);
  try {
    return RigidTransform::FromRowMajor(m);
  } catch (const InvariantError& e) {
    throw InvariantError(what + ": " + e.what());
  }
}

inline json TransformJson(const RigidTransform& t) {
  const auto m = t.ToRowMajor();
  return json(std::vector<double>(m.begin(), m.end()));
}

inline json MatrixJson(const Mat3& k) {
  std::vector<double> out;
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c) out.push_back(k(r, c));
  return json(out);
}

inline Mat3 MatrixOf(const json& node, const std::string& where) {
  const auto k = NumberArray<9>(node, where);
  Mat3 m;
  m << k[0], k[1], k[2], k[3], k[4], k[5], k[6], k[7], k[8];
  return m;
}

}  // namespace occlabel::internal

#endif  // OCCLABEL_SRC_JSON_UTIL_H_
