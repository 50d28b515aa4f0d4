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

#ifndef OCCLABEL_TENSOR_IO_H_
#define OCCLABEL_TENSOR_IO_H_

// Dense tensor container and its binary file format.
//
// File layout (all integers little-endian):
//    magic   - 4 ASCII bytes "VXT1"
//    dtype   - u8 (u8 = 0, f32 = 1, u64 = 2)
//    ndim    - u8
//    dims    - ndim x u32
//    payload - product(dims) elements, row-major, little-endian
//
// Nothing follows the payload; trailing bytes are rejected.

#include <cstdint>
#include <filesystem>
#include <span>
#include <variant>
#include <vector>

#include "occlabel/error.h"

namespace occlabel {

enum class DType : uint8_t { kU8 = 0, kF32 = 1, kU64 = 2 };

const char* DTypeName(DType dtype);
size_t DTypeSize(DType dtype);

class Tensor {
 public:
  using Storage =
      std::variant<std::vector<uint8_t>, std::vector<float>, std::vector<uint64_t>>;

  // Throws ShapeError if any dim is zero or the element count disagrees
  // with product(dims).
  Tensor(std::vector<uint32_t> dims, Storage data);

  template <typename T>
  static Tensor Zeros(std::vector<uint32_t> dims) {
    size_t n = 1;
    for (uint32_t d : dims) n *= d;
    return Tensor(std::move(dims), std::vector<T>(n, T{}));
  }

  DType dtype() const;
  const std::vector<uint32_t>& dims() const { return dims_; }
  size_t ndim() const { return dims_.size(); }
  size_t size() const;

  // Typed access. Throws FormatError naming both dtypes on mismatch.
  template <typename T>
  const std::vector<T>& values() const;
  template <typename T>
  std::vector<T>& mutable_values();

  const Storage& storage() const { return data_; }

  bool operator==(const Tensor& other) const = default;

 private:
  std::vector<uint32_t> dims_;
  Storage data_;
};

// Encodes to the exact on-disk byte sequence.
std::vector<uint8_t> EncodeTensor(const Tensor& tensor);
// Inverse of EncodeTensor. Errors: "bad magic", "unsupported dtype",
// "truncated header", "truncated payload", "dims/payload mismatch".
Tensor DecodeTensor(std::span<const uint8_t> bytes);

void WriteTensor(const std::filesystem::path& path, const Tensor& tensor);
Tensor ReadTensor(const std::filesystem::path& path);

}  // namespace occlabel

#endif  // OCCLABEL_TENSOR_IO_H_
