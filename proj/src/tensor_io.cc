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

#include "occlabel/tensor_io.h"

#include <bit>
#include <cstring>
#include <fstream>
#include <iterator>
#include <string>

namespace occlabel {
namespace {

constexpr char kMagic[4] = {'V', 'X', 'T', '1'};
constexpr size_t kFixedHeader = 6;  // magic + dtype + ndim

template <typename T>
constexpr DType DTypeOf();
template <>
constexpr DType DTypeOf<uint8_t>() { return DType::kU8; }
template <>
constexpr DType DTypeOf<float>() { return DType::kF32; }
template <>
constexpr DType DTypeOf<uint64_t>() { return DType::kU64; }

void PutU32(std::vector<uint8_t>& out, uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<uint8_t>(v >> (8 * i)));
}

uint32_t GetU32(const uint8_t* p) {
  return static_cast<uint32_t>(p[0]) | (static_cast<uint32_t>(p[1]) << 8) |
         (static_cast<uint32_t>(p[2]) << 16) | (static_cast<uint32_t>(p[3]) << 24);
}

template <typename T>
void PutElements(std::vector<uint8_t>& out, const std::vector<T>& values) {
  if constexpr (sizeof(T) == 1) {
    out.insert(out.end(), values.begin(), values.end());
  } else {
    using Bits = std::conditional_t<sizeof(T) == 4, uint32_t, uint64_t>;
    for (T v : values) {
      Bits b = std::bit_cast<Bits>(v);
      for (size_t i = 0; i < sizeof(T); ++i) {
        out.push_back(static_cast<uint8_t>(b >> (8 * i)));
      }
    }
  }
}

template <typename T>
std::vector<T> GetElements(const uint8_t* p, size_t count) {
  std::vector<T> values(count);
  if constexpr (sizeof(T) == 1) {
    std::memcpy(values.data(), p, count);
  } else {
    using Bits = std::conditional_t<sizeof(T) == 4, uint32_t, uint64_t>;
    for (size_t n = 0; n < count; ++n) {
      Bits b = 0;
      for (size_t i = 0; i < sizeof(T); ++i) {
        b |= static_cast<Bits>(p[n * sizeof(T) + i]) << (8 * i);
      }
      values[n] = std::bit_cast<T>(b);
    }
  }
  return values;
}

}  // namespace

const char* DTypeName(DType dtype) {
  switch (dtype) {
    case DType::kU8: return "u8";
    case DType::kF32: return "f32";
    case DType::kU64: return "u64";
  }
  return "unknown";
}

size_t DTypeSize(DType dtype) {
  switch (dtype) {
    case DType::kU8: return 1;
    case DType::kF32: return 4;
    case DType::kU64: return 8;
  }
  throw FormatError("unsupported dtype");
}

Tensor::Tensor(std::vector<uint32_t> dims, Storage data)
    : dims_(std::move(dims)), data_(std::move(data)) {
  if (dims_.empty() || dims_.size() > 255) {
    throw ShapeError("tensor rank must be in [1, 255], got " +
                     std::to_string(dims_.size()));
  }
  size_t expected = 1;
  for (uint32_t d : dims_) {
    if (d == 0) throw ShapeError("tensor dims must all be >= 1");
    expected *= d;
  }
  if (size() != expected) {
    throw ShapeError("dims/payload mismatch: dims imply " +
                     std::to_string(expected) + " elements, got " +
                     std::to_string(size()));
  }
}

DType Tensor::dtype() const {
  return static_cast<DType>(data_.index());
}

size_t Tensor::size() const {
  return std::visit([](const auto& v) { return v.size(); }, data_);
}

template <typename T>
const std::vector<T>& Tensor::values() const {
  if (const auto* v = std::get_if<std::vector<T>>(&data_)) return *v;
  throw FormatError(std::string("dtype mismatch: tensor is ") +
                    DTypeName(dtype()) + ", requested " +
                    DTypeName(DTypeOf<T>()));
}

template <typename T>
std::vector<T>& Tensor::mutable_values() {
  if (auto* v = std::get_if<std::vector<T>>(&data_)) return *v;
  throw FormatError(std::string("dtype mismatch: tensor is ") +
                    DTypeName(dtype()) + ", requested " +
                    DTypeName(DTypeOf<T>()));
}

template const std::vector<uint8_t>& Tensor::values<uint8_t>() const;
template const std::vector<float>& Tensor::values<float>() const;
template const std::vector<uint64_t>& Tensor::values<uint64_t>() const;
template std::vector<uint8_t>& Tensor::mutable_values<uint8_t>();
template std::vector<float>& Tensor::mutable_values<float>();
template std::vector<uint64_t>& Tensor::mutable_values<uint64_t>();

std::vector<uint8_t> EncodeTensor(const Tensor& tensor) {
  std::vector<uint8_t> out;
  out.reserve(kFixedHeader + 4 * tensor.ndim() +
              tensor.size() * DTypeSize(tensor.dtype()));
  out.insert(out.end(), std::begin(kMagic), std::end(kMagic));
  out.push_back(static_cast<uint8_t>(tensor.dtype()));
  out.push_back(static_cast<uint8_t>(tensor.ndim()));
  for (uint32_t d : tensor.dims()) PutU32(out, d);
  std::visit([&out](const auto& v) { PutElements(out, v); }, tensor.storage());
  return out;
}

Tensor DecodeTensor(std::span<const uint8_t> bytes) {
  if (bytes.size() < 4 || std::memcmp(bytes.data(), kMagic, 4) != 0) {
    throw FormatError("bad magic");
  }
  if (bytes.size() < kFixedHeader) throw FormatError("truncated header");
  const uint8_t dtype_byte = bytes[4];
  if (dtype_byte > static_cast<uint8_t>(DType::kU64)) {
    throw FormatError("unsupported dtype " + std::to_string(dtype_byte));
  }
  const auto dtype = static_cast<DType>(dtype_byte);
  const size_t ndim = bytes[5];
  if (ndim == 0) throw FormatError("dims/payload mismatch: ndim is 0");
  if (bytes.size() < kFixedHeader + 4 * ndim) {
    throw FormatError("truncated header");
  }
  std::vector<uint32_t> dims(ndim);
  size_t count = 1;
  for (size_t i = 0; i < ndim; ++i) {
    dims[i] = GetU32(bytes.data() + kFixedHeader + 4 * i);
    if (dims[i] == 0) throw FormatError("dims/payload mismatch: zero dim");
    count *= dims[i];
  }
  const size_t offset = kFixedHeader + 4 * ndim;
  const size_t payload = bytes.size() - offset;
  const size_t expected = count * DTypeSize(dtype);
  if (payload < expected) {
    throw FormatError("truncated payload: expected " + std::to_string(expected) +
                      " bytes, found " + std::to_string(payload));
  }
  if (payload > expected) {
    throw FormatError("dims/payload mismatch: " +
                      std::to_string(payload - expected) + " trailing bytes");
  }
  const uint8_t* p = bytes.data() + offset;
  switch (dtype) {
    case DType::kU8: return Tensor(std::move(dims), GetElements<uint8_t>(p, count));
    case DType::kF32: return Tensor(std::move(dims), GetElements<float>(p, count));
    case DType::kU64: return Tensor(std::move(dims), GetElements<uint64_t>(p, count));
  }
  throw FormatError("unsupported dtype");
}

void WriteTensor(const std::filesystem::path& path, const Tensor& tensor) {
  const std::vector<uint8_t> bytes = EncodeTensor(tensor);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open for writing: " + path.string());
  out.write(reinterpret_cast<const char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
  if (!out) throw IoError("write failed: " + path.string());
}

Tensor ReadTensor(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open for reading: " + path.string());
  std::vector<uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                             std::istreambuf_iterator<char>());
  try {
    return DecodeTensor(bytes);
  } catch (const FormatError& e) {
    throw FormatError(std::string(e.what()) + " (" + path.string() + ")");
  }
}

}  // namespace occlabel
