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

#ifndef OCCLABEL_ERROR_H_
#define OCCLABEL_ERROR_H_

#include <stdexcept>
#include <string>

namespace occlabel {

// Base class for every error raised by the library. `kind()` is a short
// stable token used by the CLI's machine-parsable error line.
class Error : public std::runtime_error {
 public:
  Error(std::string kind, const std::string& message)
      : std::runtime_error(message), kind_(std::move(kind)) {}

  const std::string& kind() const { return kind_; }

 private:
  std::string kind_;
};

// Filesystem failures (open, read, write).
class IoError : public Error {
 public:
  explicit IoError(const std::string& message) : Error("io", message) {}
};

// Malformed on-disk data: bad magic, truncation, parse failures.
class FormatError : public Error {
 public:
  explicit FormatError(const std::string& message) : Error("format", message) {}
};

// Well-formed data that violates a domain invariant, or a bad argument.
class InvariantError : public Error {
 public:
  explicit InvariantError(const std::string& message)
      : Error("invariant", message) {}
};

// Operands whose shapes/dims do not agree.
class ShapeError : public Error {
 public:
  explicit ShapeError(const std::string& message) : Error("shape", message) {}
};

}  // namespace occlabel

#endif  // OCCLABEL_ERROR_H_
