/*
Copyright 2026 The visenc Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS-IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
*/

#ifndef VISENC_ERROR_HPP_
#define VISENC_ERROR_HPP_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace visenc {

// Every error raised by the library derives from Error. The CLI maps
// ConfigError and FormatError to exit code 2 and everything else to 1.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Argument outside the mathematical domain of an operation (negative depth,
// t >= 1, non-unit normal, Z <= 0).
class DomainError : public Error {
 public:
  using Error::Error;
};

// Invalid codec, palette, LUT or intrinsics configuration.
class ConfigError : public Error {
 public:
  using Error::Error;
};

// Inconsistent dimensions or indices inside a data structure.
class StructuralError : public Error {
 public:
  using Error::Error;
};

// Instance color generator cannot satisfy the separation constraint.
class CapacityError : public Error {
 public:
  using Error::Error;
};

// A metric was requested over zero jointly valid pixels.
class EmptyEvaluationError : public Error {
 public:
  using Error::Error;
};

// Whole-run failure in the evaluation harness.
class RunError : public Error {
 public:
  using Error::Error;
};

// Malformed or unsupported file. offset is the byte position at which
// parsing failed.
class FormatError : public Error {
 public:
  FormatError(const std::string& what, std::size_t offset)
      : Error(what + " (at byte " + std::to_string(offset) + ")"),
        offset_(offset) {}

  std::size_t offset() const noexcept { return offset_; }

 private:
  std::size_t offset_;
};

}  // namespace visenc

#endif  // VISENC_ERROR_HPP_
