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

// Deterministic corruption models standing in for an imperfect generator.
//
// Ops are applied in order and channels are clamped to [0, 1] after each.
// Textual form, as accepted by DegradeSpec::parse:
//
//   quantize8              round to the 8-bit lattice
//   noise:SIGMA            i.i.d. gaussian noise per channel, 8-bit units
//   blur:RADIUS            (2r+1)^2 box filter, window clipped at borders
//   shift:DR:DG:DB         add a constant per channel, 8-bit units
//
// e.g. "noise:4,quantize8".
//
// Noise is reproducible across platforms: one std::mt19937_64 seeded with
// DegradeSpec::seed feeds every noise op in turn. Each output word w gives
// u = (w >> 11) * 2^-53; pairs (u1, u2) yield two normals by Box-Muller,
// sqrt(-2 ln(1 - u1)) * {cos, sin}(2 pi u2), consumed in pixel raster order
// and r, g, b channel order.

#ifndef VISENC_DEGRADE_HPP_
#define VISENC_DEGRADE_HPP_

#include <array>
#include <cstdint>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "visenc/image.hpp"

namespace visenc {

struct Quantize8 {
  friend bool operator==(const Quantize8&, const Quantize8&) = default;
};
struct GaussianNoise {
  double sigma = 0.0;
  friend bool operator==(const GaussianNoise&, const GaussianNoise&) = default;
};
struct BoxBlur {
  int radius = 0;
  friend bool operator==(const BoxBlur&, const BoxBlur&) = default;
};
struct ChromaShift {
  std::array<double, 3> delta{};
  friend bool operator==(const ChromaShift&, const ChromaShift&) = default;
};

using DegradeOp = std::variant<Quantize8, GaussianNoise, BoxBlur, ChromaShift>;

struct DegradeSpec {
  std::uint64_t seed = 0;
  std::vector<DegradeOp> ops;

  // Throws ConfigError for negative sigma or radius or non-finite values.
  void validate() const;
  // Throws ConfigError on syntax errors.
  static DegradeSpec parse(std::string_view text, std::uint64_t seed = 0);
  std::string to_string() const;

  friend bool operator==(const DegradeSpec&, const DegradeSpec&) = default;
};

RgbImage degrade(const RgbImage& img, const DegradeSpec& spec);

}  // namespace visenc

#endif  // VISENC_DEGRADE_HPP_
