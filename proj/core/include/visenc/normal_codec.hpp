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

// Camera-space surface normals <-> RGB.
//
//   R = (1 - x) / 2,  G = (1 + y) / 2,  B = (1 + z) / 2
//
// The x channel is inverted so that left-facing surfaces (-1, 0, 0) render
// pinkish red, up-facing (0, 1, 0) light green and camera-facing (0, 0, 1)
// light blue. Invalid pixels encode as mid-gray, the zero vector.

#ifndef VISENC_NORMAL_CODEC_HPP_
#define VISENC_NORMAL_CODEC_HPP_

#include "visenc/image.hpp"

namespace visenc {

inline constexpr double kUnitNormTolerance = 1e-6;
inline constexpr double kDefaultMinNorm = 0.2;

Rgb encode_normal(const Vec3& n);
Vec3 decode_normal_raw(const Rgb& c);

// Throws DomainError if a valid pixel is not unit length within
// kUnitNormTolerance.
RgbImage encode_normals(const NormalMap& map);

// Pixels whose raw decoded vector is shorter than min_norm are invalid; the
// rest are renormalized. Throws ConfigError unless 0 < min_norm < 1.
NormalMap decode_normals(const RgbImage& img,
                         double min_norm = kDefaultMinNorm);

}  // namespace visenc

#endif  // VISENC_NORMAL_CODEC_HPP_
