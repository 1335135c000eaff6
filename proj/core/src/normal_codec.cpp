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

#include "visenc/normal_codec.hpp"

#include <cmath>
#include <string>

namespace visenc {

Rgb encode_normal(const Vec3& n) {
  return {(1.0 - n.x) / 2.0, (1.0 + n.y) / 2.0, (1.0 + n.z) / 2.0};
}

Vec3 decode_normal_raw(const Rgb& c) {
  return {1.0 - 2.0 * c.r, 2.0 * c.g - 1.0, 2.0 * c.b - 1.0};
}

RgbImage encode_normals(const NormalMap& map) {
  if (!map.valid.same_shape(map.vectors)) {
    throw StructuralError("normal vectors and validity mask differ in shape");
  }
  RgbImage out(map.width(), map.height(), PixelFormat::kReal,
               Rgb{0.5, 0.5, 0.5});
  for (std::size_t i = 0; i < map.size(); ++i) {
    if (!map.valid[i]) continue;
    const Vec3& n = map.vectors[i];
    const double len = n.norm();
    if (!std::isfinite(len) || std::abs(len - 1.0) > kUnitNormTolerance) {
      throw DomainError("normal at pixel " + std::to_string(i) +
                        " is not unit length (|n| = " + std::to_string(len) +
                        ")");
    }
    out[i] = encode_normal(n);
  }
  return out;
}

NormalMap decode_normals(const RgbImage& img, double min_norm) {
  if (!(min_norm > 0.0 && min_norm < 1.0)) {
    throw ConfigError("min_norm must lie in (0, 1), got " +
                      std::to_string(min_norm));
  }
  NormalMap out(img.width(), img.height(), Vec3{}, false);
  for (std::size_t i = 0; i < img.size(); ++i) {
    const Vec3 v = decode_normal_raw(img[i]);
    const double len = v.norm();
    if (!std::isfinite(len) || len < min_norm) continue;
    out.vectors[i] = v * (1.0 / len);
    out.valid[i] = 1;
  }
  return out;
}

}  // namespace visenc
