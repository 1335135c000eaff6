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

#include "visenc/image.hpp"

#include <string>

namespace visenc {

RgbImage RgbImage::from_bytes(int width, int height,
                              std::span<const std::uint8_t> rgb) {
  RgbImage img(width, height, PixelFormat::kByte);
  if (rgb.size() != img.size() * 3) {
    throw StructuralError("byte buffer size " + std::to_string(rgb.size()) +
                          " does not match " + std::to_string(width) + "x" +
                          std::to_string(height) + " RGB");
  }
  for (std::size_t i = 0; i < img.size(); ++i) {
    img.set_byte(i, {rgb[3 * i], rgb[3 * i + 1], rgb[3 * i + 2]});
  }
  return img;
}

RgbImage RgbImage::quantized() const {
  RgbImage out(width(), height(), PixelFormat::kByte);
  for (std::size_t i = 0; i < size(); ++i) out.set_byte(i, byte_at(i));
  return out;
}

std::vector<std::uint8_t> RgbImage::to_bytes() const {
  std::vector<std::uint8_t> out(size() * 3);
  for (std::size_t i = 0; i < size(); ++i) {
    const Rgb8 c = byte_at(i);
    out[3 * i] = c.r;
    out[3 * i + 1] = c.g;
    out[3 * i + 2] = c.b;
  }
  return out;
}

void RgbImage::validate() const {
  for (std::size_t i = 0; i < size(); ++i) {
    const Rgb& p = pixels_[i];
    for (int c = 0; c < 3; ++c) {
      const double v = p[c];
      if (!std::isfinite(v) || v < 0.0 || v > 1.0) {
        throw StructuralError("pixel " + std::to_string(i) +
                              " has channel outside [0, 1]");
      }
      if (format_ == PixelFormat::kByte) {
        const double scaled = v * 255.0;
        if (std::abs(scaled - std::round(scaled)) > 1e-9) {
          throw StructuralError("pixel " + std::to_string(i) +
                                " is off the 8-bit lattice");
        }
      }
    }
  }
}

std::size_t DepthMap::valid_count() const {
  std::size_t n = 0;
  for (auto v : valid.data()) n += v ? 1 : 0;
  return n;
}

void DepthMap::validate() const {
  if (!valid.same_shape(values)) {
    throw StructuralError("depth values and validity mask differ in shape");
  }
  for (std::size_t i = 0; i < size(); ++i) {
    if (!valid[i]) continue;
    const double d = values[i];
    if (!std::isfinite(d) || d < 0.0) {
      throw DomainError("valid depth pixel " + std::to_string(i) +
                        " is negative or non-finite");
    }
  }
}

std::size_t NormalMap::valid_count() const {
  std::size_t n = 0;
  for (auto v : valid.data()) n += v ? 1 : 0;
  return n;
}

}  // namespace visenc
