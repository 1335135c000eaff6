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

// Raster containers shared by every codec: a generic row-major grid, RGB
// pixels in real and 8-bit form, and the task-specific maps built on them.

#ifndef VISENC_IMAGE_HPP_
#define VISENC_IMAGE_HPP_

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "visenc/error.hpp"

namespace visenc {

// RGB triple with channels nominally in [0, 1].
struct Rgb {
  double r = 0.0;
  double g = 0.0;
  double b = 0.0;

  double operator[](int i) const { return i == 0 ? r : (i == 1 ? g : b); }
  double& operator[](int i) { return i == 0 ? r : (i == 1 ? g : b); }
  friend bool operator==(const Rgb&, const Rgb&) = default;
};

// RGB triple with 8-bit channels.
struct Rgb8 {
  std::uint8_t r = 0;
  std::uint8_t g = 0;
  std::uint8_t b = 0;

  friend bool operator==(const Rgb8&, const Rgb8&) = default;
};

// Rounds half away from zero after clamping to [0, 255].
inline std::uint8_t quantize_channel(double v) {
  const double scaled = std::clamp(v, 0.0, 1.0) * 255.0;
  return static_cast<std::uint8_t>(std::lround(scaled));
}

inline Rgb8 to_rgb8(const Rgb& c) {
  return {quantize_channel(c.r), quantize_channel(c.g), quantize_channel(c.b)};
}

inline Rgb to_rgb(const Rgb8& c) {
  return {c.r / 255.0, c.g / 255.0, c.b / 255.0};
}

inline double distance(const Rgb& a, const Rgb& b) {
  return std::sqrt((a.r - b.r) * (a.r - b.r) + (a.g - b.g) * (a.g - b.g) +
                   (a.b - b.b) * (a.b - b.b));
}

// Euclidean distance in 8-bit units.
inline double distance(const Rgb8& a, const Rgb8& b) {
  const double dr = double(a.r) - b.r;
  const double dg = double(a.g) - b.g;
  const double db = double(a.b) - b.b;
  return std::sqrt(dr * dr + dg * dg + db * db);
}

// Row-major 2D array. (x, y) addresses column x of row y.
template <typename T>
class Grid {
 public:
  Grid() = default;
  Grid(int width, int height, const T& fill = T{})
      : width_(checked_dim(width)),
        height_(checked_dim(height)),
        data_(static_cast<std::size_t>(width) * height, fill) {}

  int width() const { return width_; }
  int height() const { return height_; }
  std::size_t size() const { return data_.size(); }
  bool empty() const { return data_.empty(); }

  T& at(int x, int y) { return data_[index(x, y)]; }
  const T& at(int x, int y) const { return data_[index(x, y)]; }
  T& operator[](std::size_t i) { return data_[i]; }
  const T& operator[](std::size_t i) const { return data_[i]; }

  std::span<T> data() { return data_; }
  std::span<const T> data() const { return data_; }

  bool same_shape(int width, int height) const {
    return width_ == width && height_ == height;
  }
  template <typename U>
  bool same_shape(const Grid<U>& other) const {
    return same_shape(other.width(), other.height());
  }

  friend bool operator==(const Grid&, const Grid&) = default;

 private:
  static int checked_dim(int d) {
    if (d < 0) throw StructuralError("negative raster dimension");
    return d;
  }
  std::size_t index(int x, int y) const {
    return static_cast<std::size_t>(y) * width_ + x;
  }

  int width_ = 0;
  int height_ = 0;
  std::vector<T> data_;
};

using Mask = Grid<std::uint8_t>;

enum class PixelFormat {
  kReal,  // channels are arbitrary reals in [0, 1]
  kByte,  // channels are exact multiples of 1/255
};

// An RGB raster carrying an encoded task output. Pixels are always stored
// as reals in [0, 1]; the format flag records whether they are known to sit
// on the 8-bit lattice.
class RgbImage {
 public:
  RgbImage() = default;
  RgbImage(int width, int height, PixelFormat format = PixelFormat::kReal,
           Rgb fill = {})
      : pixels_(width, height, fill), format_(format) {}

  // Interleaved RGB bytes, row-major.
  static RgbImage from_bytes(int width, int height,
                             std::span<const std::uint8_t> rgb);

  int width() const { return pixels_.width(); }
  int height() const { return pixels_.height(); }
  std::size_t size() const { return pixels_.size(); }
  PixelFormat format() const { return format_; }

  Rgb& at(int x, int y) { return pixels_.at(x, y); }
  const Rgb& at(int x, int y) const { return pixels_.at(x, y); }
  Rgb& operator[](std::size_t i) { return pixels_[i]; }
  const Rgb& operator[](std::size_t i) const { return pixels_[i]; }
  std::span<const Rgb> pixels() const { return pixels_.data(); }

  Rgb8 byte_at(std::size_t i) const { return to_rgb8(pixels_[i]); }
  void set_byte(std::size_t i, Rgb8 c) { pixels_[i] = to_rgb(c); }

  // Rounds every channel half away from zero onto the 8-bit lattice.
  RgbImage quantized() const;
  std::vector<std::uint8_t> to_bytes() const;

  // Throws StructuralError if a channel is non-finite, outside [0, 1], or
  // (for kByte) off the 8-bit lattice.
  void validate() const;

  friend bool operator==(const RgbImage&, const RgbImage&) = default;

 private:
  Grid<Rgb> pixels_;
  PixelFormat format_ = PixelFormat::kReal;
};

// Per-pixel metric distance from the camera plane, in meters.
struct DepthMap {
  Grid<double> values;
  Mask valid;

  DepthMap() = default;
  DepthMap(int width, int height, double fill = 0.0, bool is_valid = true)
      : values(width, height, fill), valid(width, height, is_valid ? 1 : 0) {}

  int width() const { return values.width(); }
  int height() const { return values.height(); }
  std::size_t size() const { return values.size(); }

  std::size_t valid_count() const;
  // Throws StructuralError on shape mismatch and DomainError on negative or
  // non-finite valid depths.
  void validate() const;
};

struct Vec3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  double norm() const { return std::sqrt(x * x + y * y + z * z); }
  double dot(const Vec3& o) const { return x * o.x + y * o.y + z * o.z; }
  Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
  Vec3 operator-() const { return {-x, -y, -z}; }
  friend bool operator==(const Vec3&, const Vec3&) = default;
};

// Camera-space unit normals: +x right, +y up, +z out of the image plane.
struct NormalMap {
  Grid<Vec3> vectors;
  Mask valid;

  NormalMap() = default;
  NormalMap(int width, int height, Vec3 fill = {0, 0, 1}, bool is_valid = true)
      : vectors(width, height, fill), valid(width, height, is_valid ? 1 : 0) {}

  int width() const { return vectors.width(); }
  int height() const { return vectors.height(); }
  std::size_t size() const { return vectors.size(); }
  std::size_t valid_count() const;
};

// Per-pixel class index into a palette, or kBackground.
struct LabelMap {
  static constexpr std::int32_t kBackground = -1;

  Grid<std::int32_t> labels;

  LabelMap() = default;
  LabelMap(int width, int height, std::int32_t fill = kBackground)
      : labels(width, height, fill) {}

  int width() const { return labels.width(); }
  int height() const { return labels.height(); }
  std::size_t size() const { return labels.size(); }
  friend bool operator==(const LabelMap&, const LabelMap&) = default;
};

}  // namespace visenc

#endif  // VISENC_IMAGE_HPP_
