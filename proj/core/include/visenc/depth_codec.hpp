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

// Invertible depth <-> RGB codec.
//
// Metric depth d in [0, inf) is first curved into a normalized distance
// t in [0, 1) by a rescaled power transform
//
//     f(d) = 1 - (1 - d / (lambda * c))^(lambda + 1),   lambda < -1, c > 0
//
// and t is then mapped to a color by walking a Hamiltonian path along the
// edges of the RGB cube from black to white. Decoding projects a color onto
// the nearest path segment, reads off t, and inverts the power transform.
// Alternative colormaps (viridis, plasma, inferno, grayscale or a user LUT)
// are supported through ColorLut.

#ifndef VISENC_DEPTH_CODEC_HPP_
#define VISENC_DEPTH_CODEC_HPP_

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "visenc/image.hpp"

namespace visenc {

struct PowerTransformParams {
  double lambda = -3.0;
  double c = 10.0 / 3.0;

  // Throws ConfigError unless lambda < -1 and c > 0 (both finite).
  void validate() const;
};

// Normalized distance for depth d (meters). Strictly increasing, f(0) = 0,
// tends to 1 as d grows. Throws DomainError for negative or non-finite d.
double curve_depth(double d, const PowerTransformParams& p = {});

// Exact inverse of curve_depth. Throws DomainError unless 0 <= t < 1.
double uncurve_depth(double t, const PowerTransformParams& p = {});

// Eight distinct unit-cube vertices from (0,0,0) to (1,1,1), each step
// along one cube edge.
class CubePath {
 public:
  // (0,0,0) (0,0,1) (0,1,1) (0,1,0) (1,1,0) (1,0,0) (1,0,1) (1,1,1)
  CubePath();
  explicit CubePath(const std::array<Rgb, 8>& corners);

  // Parses eight octal digits, each digit encoding a vertex as 4r + 2g + b.
  // The default path is "01326457".
  static CubePath parse(std::string_view order);
  std::string to_string() const;

  const std::array<Rgb, 8>& corners() const { return corners_; }
  const Rgb& operator[](std::size_t i) const { return corners_[i]; }

  // Axis (0 = r, 1 = g, 2 = b) changed by segment i, and the sign of the
  // change.
  int segment_axis(std::size_t i) const { return axis_[i]; }
  double segment_sign(std::size_t i) const { return sign_[i]; }

  static constexpr std::size_t kSegments = 7;

 private:
  void validate_and_index();

  std::array<Rgb, 8> corners_;
  std::array<int, kSegments> axis_{};
  std::array<double, kSegments> sign_{};
};

// Point on the path at normalized distance t. Throws DomainError unless
// 0 <= t <= 1.
Rgb path_color(double t, const CubePath& path = CubePath());

struct PathProjection {
  double t = 0.0;         // normalized distance of the closest path point
  double distance = 0.0;  // Euclidean distance from the input to that point
};

// Closest point on the path. Exact ties go to the smallest t.
PathProjection project_onto_path(const Rgb& rgb,
                                 const CubePath& path = CubePath());

inline double path_project(const Rgb& rgb, const CubePath& path = CubePath()) {
  return project_onto_path(rgb, path).t;
}

struct DepthCodecConfig {
  PowerTransformParams transform;
  CubePath path;
  // Encoded normalized distances are clamped to t_max; decoding clamps too,
  // so uncurve_depth(t_max) is the largest representable depth.
  double t_max = 0.995;
  // Invalid pixels are painted with this color. Any decoded color farther
  // than invalid_distance_threshold from the path is reported invalid.
  Rgb invalid_color{0.5, 0.5, 0.5};
  double invalid_distance_threshold = 0.35;

  void validate() const;
  double max_depth() const { return uncurve_depth(t_max, transform); }
};

// Output is PixelFormat::kReal; call quantized() to obtain 8-bit targets.
RgbImage encode_depth(const DepthMap& map, const DepthCodecConfig& cfg = {});
DepthMap decode_depth(const RgbImage& img, const DepthCodecConfig& cfg = {});

// Colormap sampled at N >= 2 equally spaced normalized distances in [0, 1].
struct ColorLut {
  std::string name;
  std::vector<Rgb> entries;

  // Throws ConfigError if fewer than two entries or a channel is out of
  // range.
  void validate() const;
  // Piecewise-linear interpolation at t in [0, 1].
  Rgb sample(double t) const;
};

// "grayscale", "viridis", "plasma" or "inferno". Throws ConfigError for
// other names.
ColorLut builtin_lut(std::string_view name);
std::vector<std::string> builtin_lut_names();

struct LutCodecOptions {
  // Dense samples along the LUT curve used to seed decoding.
  std::size_t decode_samples = 4096;
  // Invalid pixels are painted with the first LUT entry (zero depth) unless
  // a color is given here.
  std::optional<Rgb> invalid_color;
  // When set, decoded colors farther than this from the LUT curve are
  // reported invalid.
  std::optional<double> invalid_distance_threshold;
  // Same role as DepthCodecConfig::t_max.
  double t_max = 0.995;
};

RgbImage encode_depth_lut(const DepthMap& map, const ColorLut& lut,
                          const PowerTransformParams& p = {},
                          const LutCodecOptions& opts = {});
DepthMap decode_depth_lut(const RgbImage& img, const ColorLut& lut,
                          const PowerTransformParams& p = {},
                          const LutCodecOptions& opts = {});

// Projection of a color onto a LUT curve. Exposed for tests.
PathProjection project_onto_lut(const Rgb& rgb, const ColorLut& lut,
                                std::size_t samples);

}  // namespace visenc

#endif  // VISENC_DEPTH_CODEC_HPP_
