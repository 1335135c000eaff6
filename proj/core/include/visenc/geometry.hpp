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

// Pinhole unprojection of depth maps into point clouds.
//
// Pixel (u, v) has u rightward and v downward with the origin at the center
// of the top-left pixel. Depth is plane depth along the optical axis. Camera
// Y follows image v (no flip).

#ifndef VISENC_GEOMETRY_HPP_
#define VISENC_GEOMETRY_HPP_

#include <cstddef>
#include <optional>
#include <ostream>
#include <vector>

#include "visenc/image.hpp"

namespace visenc {

struct Intrinsics {
  double fx = 1.0;
  double fy = 1.0;
  double cx = 0.0;
  double cy = 0.0;

  // Throws ConfigError unless fx > 0 and fy > 0 (and all finite).
  void validate() const;
};

struct PixelDepth {
  double u = 0.0;
  double v = 0.0;
  double depth = 0.0;
};

struct PointCloud {
  std::vector<Vec3> points;
  std::vector<Rgb8> colors;  // empty, or one per point

  std::size_t size() const { return points.size(); }
  bool has_colors() const { return !colors.empty(); }
};

PointCloud unproject(const DepthMap& depth, const Intrinsics& k,
                     const RgbImage* colors = nullptr);

// Throws DomainError unless point.z > 0.
PixelDepth project(const Vec3& point, const Intrinsics& k);

// ASCII PLY 1.0 with float x, y, z and, when present, uchar red, green,
// blue properties.
void write_ply(std::ostream& os, const PointCloud& cloud);

}  // namespace visenc

#endif  // VISENC_GEOMETRY_HPP_
