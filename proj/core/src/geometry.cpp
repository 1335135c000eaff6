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

#include "visenc/geometry.hpp"

#include <cmath>
#include <cstdio>
#include <string>

namespace visenc {

void Intrinsics::validate() const {
  if (!std::isfinite(fx) || !(fx > 0.0) || !std::isfinite(fy) ||
      !(fy > 0.0)) {
    throw ConfigError("intrinsics need fx > 0 and fy > 0");
  }
  if (!std::isfinite(cx) || !std::isfinite(cy)) {
    throw ConfigError("intrinsics principal point must be finite");
  }
}

PointCloud unproject(const DepthMap& depth, const Intrinsics& k,
                     const RgbImage* colors) {
  k.validate();
  depth.validate();
  if (colors && (colors->width() != depth.width() ||
                 colors->height() != depth.height())) {
    throw StructuralError("color image does not match the depth map shape");
  }
  PointCloud cloud;
  cloud.points.reserve(depth.valid_count());
  for (int v = 0; v < depth.height(); ++v) {
    for (int u = 0; u < depth.width(); ++u) {
      if (!depth.valid.at(u, v)) continue;
      const double d = depth.values.at(u, v);
      cloud.points.push_back(
          {(u - k.cx) * d / k.fx, (v - k.cy) * d / k.fy, d});
      if (colors) cloud.colors.push_back(to_rgb8(colors->at(u, v)));
    }
  }
  return cloud;
}

PixelDepth project(const Vec3& point, const Intrinsics& k) {
  k.validate();
  if (!(point.z > 0.0)) {
    throw DomainError("project: point must lie in front of the camera (Z > 0)");
  }
  return {k.fx * point.x / point.z + k.cx, k.fy * point.y / point.z + k.cy,
          point.z};
}

void write_ply(std::ostream& os, const PointCloud& cloud) {
  if (cloud.has_colors() && cloud.colors.size() != cloud.points.size()) {
    throw StructuralError("point cloud has " +
                          std::to_string(cloud.colors.size()) +
                          " colors for " + std::to_string(cloud.size()) +
                          " points");
  }
  os << "ply\n"
     << "format ascii 1.0\n"
     << "comment camera frame: x right, y down (image v), z forward; "
        "meters\n"
     << "element vertex " << cloud.size() << "\n"
     << "property float x\n"
     << "property float y\n"
     << "property float z\n";
  if (cloud.has_colors()) {
    os << "property uchar red\n"
       << "property uchar green\n"
       << "property uchar blue\n";
  }
  os << "end_header\n";
  char buf[96];
  for (std::size_t i = 0; i < cloud.size(); ++i) {
    const Vec3& p = cloud.points[i];
    std::snprintf(buf, sizeof(buf), "%.9g %.9g %.9g", p.x, p.y, p.z);
    os << buf;
    if (cloud.has_colors()) {
      const Rgb8 c = cloud.colors[i];
      os << ' ' << int(c.r) << ' ' << int(c.g) << ' ' << int(c.b);
    }
    os << '\n';
  }
}

}  // namespace visenc
