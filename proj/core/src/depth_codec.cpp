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

#include "visenc/depth_codec.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <unordered_map>

#include "colormap_tables.hpp"

namespace visenc {
namespace {

constexpr double kBelowOne = 1.0 - std::numeric_limits<double>::epsilon() / 2;

Rgb lerp(const Rgb& a, const Rgb& b, double u) {
  return {a.r + u * (b.r - a.r), a.g + u * (b.g - a.g), a.b + u * (b.b - a.b)};
}

double squared_distance(const Rgb& a, const Rgb& b) {
  return (a.r - b.r) * (a.r - b.r) + (a.g - b.g) * (a.g - b.g) +
         (a.b - b.b) * (a.b - b.b);
}

bool is_finite(const Rgb& c) {
  return std::isfinite(c.r) && std::isfinite(c.g) && std::isfinite(c.b);
}

// Closest point on segment [a, b] as a fraction in [0, 1].
double segment_fraction(const Rgb& p, const Rgb& a, const Rgb& b) {
  const Rgb ab{b.r - a.r, b.g - a.g, b.b - a.b};
  const double len2 = ab.r * ab.r + ab.g * ab.g + ab.b * ab.b;
  if (len2 == 0.0) return 0.0;
  const double dot =
      (p.r - a.r) * ab.r + (p.g - a.g) * ab.g + (p.b - a.b) * ab.b;
  return std::clamp(dot / len2, 0.0, 1.0);
}

}  // namespace

void PowerTransformParams::validate() const {
  if (!std::isfinite(lambda) || !(lambda < -1.0)) {
    throw ConfigError("power transform requires lambda < -1, got " +
                      std::to_string(lambda));
  }
  if (!std::isfinite(c) || !(c > 0.0)) {
    throw ConfigError("power transform requires c > 0, got " +
                      std::to_string(c));
  }
}

double curve_depth(double d, const PowerTransformParams& p) {
  if (!std::isfinite(d) || d < 0.0) {
    throw DomainError("curve_depth: depth must be finite and >= 0, got " +
                      std::to_string(d));
  }
  p.validate();
  // 1 - (1 - d/(lambda c))^(lambda + 1), evaluated without cancellation.
  const double t =
      -std::expm1((p.lambda + 1.0) * std::log1p(-d / (p.lambda * p.c)));
  return std::min(t, kBelowOne);
}

double uncurve_depth(double t, const PowerTransformParams& p) {
  if (!(t >= 0.0 && t < 1.0)) {
    throw DomainError("uncurve_depth: t must lie in [0, 1), got " +
                      std::to_string(t));
  }
  p.validate();
  return -p.lambda * p.c * std::expm1(std::log1p(-t) / (p.lambda + 1.0));
}

CubePath::CubePath()
    : CubePath(std::array<Rgb, 8>{Rgb{0, 0, 0}, Rgb{0, 0, 1}, Rgb{0, 1, 1},
                                  Rgb{0, 1, 0}, Rgb{1, 1, 0}, Rgb{1, 0, 0},
                                  Rgb{1, 0, 1}, Rgb{1, 1, 1}}) {}

CubePath::CubePath(const std::array<Rgb, 8>& corners) : corners_(corners) {
  validate_and_index();
}

void CubePath::validate_and_index() {
  std::array<bool, 8> seen{};
  for (std::size_t i = 0; i < corners_.size(); ++i) {
    const Rgb& c = corners_[i];
    for (int k = 0; k < 3; ++k) {
      if (c[k] != 0.0 && c[k] != 1.0) {
        throw ConfigError("cube path corner " + std::to_string(i) +
                          " is not a unit-cube vertex");
      }
    }
    const int code = int(c.r) * 4 + int(c.g) * 2 + int(c.b);
    if (seen[code]) {
      throw ConfigError("cube path visits vertex " + std::to_string(code) +
                        " twice");
    }
    seen[code] = true;
  }
  if (!(corners_.front() == Rgb{0, 0, 0}) ||
      !(corners_.back() == Rgb{1, 1, 1})) {
    throw ConfigError("cube path must run from black to white");
  }
  for (std::size_t i = 0; i < kSegments; ++i) {
    int changed = 0;
    for (int k = 0; k < 3; ++k) {
      const double delta = corners_[i + 1][k] - corners_[i][k];
      if (delta != 0.0) {
        ++changed;
        axis_[i] = k;
        sign_[i] = delta;
      }
    }
    if (changed != 1) {
      throw ConfigError("cube path segment " + std::to_string(i) +
                        " is not a cube edge");
    }
  }
}

CubePath CubePath::parse(std::string_view order) {
  if (order.size() != 8) {
    throw ConfigError("corner order must have 8 digits, got \"" +
                      std::string(order) + "\"");
  }
  std::array<Rgb, 8> corners;
  for (std::size_t i = 0; i < 8; ++i) {
    const char ch = order[i];
    if (ch < '0' || ch > '7') {
      throw ConfigError("corner order digit '" + std::string(1, ch) +
                        "' is not in 0-7");
    }
    const int code = ch - '0';
    corners[i] = {double((code >> 2) & 1), double((code >> 1) & 1),
                  double(code & 1)};
  }
  return CubePath(corners);
}

std::string CubePath::to_string() const {
  std::string out;
  for (const Rgb& c : corners_) {
    out.push_back(char('0' + int(c.r) * 4 + int(c.g) * 2 + int(c.b)));
  }
  return out;
}

Rgb path_color(double t, const CubePath& path) {
  if (!(t >= 0.0 && t <= 1.0)) {
    throw DomainError("path_color: t must lie in [0, 1], got " +
                      std::to_string(t));
  }
  const double s = t * double(CubePath::kSegments);
  const auto i = static_cast<std::size_t>(
      std::clamp(std::floor(s), 0.0, double(CubePath::kSegments - 1)));
  const double u = s - double(i);
  return lerp(path[i], path[i + 1], u);
}

PathProjection project_onto_path(const Rgb& rgb, const CubePath& path) {
  double best_d2 = std::numeric_limits<double>::infinity();
  double best_t = 0.0;
  for (std::size_t i = 0; i < CubePath::kSegments; ++i) {
    const Rgb& a = path[i];
    const int k = path.segment_axis(i);
    const double sign = path.segment_sign(i);
    const double u = std::clamp((rgb[k] - a[k]) * sign, 0.0, 1.0);
    Rgb q = a;
    q[k] += sign * u;
    const double d2 = squared_distance(rgb, q);
    // Segments are visited in increasing t, so strict < keeps the smallest t
    // among exact ties.
    if (d2 < best_d2) {
      best_d2 = d2;
      best_t = (double(i) + u) / double(CubePath::kSegments);
    }
  }
  return {best_t, std::sqrt(best_d2)};
}

void DepthCodecConfig::validate() const {
  transform.validate();
  if (!(t_max > 0.0 && t_max < 1.0)) {
    throw ConfigError("t_max must lie in (0, 1), got " + std::to_string(t_max));
  }
  if (!std::isfinite(invalid_distance_threshold) ||
      invalid_distance_threshold < 0.0) {
    throw ConfigError("invalid_distance_threshold must be finite and >= 0");
  }
  if (!is_finite(invalid_color)) {
    throw ConfigError("invalid_color must be finite");
  }
  const double sentinel_gap = project_onto_path(invalid_color, path).distance;
  if (!(sentinel_gap > invalid_distance_threshold)) {
    throw ConfigError("invalid_color lies within " +
                      std::to_string(invalid_distance_threshold) +
                      " of the cube path and would decode as a depth");
  }
}

RgbImage encode_depth(const DepthMap& map, const DepthCodecConfig& cfg) {
  map.validate();
  cfg.validate();
  RgbImage out(map.width(), map.height(), PixelFormat::kReal);
  for (std::size_t i = 0; i < map.size(); ++i) {
    if (!map.valid[i]) {
      out[i] = cfg.invalid_color;
      continue;
    }
    const double t = std::min(curve_depth(map.values[i], cfg.transform),
                              cfg.t_max);
    out[i] = path_color(t, cfg.path);
  }
  return out;
}

DepthMap decode_depth(const RgbImage& img, const DepthCodecConfig& cfg) {
  cfg.validate();
  DepthMap out(img.width(), img.height(), 0.0, false);
  for (std::size_t i = 0; i < img.size(); ++i) {
    const Rgb& c = img[i];
    if (!is_finite(c)) continue;
    const PathProjection proj = project_onto_path(c, cfg.path);
    if (proj.distance > cfg.invalid_distance_threshold) continue;
    out.values[i] = uncurve_depth(std::min(proj.t, cfg.t_max), cfg.transform);
    out.valid[i] = 1;
  }
  return out;
}

void ColorLut::validate() const {
  if (entries.size() < 2) {
    throw ConfigError("colormap \"" + name + "\" needs at least 2 entries, has " +
                      std::to_string(entries.size()));
  }
  for (const Rgb& e : entries) {
    for (int k = 0; k < 3; ++k) {
      if (!std::isfinite(e[k]) || e[k] < 0.0 || e[k] > 1.0) {
        throw ConfigError("colormap \"" + name +
                          "\" has a channel outside [0, 1]");
      }
    }
  }
}

Rgb ColorLut::sample(double t) const {
  if (!(t >= 0.0 && t <= 1.0)) {
    throw DomainError("colormap sample: t must lie in [0, 1], got " +
                      std::to_string(t));
  }
  const std::size_t spans = entries.size() - 1;
  const double s = t * double(spans);
  const auto i = static_cast<std::size_t>(
      std::clamp(std::floor(s), 0.0, double(spans - 1)));
  return lerp(entries[i], entries[i + 1], s - double(i));
}

ColorLut builtin_lut(std::string_view name) {
  const auto from_table = [&](const std::array<Rgb, 256>& table) {
    return ColorLut{std::string(name), {table.begin(), table.end()}};
  };
  if (name == "grayscale") return ColorLut{"grayscale", {{0, 0, 0}, {1, 1, 1}}};
  if (name == "viridis") return from_table(detail::kViridisTable);
  if (name == "plasma") return from_table(detail::kPlasmaTable);
  if (name == "inferno") return from_table(detail::kInfernoTable);
  throw ConfigError("unknown colormap \"" + std::string(name) + "\"");
}

std::vector<std::string> builtin_lut_names() {
  return {"grayscale", "viridis", "plasma", "inferno"};
}

namespace {

// Dense samples of a LUT curve, shared by every pixel of a decode call.
class LutProjector {
 public:
  LutProjector(const ColorLut& lut, std::size_t samples)
      : lut_(lut), samples_(std::max<std::size_t>(samples, 2)) {
    for (std::size_t k = 0; k < samples_.size(); ++k) {
      samples_[k] = lut.sample(double(k) / double(samples_.size() - 1));
    }
  }

  PathProjection project(const Rgb& rgb) const {
    // Dense scan for the globally closest sample.
    double best_d2 = std::numeric_limits<double>::infinity();
    std::size_t best_k = 0;
    for (std::size_t k = 0; k < samples_.size(); ++k) {
      const double d2 = squared_distance(rgb, samples_[k]);
      if (d2 < best_d2) {
        best_d2 = d2;
        best_k = k;
      }
    }
    double best_t = double(best_k) / double(samples_.size() - 1);
    // Exact projection onto the LUT spans around that sample.
    const std::size_t spans = lut_.entries.size() - 1;
    const auto center = static_cast<std::size_t>(std::clamp(
        std::floor(best_t * double(spans)), 0.0, double(spans - 1)));
    const std::size_t first = center == 0 ? 0 : center - 1;
    const std::size_t last = std::min(center + 1, spans - 1);
    for (std::size_t j = first; j <= last; ++j) {
      const Rgb& a = lut_.entries[j];
      const Rgb& b = lut_.entries[j + 1];
      const double u = segment_fraction(rgb, a, b);
      const double d2 = squared_distance(rgb, lerp(a, b, u));
      const double t = (double(j) + u) / double(spans);
      if (d2 < best_d2 || (d2 == best_d2 && t < best_t)) {
        best_d2 = d2;
        best_t = t;
      }
    }
    return {best_t, std::sqrt(best_d2)};
  }

 private:
  const ColorLut& lut_;
  std::vector<Rgb> samples_;
};

}  // namespace

PathProjection project_onto_lut(const Rgb& rgb, const ColorLut& lut,
                                std::size_t samples) {
  lut.validate();
  return LutProjector(lut, samples).project(rgb);
}

RgbImage encode_depth_lut(const DepthMap& map, const ColorLut& lut,
                          const PowerTransformParams& p,
                          const LutCodecOptions& opts) {
  lut.validate();
  map.validate();
  p.validate();
  RgbImage out(map.width(), map.height(), PixelFormat::kReal);
  for (std::size_t i = 0; i < map.size(); ++i) {
    if (!map.valid[i]) {
      out[i] = opts.invalid_color.value_or(lut.entries.front());
      continue;
    }
    out[i] = lut.sample(std::min(curve_depth(map.values[i], p), opts.t_max));
  }
  return out;
}

DepthMap decode_depth_lut(const RgbImage& img, const ColorLut& lut,
                          const PowerTransformParams& p,
                          const LutCodecOptions& opts) {
  lut.validate();
  p.validate();
  if (!(opts.t_max > 0.0 && opts.t_max < 1.0)) {
    throw ConfigError("t_max must lie in (0, 1)");
  }
  const LutProjector projector(lut, opts.decode_samples);
  // 8-bit images repeat colors heavily; memoize their projections.
  std::unordered_map<std::uint32_t, PathProjection> cache;
  const bool on_lattice = img.format() == PixelFormat::kByte;
  DepthMap out(img.width(), img.height(), 0.0, false);
  for (std::size_t i = 0; i < img.size(); ++i) {
    const Rgb& c = img[i];
    if (!is_finite(c)) continue;
    PathProjection proj;
    if (on_lattice) {
      const Rgb8 q = img.byte_at(i);
      const std::uint32_t key = (std::uint32_t(q.r) << 16) |
                                (std::uint32_t(q.g) << 8) | q.b;
      auto it = cache.find(key);
      if (it == cache.end()) it = cache.emplace(key, projector.project(c)).first;
      proj = it->second;
    } else {
      proj = projector.project(c);
    }
    if (opts.invalid_distance_threshold &&
        proj.distance > *opts.invalid_distance_threshold) {
      continue;
    }
    out.values[i] = uncurve_depth(std::min(proj.t, opts.t_max), p);
    out.valid[i] = 1;
  }
  return out;
}

}  // namespace visenc
