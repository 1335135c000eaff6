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

// Segmentation masks <-> colored images.
//
// Semantic and referring segmentation paint each class with the color the
// prompt assigned to it and decode by nearest palette color. Instance
// segmentation cannot fix colors up front, so encoding draws well-separated
// colors from a seeded generator and decoding clusters the colors it finds.

#ifndef VISENC_SEG_CODEC_HPP_
#define VISENC_SEG_CODEC_HPP_

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "visenc/image.hpp"

namespace visenc {

inline constexpr double kDefaultMaxColorDistance = 64.0;
inline constexpr double kDefaultColorTolerance = 40.0;
inline constexpr std::size_t kDefaultMinArea = 20;
inline constexpr double kInstanceColorSeparation = 96.0;

struct PaletteEntry {
  std::string name;
  Rgb8 color;

  friend bool operator==(const PaletteEntry&, const PaletteEntry&) = default;
};

struct Palette {
  std::vector<PaletteEntry> entries;
  Rgb8 background{0, 0, 0};

  // Throws ConfigError on empty or duplicate names, or on any two equal
  // colors (background included).
  void validate() const;
  std::size_t size() const { return entries.size(); }
  // Smallest pairwise Euclidean distance among entries and background.
  double min_separation() const;

  friend bool operator==(const Palette&, const Palette&) = default;
};

// Throws StructuralError for labels that are neither background nor a valid
// palette index. Output is PixelFormat::kByte.
RgbImage encode_semantic(const LabelMap& map, const Palette& pal);

// Nearest palette color per pixel, distances in 8-bit units. Candidates are
// the entries in order followed by the background; the first minimum wins.
// Pixels farther than max_dist from every candidate become background.
LabelMap decode_semantic(const RgbImage& img, const Palette& pal,
                         double max_dist = kDefaultMaxColorDistance);

// Replaces each label by the most frequent label of its 3x3 neighborhood
// (a pixel keeps its own label on ties). Optional post-processing for
// anti-aliased borders.
LabelMap majority_filter(const LabelMap& map);

struct Instance {
  Mask mask;
  Rgb8 color;
  std::size_t area = 0;
};

struct InstanceMaskSet {
  int width = 0;
  int height = 0;
  std::vector<Instance> instances;
  Rgb8 background{0, 0, 0};

  std::size_t size() const { return instances.size(); }
};

// Builds a mask set from binary masks, computing areas. Throws
// StructuralError on shape mismatch or overlapping masks.
InstanceMaskSet make_instance_set(std::span<const Mask> masks, int width,
                                  int height, Rgb8 background = {});

// count colors, each at least kInstanceColorSeparation from every other
// and from background. Candidates are the low 24 bits (r, g, b from least
// significant byte up) of successive std::mt19937_64 outputs seeded with
// seed; a candidate too close to an accepted color is discarded. Throws
// CapacityError when 4096 consecutive candidates are rejected.
std::vector<Rgb8> instance_colors(std::size_t count, Rgb8 background,
                                  std::uint64_t seed);

// Fills each mask with its own color from instance_colors.
RgbImage encode_instances(std::span<const Mask> masks, int width, int height,
                          Rgb8 background, std::uint64_t seed);

// Drops pixels within color_tol of background, single-linkage clusters the
// remaining distinct 8-bit colors at color_tol, and keeps clusters of at
// least min_area pixels. Instances are ordered by their first pixel in
// raster order; each carries the rounded mean color of its pixels.
InstanceMaskSet decode_instances(const RgbImage& img, Rgb8 background,
                                 double color_tol = kDefaultColorTolerance,
                                 std::size_t min_area = kDefaultMinArea);

}  // namespace visenc

#endif  // VISENC_SEG_CODEC_HPP_
