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

// File formats: PNG (via libpng), PFM, palette and colormap JSON, PLY.
//
// Depth ground truth
//   16-bit single-channel PNG in millimeters, 0 = invalid.
//   PFM ("Pf", one channel) in meters; NaN, inf and 0 are invalid. A
//   negative scale means little-endian samples. Rows run bottom to top.
// Normals
//   PFM ("PF", three channels) holding x, y, z; zero or non-finite vectors
//   are invalid. PNG inputs are decoded with decode_normals.
// Labels
//   8-bit gray PNG of class indices with 255 = background, or an RGB PNG
//   painted exactly with palette colors.
// Instances
//   8- or 16-bit gray PNG of instance ids with 0 = background, or an RGB PNG
//   where every distinct non-background color is one instance.
//
// Palette JSON:
//   {"background": [0, 0, 0],
//    "classes": [{"name": "skateboard", "color": [255, 255, 0]}, ...]}
// Colors may also be written "#RRGGBB".
//
// Colormap JSON:
//   {"name": "mymap", "entries": [[r, g, b], ...]}   channels in [0, 1]

#ifndef VISENC_IO_HPP_
#define VISENC_IO_HPP_

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "visenc/depth_codec.hpp"
#include "visenc/geometry.hpp"
#include "visenc/image.hpp"
#include "visenc/seg_codec.hpp"

namespace visenc {

namespace fs = std::filesystem;

std::vector<std::uint8_t> read_file(const fs::path& path);
std::string read_text_file(const fs::path& path);
// Writes bytes verbatim (binary mode).
void write_file(const fs::path& path, std::span<const std::uint8_t> bytes);
void write_text_file(const fs::path& path, std::string_view text);

// Decoded PNG samples after palette and low-bit-depth expansion.
struct PngRaster {
  int width = 0;
  int height = 0;
  int channels = 0;   // 1 gray, 2 gray+alpha, 3 RGB, 4 RGBA
  int bit_depth = 0;  // 8 or 16
  std::vector<std::uint16_t> samples;  // interleaved, row-major
};

PngRaster decode_png(std::span<const std::uint8_t> bytes);
PngRaster read_png(const fs::path& path);
std::vector<std::uint8_t> encode_png(const PngRaster& raster);
void write_png(const fs::path& path, const PngRaster& raster);

// Any PNG as RGB; alpha is dropped and gray is replicated. 8-bit input
// yields PixelFormat::kByte.
RgbImage load_rgb_image(const fs::path& path);
// Quantizes to 8 bits.
void save_rgb_image(const fs::path& path, const RgbImage& img);

struct PfmImage {
  int width = 0;
  int height = 0;
  int channels = 1;         // 1 ("Pf") or 3 ("PF")
  std::vector<float> data;  // interleaved, top row first
};

PfmImage decode_pfm(std::span<const std::uint8_t> bytes);
PfmImage read_pfm(const fs::path& path);
// Little-endian, scale -1.
std::vector<std::uint8_t> encode_pfm(const PfmImage& img);
void write_pfm(const fs::path& path, const PfmImage& img);

// Chooses PNG or PFM by the file signature. Throws FormatError otherwise.
DepthMap load_depth_gt(const fs::path& path);
// .png writes 16-bit millimeters (clamped to 65535, invalid = 0); anything
// else writes PFM meters with invalid = 0.
void save_depth(const fs::path& path, const DepthMap& depth);

NormalMap load_normals(const fs::path& path);
void save_normals_pfm(const fs::path& path, const NormalMap& normals);

LabelMap load_labels(const fs::path& path, const Palette& pal);
void save_labels_png(const fs::path& path, const LabelMap& labels);

InstanceMaskSet load_instances(const fs::path& path, Rgb8 background);
// 16-bit gray, ids 1..N in instance order, 0 = background.
void save_instance_ids_png(const fs::path& path, const InstanceMaskSet& set);

// "#RRGGBB" (case-insensitive).
Rgb8 parse_hex_color(std::string_view text);
std::string to_hex_color(Rgb8 c);

Palette parse_palette(std::string_view json_text);
Palette load_palette(const fs::path& path);
std::string palette_to_json(const Palette& pal);

ColorLut parse_lut(std::string_view json_text);
// A builtin colormap name, or a path to a colormap JSON file.
ColorLut load_lut(std::string_view name_or_path);

void save_ply(const fs::path& path, const PointCloud& cloud);

}  // namespace visenc

#endif  // VISENC_IO_HPP_
