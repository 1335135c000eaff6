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

#include "visenc/io.hpp"

#include <png.h>

#include <bit>
#include <cctype>
#include <cmath>
#include <csetjmp>
#include <cstring>
#include <fstream>
#include <iterator>
#include <map>
#include <set>
#include <sstream>

#include "json.hpp"
#include "visenc/normal_codec.hpp"

namespace visenc {
namespace {

using nlohmann::json;

// Everything touched after setjmp lives here, behind a pointer, so its
// value is well defined after a longjmp.
struct PngReadState {
  std::span<const std::uint8_t> bytes;
  std::size_t offset = 0;
  std::string error;
  std::vector<std::uint8_t> buffer;
  std::vector<png_bytep> rows;
};

void png_read_from_memory(png_structp png, png_bytep out, png_size_t n) {
  auto* st = static_cast<PngReadState*>(png_get_io_ptr(png));
  if (n > st->bytes.size() - st->offset) {
    png_error(png, "unexpected end of data");
  }
  std::memcpy(out, st->bytes.data() + st->offset, n);
  st->offset += n;
}

void png_record_error(png_structp png, png_const_charp msg) {
  auto* st = static_cast<PngReadState*>(png_get_error_ptr(png));
  st->error = msg ? msg : "libpng error";
  std::longjmp(png_jmpbuf(png), 1);
}

void png_ignore_warning(png_structp, png_const_charp) {}

struct PngWriteState {
  std::vector<std::uint8_t> bytes;
  std::string error;
};

void png_write_to_memory(png_structp png, png_bytep data, png_size_t n) {
  auto* st = static_cast<PngWriteState*>(png_get_io_ptr(png));
  st->bytes.insert(st->bytes.end(), data, data + n);
}

void png_flush_noop(png_structp) {}

void png_record_write_error(png_structp png, png_const_charp msg) {
  auto* st = static_cast<PngWriteState*>(png_get_error_ptr(png));
  st->error = msg ? msg : "libpng error";
  std::longjmp(png_jmpbuf(png), 1);
}

bool has_png_signature(std::span<const std::uint8_t> bytes) {
  return bytes.size() >= 8 && png_sig_cmp(bytes.data(), 0, 8) == 0;
}

bool has_pfm_signature(std::span<const std::uint8_t> bytes) {
  return bytes.size() >= 2 && bytes[0] == 'P' &&
         (bytes[1] == 'f' || bytes[1] == 'F');
}

std::string lowercase_extension(const fs::path& path) {
  std::string ext = path.extension().string();
  for (char& c : ext) c = char(std::tolower(static_cast<unsigned char>(c)));
  return ext;
}

Rgb8 parse_color_value(const json& v, const std::string& where) {
  if (v.is_string()) return parse_hex_color(v.get<std::string>());
  if (v.is_array() && v.size() == 3) {
    std::uint8_t out[3];
    for (int k = 0; k < 3; ++k) {
      if (!v[k].is_number_integer() || v[k].get<long long>() < 0 ||
          v[k].get<long long>() > 255) {
        throw ConfigError(where + ": color channels must be integers 0-255");
      }
      out[k] = std::uint8_t(v[k].get<int>());
    }
    return {out[0], out[1], out[2]};
  }
  throw ConfigError(where + ": color must be [r, g, b] or \"#RRGGBB\"");
}

json parse_json(std::string_view text, const std::string& what) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw FormatError(what + ": " + e.what(), e.byte);
  }
}

}  // namespace

std::vector<std::uint8_t> read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw RunError("cannot open " + path.string());
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

std::string read_text_file(const fs::path& path) {
  const auto bytes = read_file(path);
  return {bytes.begin(), bytes.end()};
}

void write_file(const fs::path& path, std::span<const std::uint8_t> bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw RunError("cannot write " + path.string());
  out.write(reinterpret_cast<const char*>(bytes.data()),
            std::streamsize(bytes.size()));
  if (!out) throw RunError("failed writing " + path.string());
}

void write_text_file(const fs::path& path, std::string_view text) {
  write_file(path, std::span(reinterpret_cast<const std::uint8_t*>(text.data()),
                             text.size()));
}

PngRaster decode_png(std::span<const std::uint8_t> bytes) {
  if (!has_png_signature(bytes)) {
    throw FormatError("missing PNG signature", 0);
  }
  PngReadState state{bytes, 0, {}, {}, {}};
  PngRaster raster;
  std::vector<std::uint8_t>& buffer = state.buffer;
  std::vector<png_bytep>& rows = state.rows;
  png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, &state,
                                           png_record_error, png_ignore_warning);
  if (!png) throw RunError("libpng initialization failed");
  png_infop info = png_create_info_struct(png);
  if (!info) {
    png_destroy_read_struct(&png, nullptr, nullptr);
    throw RunError("libpng initialization failed");
  }
  if (setjmp(png_jmpbuf(png))) {
    png_destroy_read_struct(&png, &info, nullptr);
    throw FormatError("malformed PNG: " + state.error, state.offset);
  }
  png_set_read_fn(png, &state, png_read_from_memory);
  png_read_info(png, info);
  png_set_expand(png);  // palette -> RGB, gray < 8 bit -> 8 bit, tRNS -> alpha
  png_read_update_info(png, info);
  raster.width = int(png_get_image_width(png, info));
  raster.height = int(png_get_image_height(png, info));
  raster.channels = png_get_channels(png, info);
  raster.bit_depth = png_get_bit_depth(png, info);
  const std::size_t row_bytes = png_get_rowbytes(png, info);
  buffer.resize(row_bytes * std::size_t(raster.height));
  rows.resize(std::size_t(raster.height));
  for (int y = 0; y < raster.height; ++y) {
    rows[std::size_t(y)] = buffer.data() + row_bytes * std::size_t(y);
  }
  png_read_image(png, rows.data());
  png_read_end(png, nullptr);
  png_destroy_read_struct(&png, &info, nullptr);

  const std::size_t count =
      std::size_t(raster.width) * raster.height * raster.channels;
  raster.samples.resize(count);
  if (raster.bit_depth == 16) {
    for (std::size_t i = 0; i < count; ++i) {
      raster.samples[i] =
          std::uint16_t((buffer[2 * i] << 8) | buffer[2 * i + 1]);
    }
  } else {
    for (std::size_t i = 0; i < count; ++i) raster.samples[i] = buffer[i];
  }
  return raster;
}

PngRaster read_png(const fs::path& path) { return decode_png(read_file(path)); }

std::vector<std::uint8_t> encode_png(const PngRaster& raster) {
  int color_type = 0;
  switch (raster.channels) {
    case 1: color_type = PNG_COLOR_TYPE_GRAY; break;
    case 2: color_type = PNG_COLOR_TYPE_GRAY_ALPHA; break;
    case 3: color_type = PNG_COLOR_TYPE_RGB; break;
    case 4: color_type = PNG_COLOR_TYPE_RGB_ALPHA; break;
    default: throw ConfigError("PNG needs 1-4 channels");
  }
  if (raster.bit_depth != 8 && raster.bit_depth != 16) {
    throw ConfigError("PNG bit depth must be 8 or 16");
  }
  const std::size_t count =
      std::size_t(raster.width) * raster.height * raster.channels;
  if (raster.samples.size() != count) {
    throw StructuralError("PNG sample count does not match its shape");
  }
  const std::size_t bytes_per_sample = raster.bit_depth / 8;
  const std::size_t row_bytes =
      std::size_t(raster.width) * raster.channels * bytes_per_sample;
  std::vector<std::uint8_t> buffer(row_bytes * raster.height);
  for (std::size_t i = 0; i < count; ++i) {
    if (bytes_per_sample == 2) {
      buffer[2 * i] = std::uint8_t(raster.samples[i] >> 8);
      buffer[2 * i + 1] = std::uint8_t(raster.samples[i] & 0xff);
    } else {
      buffer[i] = std::uint8_t(raster.samples[i]);
    }
  }
  PngWriteState state;
  std::vector<png_bytep> rows(std::size_t(raster.height));
  for (int y = 0; y < raster.height; ++y) {
    rows[std::size_t(y)] = buffer.data() + row_bytes * std::size_t(y);
  }
  png_structp png = png_create_write_struct(
      PNG_LIBPNG_VER_STRING, &state, png_record_write_error, png_ignore_warning);
  if (!png) throw RunError("libpng initialization failed");
  png_infop info = png_create_info_struct(png);
  if (!info) {
    png_destroy_write_struct(&png, nullptr);
    throw RunError("libpng initialization failed");
  }
  if (setjmp(png_jmpbuf(png))) {
    png_destroy_write_struct(&png, &info);
    throw RunError("PNG encoding failed: " + state.error);
  }
  png_set_write_fn(png, &state, png_write_to_memory, png_flush_noop);
  png_set_compression_level(png, 6);
  png_set_IHDR(png, info, png_uint_32(raster.width),
               png_uint_32(raster.height), raster.bit_depth, color_type,
               PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT,
               PNG_FILTER_TYPE_DEFAULT);
  png_write_info(png, info);
  png_write_image(png, rows.data());
  png_write_end(png, nullptr);
  png_destroy_write_struct(&png, &info);
  return std::move(state.bytes);
}

void write_png(const fs::path& path, const PngRaster& raster) {
  write_file(path, encode_png(raster));
}

RgbImage load_rgb_image(const fs::path& path) {
  const PngRaster r = read_png(path);
  const bool eight = r.bit_depth == 8;
  RgbImage img(r.width, r.height,
               eight ? PixelFormat::kByte : PixelFormat::kReal);
  const double scale = eight ? 255.0 : 65535.0;
  for (std::size_t i = 0; i < img.size(); ++i) {
    const std::uint16_t* s = &r.samples[i * r.channels];
    Rgb c;
    if (r.channels <= 2) {
      c = {s[0] / scale, s[0] / scale, s[0] / scale};
    } else {
      c = {s[0] / scale, s[1] / scale, s[2] / scale};
    }
    img[i] = c;
  }
  return img;
}

void save_rgb_image(const fs::path& path, const RgbImage& img) {
  PngRaster r{img.width(), img.height(), 3, 8, {}};
  const auto bytes = img.to_bytes();
  r.samples.assign(bytes.begin(), bytes.end());
  write_png(path, r);
}

PfmImage decode_pfm(std::span<const std::uint8_t> bytes) {
  std::size_t pos = 0;
  const auto skip_space = [&] {
    while (pos < bytes.size() && std::isspace(bytes[pos])) ++pos;
  };
  const auto token = [&](const char* what) {
    skip_space();
    const std::size_t start = pos;
    while (pos < bytes.size() && !std::isspace(bytes[pos])) ++pos;
    if (start == pos) {
      throw FormatError(std::string("PFM header: missing ") + what, start);
    }
    return std::make_pair(
        std::string(bytes.begin() + start, bytes.begin() + pos), start);
  };
  if (!has_pfm_signature(bytes)) throw FormatError("missing PFM signature", 0);
  PfmImage img;
  img.channels = bytes[1] == 'F' ? 3 : 1;
  pos = 2;
  if (pos >= bytes.size() || !std::isspace(bytes[pos])) {
    throw FormatError("PFM header: bad magic", 0);
  }
  const auto parse_int = [&](const char* what) {
    const auto [text, at] = token(what);
    try {
      std::size_t used = 0;
      const long v = std::stol(text, &used);
      if (used != text.size() || v <= 0 || v > (1L << 24)) throw 0;
      return int(v);
    } catch (...) {
      throw FormatError(std::string("PFM header: bad ") + what, at);
    }
  };
  img.width = parse_int("width");
  img.height = parse_int("height");
  const auto [scale_text, scale_at] = token("scale");
  double scale = 0.0;
  try {
    std::size_t used = 0;
    scale = std::stod(scale_text, &used);
    if (used != scale_text.size() || scale == 0.0 || !std::isfinite(scale)) {
      throw 0;
    }
  } catch (...) {
    throw FormatError("PFM header: bad scale", scale_at);
  }
  if (pos >= bytes.size() || !std::isspace(bytes[pos])) {
    throw FormatError("PFM header: missing separator before data", pos);
  }
  ++pos;
  const bool little = scale < 0.0;
  const std::size_t count =
      std::size_t(img.width) * img.height * img.channels;
  if (bytes.size() - pos < count * 4) {
    throw FormatError("PFM data truncated: need " + std::to_string(count * 4) +
                          " bytes",
                      bytes.size());
  }
  img.data.resize(count);
  const std::size_t row = std::size_t(img.width) * img.channels;
  for (int y = 0; y < img.height; ++y) {
    // File rows run bottom to top.
    const std::size_t dst_row = std::size_t(img.height - 1 - y) * row;
    for (std::size_t k = 0; k < row; ++k) {
      const std::uint8_t* p = bytes.data() + pos + (std::size_t(y) * row + k) * 4;
      std::uint32_t bits = little
          ? std::uint32_t(p[0]) | std::uint32_t(p[1]) << 8 |
                std::uint32_t(p[2]) << 16 | std::uint32_t(p[3]) << 24
          : std::uint32_t(p[3]) | std::uint32_t(p[2]) << 8 |
                std::uint32_t(p[1]) << 16 | std::uint32_t(p[0]) << 24;
      img.data[dst_row + k] = std::bit_cast<float>(bits);
    }
  }
  return img;
}

PfmImage read_pfm(const fs::path& path) { return decode_pfm(read_file(path)); }

std::vector<std::uint8_t> encode_pfm(const PfmImage& img) {
  if (img.channels != 1 && img.channels != 3) {
    throw ConfigError("PFM supports 1 or 3 channels");
  }
  const std::size_t row = std::size_t(img.width) * img.channels;
  if (img.data.size() != row * img.height) {
    throw StructuralError("PFM sample count does not match its shape");
  }
  const std::string header = std::string(img.channels == 3 ? "PF" : "Pf") +
                             "\n" + std::to_string(img.width) + " " +
                             std::to_string(img.height) + "\n-1.0\n";
  std::vector<std::uint8_t> out(header.begin(), header.end());
  out.reserve(out.size() + img.data.size() * 4);
  for (int y = img.height - 1; y >= 0; --y) {
    for (std::size_t k = 0; k < row; ++k) {
      const auto bits =
          std::bit_cast<std::uint32_t>(img.data[std::size_t(y) * row + k]);
      for (int b = 0; b < 4; ++b) out.push_back(std::uint8_t(bits >> (8 * b)));
    }
  }
  return out;
}

void write_pfm(const fs::path& path, const PfmImage& img) {
  write_file(path, encode_pfm(img));
}

DepthMap load_depth_gt(const fs::path& path) {
  const auto bytes = read_file(path);
  if (has_png_signature(bytes)) {
    const PngRaster r = decode_png(bytes);
    if (r.channels != 1 || r.bit_depth != 16) {
      throw FormatError("depth PNG must be 16-bit single-channel (got " +
                            std::to_string(r.bit_depth) + "-bit, " +
                            std::to_string(r.channels) + " channels)",
                        0);
    }
    DepthMap d(r.width, r.height, 0.0, false);
    for (std::size_t i = 0; i < d.size(); ++i) {
      if (r.samples[i] == 0) continue;
      d.values[i] = r.samples[i] / 1000.0;
      d.valid[i] = 1;
    }
    return d;
  }
  if (has_pfm_signature(bytes)) {
    const PfmImage p = decode_pfm(bytes);
    if (p.channels != 1) {
      throw FormatError("depth PFM must have one channel", 0);
    }
    DepthMap d(p.width, p.height, 0.0, false);
    for (std::size_t i = 0; i < d.size(); ++i) {
      const double v = p.data[i];
      if (!std::isfinite(v) || v <= 0.0) continue;
      d.values[i] = v;
      d.valid[i] = 1;
    }
    return d;
  }
  throw FormatError("unknown depth format for " + path.string(), 0);
}

void save_depth(const fs::path& path, const DepthMap& depth) {
  depth.validate();
  if (lowercase_extension(path) == ".png") {
    PngRaster r{depth.width(), depth.height(), 1, 16, {}};
    r.samples.resize(depth.size(), 0);
    for (std::size_t i = 0; i < depth.size(); ++i) {
      if (!depth.valid[i]) continue;
      const double mm = std::round(depth.values[i] * 1000.0);
      r.samples[i] = std::uint16_t(std::clamp(mm, 1.0, 65535.0));
    }
    write_png(path, r);
    return;
  }
  PfmImage p{depth.width(), depth.height(), 1, {}};
  p.data.resize(depth.size(), 0.0f);
  for (std::size_t i = 0; i < depth.size(); ++i) {
    if (depth.valid[i]) p.data[i] = float(depth.values[i]);
  }
  write_pfm(path, p);
}

NormalMap load_normals(const fs::path& path) {
  const auto bytes = read_file(path);
  if (has_pfm_signature(bytes)) {
    const PfmImage p = decode_pfm(bytes);
    if (p.channels != 3) throw FormatError("normal PFM must have 3 channels", 0);
    NormalMap n(p.width, p.height, Vec3{}, false);
    for (std::size_t i = 0; i < n.size(); ++i) {
      const Vec3 v{p.data[3 * i], p.data[3 * i + 1], p.data[3 * i + 2]};
      const double len = v.norm();
      if (!std::isfinite(len) || len == 0.0) continue;
      n.vectors[i] = v * (1.0 / len);
      n.valid[i] = 1;
    }
    return n;
  }
  if (has_png_signature(bytes)) {
    (void)decode_png(bytes);
    return decode_normals(load_rgb_image(path));
  }
  throw FormatError("unknown normal map format for " + path.string(), 0);
}

void save_normals_pfm(const fs::path& path, const NormalMap& normals) {
  PfmImage p{normals.width(), normals.height(), 3, {}};
  p.data.resize(normals.size() * 3, 0.0f);
  for (std::size_t i = 0; i < normals.size(); ++i) {
    if (!normals.valid[i]) continue;
    p.data[3 * i] = float(normals.vectors[i].x);
    p.data[3 * i + 1] = float(normals.vectors[i].y);
    p.data[3 * i + 2] = float(normals.vectors[i].z);
  }
  write_pfm(path, p);
}

LabelMap load_labels(const fs::path& path, const Palette& pal) {
  const PngRaster r = read_png(path);
  LabelMap out(r.width, r.height);
  if (r.channels <= 2) {
    const std::uint16_t bg = r.bit_depth == 16 ? 65535 : 255;
    for (std::size_t i = 0; i < out.size(); ++i) {
      const std::uint16_t v = r.samples[i * r.channels];
      if (v == bg) continue;
      if (v >= pal.size()) {
        throw FormatError("label " + std::to_string(v) + " at pixel " +
                              std::to_string(i) + " exceeds the palette",
                          0);
      }
      out.labels[i] = v;
    }
    return out;
  }
  if (r.bit_depth != 8) throw FormatError("RGB label PNG must be 8-bit", 0);
  pal.validate();
  for (std::size_t i = 0; i < out.size(); ++i) {
    const std::uint16_t* s = &r.samples[i * r.channels];
    const Rgb8 c{std::uint8_t(s[0]), std::uint8_t(s[1]), std::uint8_t(s[2])};
    if (c == pal.background) continue;
    bool found = false;
    for (std::size_t k = 0; k < pal.size(); ++k) {
      if (pal.entries[k].color == c) {
        out.labels[i] = std::int32_t(k);
        found = true;
        break;
      }
    }
    if (!found) {
      throw FormatError("pixel " + std::to_string(i) + " color " +
                            to_hex_color(c) + " is not in the palette",
                        0);
    }
  }
  return out;
}

void save_labels_png(const fs::path& path, const LabelMap& labels) {
  PngRaster r{labels.width(), labels.height(), 1, 8, {}};
  r.samples.resize(labels.size());
  for (std::size_t i = 0; i < labels.size(); ++i) {
    const std::int32_t v = labels.labels[i];
    if (v == LabelMap::kBackground) {
      r.samples[i] = 255;
    } else if (v < 0 || v >= 255) {
      throw StructuralError("label " + std::to_string(v) +
                            " does not fit an 8-bit label PNG");
    } else {
      r.samples[i] = std::uint16_t(v);
    }
  }
  write_png(path, r);
}

InstanceMaskSet load_instances(const fs::path& path, Rgb8 background) {
  const PngRaster r = read_png(path);
  InstanceMaskSet set{r.width, r.height, {}, background};
  // Instances in order of first appearance.
  std::vector<std::uint64_t> keys;
  std::vector<std::size_t> order;
  const std::size_t n = std::size_t(r.width) * r.height;
  std::vector<std::uint64_t> pixel_key(n, 0);
  std::vector<bool> fg(n, false);
  for (std::size_t i = 0; i < n; ++i) {
    const std::uint16_t* s = &r.samples[i * r.channels];
    std::uint64_t key = 0;
    if (r.channels <= 2) {
      if (s[0] == 0) continue;
      key = s[0];
    } else {
      const Rgb8 c{std::uint8_t(s[0] >> (r.bit_depth - 8)),
                   std::uint8_t(s[1] >> (r.bit_depth - 8)),
                   std::uint8_t(s[2] >> (r.bit_depth - 8))};
      if (c == background) continue;
      key = (std::uint64_t(c.r) << 16) | (std::uint64_t(c.g) << 8) | c.b;
    }
    pixel_key[i] = key;
    fg[i] = true;
  }
  std::map<std::uint64_t, std::size_t> slot;
  for (std::size_t i = 0; i < n; ++i) {
    if (!fg[i]) continue;
    auto it = slot.find(pixel_key[i]);
    if (it == slot.end()) {
      it = slot.emplace(pixel_key[i], set.instances.size()).first;
      Rgb8 color{};
      if (r.channels > 2) {
        color = {std::uint8_t(pixel_key[i] >> 16),
                 std::uint8_t(pixel_key[i] >> 8), std::uint8_t(pixel_key[i])};
      }
      set.instances.push_back({Mask(r.width, r.height, 0), color, 0});
    }
    Instance& inst = set.instances[it->second];
    inst.mask[i] = 1;
    ++inst.area;
  }
  return set;
}

void save_instance_ids_png(const fs::path& path, const InstanceMaskSet& set) {
  if (set.size() > 65535) throw StructuralError("too many instances for PNG");
  PngRaster r{set.width, set.height, 1, 16, {}};
  r.samples.assign(std::size_t(set.width) * set.height, 0);
  for (std::size_t m = 0; m < set.size(); ++m) {
    const Mask& mask = set.instances[m].mask;
    for (std::size_t i = 0; i < mask.size(); ++i) {
      if (mask[i]) r.samples[i] = std::uint16_t(m + 1);
    }
  }
  write_png(path, r);
}

Rgb8 parse_hex_color(std::string_view text) {
  if (text.size() != 7 || text[0] != '#') {
    throw ConfigError("color \"" + std::string(text) + "\" is not #RRGGBB");
  }
  std::uint8_t v[3];
  for (int k = 0; k < 3; ++k) {
    unsigned value = 0;
    for (int j = 1; j <= 2; ++j) {
      const char ch = char(std::tolower(static_cast<unsigned char>(text[2 * k + j])));
      unsigned digit = 0;
      if (ch >= '0' && ch <= '9') {
        digit = unsigned(ch - '0');
      } else if (ch >= 'a' && ch <= 'f') {
        digit = unsigned(ch - 'a' + 10);
      } else {
        throw ConfigError("color \"" + std::string(text) + "\" is not #RRGGBB");
      }
      value = value * 16 + digit;
    }
    v[k] = std::uint8_t(value);
  }
  return {v[0], v[1], v[2]};
}

std::string to_hex_color(Rgb8 c) {
  char buf[8];
  std::snprintf(buf, sizeof(buf), "#%02X%02X%02X", c.r, c.g, c.b);
  return buf;
}

Palette parse_palette(std::string_view json_text) {
  const json j = parse_json(json_text, "palette");
  if (!j.is_object() || !j.contains("classes") || !j["classes"].is_array()) {
    throw ConfigError("palette must be an object with a \"classes\" array");
  }
  Palette pal;
  if (j.contains("background")) {
    pal.background = parse_color_value(j["background"], "palette background");
  }
  for (const json& entry : j["classes"]) {
    if (!entry.is_object() || !entry.contains("name") ||
        !entry["name"].is_string() || !entry.contains("color")) {
      throw ConfigError("palette class needs \"name\" and \"color\"");
    }
    const std::string name = entry["name"].get<std::string>();
    pal.entries.push_back(
        {name, parse_color_value(entry["color"], "palette class " + name)});
  }
  pal.validate();
  return pal;
}

Palette load_palette(const fs::path& path) {
  return parse_palette(read_text_file(path));
}

std::string palette_to_json(const Palette& pal) {
  json classes = json::array();
  for (const auto& e : pal.entries) {
    classes.push_back(
        {{"name", e.name}, {"color", {e.color.r, e.color.g, e.color.b}}});
  }
  nlohmann::ordered_json out;
  out["background"] = {pal.background.r, pal.background.g, pal.background.b};
  out["classes"] = classes;
  return out.dump(2) + "\n";
}

ColorLut parse_lut(std::string_view json_text) {
  const json j = parse_json(json_text, "colormap");
  if (!j.is_object() || !j.contains("entries") || !j["entries"].is_array()) {
    throw ConfigError("colormap must be an object with an \"entries\" array");
  }
  ColorLut lut;
  lut.name = j.value("name", std::string("custom"));
  for (const json& e : j["entries"]) {
    if (!e.is_array() || e.size() != 3 || !e[0].is_number() ||
        !e[1].is_number() || !e[2].is_number()) {
      throw ConfigError("colormap entries must be [r, g, b] triples");
    }
    lut.entries.push_back(
        {e[0].get<double>(), e[1].get<double>(), e[2].get<double>()});
  }
  lut.validate();
  return lut;
}

ColorLut load_lut(std::string_view name_or_path) {
  for (const auto& name : builtin_lut_names()) {
    if (name == name_or_path) return builtin_lut(name);
  }
  const fs::path path{std::string(name_or_path)};
  if (!fs::exists(path)) {
    throw ConfigError("\"" + std::string(name_or_path) +
                      "\" is neither a builtin colormap nor a file");
  }
  return parse_lut(read_text_file(path));
}

void save_ply(const fs::path& path, const PointCloud& cloud) {
  std::ostringstream os;
  write_ply(os, cloud);
  write_text_file(path, os.str());
}

}  // namespace visenc
