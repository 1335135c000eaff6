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

#include "visenc/degrade.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numbers>
#include <optional>
#include <random>
#include <sstream>

namespace visenc {
namespace {

class NormalStream {
 public:
  explicit NormalStream(std::uint64_t seed) : engine_(seed) {}

  double next() {
    if (spare_) {
      const double z = *spare_;
      spare_.reset();
      return z;
    }
    const double u1 = uniform();
    const double u2 = uniform();
    const double radius = std::sqrt(-2.0 * std::log(1.0 - u1));
    const double angle = 2.0 * std::numbers::pi * u2;
    spare_ = radius * std::sin(angle);
    return radius * std::cos(angle);
  }

 private:
  double uniform() { return double(engine_() >> 11) * 0x1.0p-53; }

  std::mt19937_64 engine_;
  std::optional<double> spare_;
};

bool integral(double v) { return std::floor(v) == v; }

RgbImage add_noise(const RgbImage& img, double sigma, NormalStream& normals) {
  RgbImage out(img.width(), img.height(), PixelFormat::kReal);
  for (std::size_t i = 0; i < img.size(); ++i) {
    Rgb p = img[i];
    for (int c = 0; c < 3; ++c) {
      p[c] = std::clamp(p[c] + sigma * normals.next() / 255.0, 0.0, 1.0);
    }
    out[i] = p;
  }
  return out;
}

RgbImage box_blur(const RgbImage& img, int radius) {
  const int w = img.width();
  const int h = img.height();
  if (radius == 0 || img.size() == 0) return img;
  const bool bytes = img.format() == PixelFormat::kByte;
  RgbImage out(w, h, img.format());
  // Summed-area tables; integer sums keep 8-bit inputs exact.
  const std::size_t stride = std::size_t(w) + 1;
  std::vector<std::array<std::int64_t, 3>> isum;
  std::vector<std::array<double, 3>> rsum;
  if (bytes) {
    isum.assign(stride * (h + 1), {0, 0, 0});
  } else {
    rsum.assign(stride * (h + 1), {0, 0, 0});
  }
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const std::size_t at = (y + 1) * stride + (x + 1);
      const std::size_t up = y * stride + (x + 1);
      const std::size_t left = (y + 1) * stride + x;
      const std::size_t diag = y * stride + x;
      const std::size_t src = std::size_t(y) * w + x;
      if (bytes) {
        const Rgb8 b = img.byte_at(src);
        const std::array<std::int64_t, 3> v{b.r, b.g, b.b};
        for (int c = 0; c < 3; ++c) {
          isum[at][c] = v[c] + isum[up][c] + isum[left][c] - isum[diag][c];
        }
      } else {
        for (int c = 0; c < 3; ++c) {
          rsum[at][c] = img[src][c] + rsum[up][c] + rsum[left][c] - rsum[diag][c];
        }
      }
    }
  }
  for (int y = 0; y < h; ++y) {
    const int y0 = std::max(0, y - radius);
    const int y1 = std::min(h - 1, y + radius) + 1;
    for (int x = 0; x < w; ++x) {
      const int x0 = std::max(0, x - radius);
      const int x1 = std::min(w - 1, x + radius) + 1;
      const std::int64_t count = std::int64_t(y1 - y0) * (x1 - x0);
      const std::size_t a = y1 * stride + x1, b = y0 * stride + x1,
                        c0 = y1 * stride + x0, d = y0 * stride + x0;
      const std::size_t dst = std::size_t(y) * w + x;
      if (bytes) {
        Rgb8 px;
        std::array<std::uint8_t*, 3> ch{&px.r, &px.g, &px.b};
        for (int c = 0; c < 3; ++c) {
          const std::int64_t s = isum[a][c] - isum[b][c] - isum[c0][c] + isum[d][c];
          // round half away from zero; s >= 0
          *ch[c] = std::uint8_t((2 * s + count) / (2 * count));
        }
        out.set_byte(dst, px);
      } else {
        Rgb px;
        for (int c = 0; c < 3; ++c) {
          const double s = rsum[a][c] - rsum[b][c] - rsum[c0][c] + rsum[d][c];
          px[c] = std::clamp(s / double(count), 0.0, 1.0);
        }
        out[dst] = px;
      }
    }
  }
  return out;
}

RgbImage chroma_shift(const RgbImage& img, const std::array<double, 3>& delta) {
  const bool bytes = img.format() == PixelFormat::kByte && integral(delta[0]) &&
                     integral(delta[1]) && integral(delta[2]);
  RgbImage out(img.width(), img.height(),
               bytes ? PixelFormat::kByte : PixelFormat::kReal);
  for (std::size_t i = 0; i < img.size(); ++i) {
    if (bytes) {
      const Rgb8 b = img.byte_at(i);
      const auto shift = [&](std::uint8_t v, double d) {
        return std::uint8_t(std::clamp(int(v) + int(d), 0, 255));
      };
      out.set_byte(i, {shift(b.r, delta[0]), shift(b.g, delta[1]),
                       shift(b.b, delta[2])});
    } else {
      Rgb p = img[i];
      for (int c = 0; c < 3; ++c) {
        p[c] = std::clamp(p[c] + delta[c] / 255.0, 0.0, 1.0);
      }
      out[i] = p;
    }
  }
  return out;
}

double parse_number(std::string_view s, std::string_view op) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || !std::isfinite(v)) {
    throw ConfigError("degrade op \"" + std::string(op) +
                      "\": bad number \"" + std::string(s) + "\"");
  }
  return v;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = s.find(sep, start);
    parts.push_back(s.substr(start, pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

std::string format_number(double v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

}  // namespace

void DegradeSpec::validate() const {
  for (const DegradeOp& op : ops) {
    if (const auto* n = std::get_if<GaussianNoise>(&op)) {
      if (!std::isfinite(n->sigma) || n->sigma < 0.0) {
        throw ConfigError("noise sigma must be finite and >= 0");
      }
    } else if (const auto* b = std::get_if<BoxBlur>(&op)) {
      if (b->radius < 0) throw ConfigError("blur radius must be >= 0");
    } else if (const auto* s = std::get_if<ChromaShift>(&op)) {
      for (double d : s->delta) {
        if (!std::isfinite(d)) throw ConfigError("shift must be finite");
      }
    }
  }
}

DegradeSpec DegradeSpec::parse(std::string_view text, std::uint64_t seed) {
  DegradeSpec spec;
  spec.seed = seed;
  if (text.empty()) return spec;
  for (std::string_view item : split(text, ',')) {
    const auto fields = split(item, ':');
    const std::string_view name = fields[0];
    const auto expect = [&](std::size_t n) {
      if (fields.size() != n + 1) {
        throw ConfigError("degrade op \"" + std::string(item) + "\" expects " +
                          std::to_string(n) + " argument(s)");
      }
    };
    if (name == "quantize8") {
      expect(0);
      spec.ops.emplace_back(Quantize8{});
    } else if (name == "noise" || name == "gaussian_noise") {
      expect(1);
      spec.ops.emplace_back(GaussianNoise{parse_number(fields[1], item)});
    } else if (name == "blur" || name == "box_blur") {
      expect(1);
      const double r = parse_number(fields[1], item);
      if (!integral(r)) throw ConfigError("blur radius must be an integer");
      spec.ops.emplace_back(BoxBlur{int(r)});
    } else if (name == "shift" || name == "chroma_shift") {
      expect(3);
      spec.ops.emplace_back(ChromaShift{{parse_number(fields[1], item),
                                         parse_number(fields[2], item),
                                         parse_number(fields[3], item)}});
    } else {
      throw ConfigError("unknown degrade op \"" + std::string(name) + "\"");
    }
  }
  spec.validate();
  return spec;
}

std::string DegradeSpec::to_string() const {
  std::string out;
  for (const DegradeOp& op : ops) {
    if (!out.empty()) out += ',';
    std::visit(
        [&](const auto& o) {
          using T = std::decay_t<decltype(o)>;
          if constexpr (std::is_same_v<T, Quantize8>) {
            out += "quantize8";
          } else if constexpr (std::is_same_v<T, GaussianNoise>) {
            out += "noise:" + format_number(o.sigma);
          } else if constexpr (std::is_same_v<T, BoxBlur>) {
            out += "blur:" + std::to_string(o.radius);
          } else {
            out += "shift:" + format_number(o.delta[0]) + ":" +
                   format_number(o.delta[1]) + ":" + format_number(o.delta[2]);
          }
        },
        op);
  }
  return out;
}

RgbImage degrade(const RgbImage& img, const DegradeSpec& spec) {
  spec.validate();
  NormalStream normals(spec.seed);
  RgbImage out = img;
  for (const DegradeOp& op : spec.ops) {
    if (std::holds_alternative<Quantize8>(op)) {
      out = out.quantized();
    } else if (const auto* n = std::get_if<GaussianNoise>(&op)) {
      out = add_noise(out, n->sigma, normals);
    } else if (const auto* b = std::get_if<BoxBlur>(&op)) {
      out = box_blur(out, b->radius);
    } else if (const auto* s = std::get_if<ChromaShift>(&op)) {
      out = chroma_shift(out, s->delta);
    }
  }
  return out;
}

}  // namespace visenc
