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

#include "visenc/seg_codec.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <string>
#include <unordered_map>

namespace visenc {
namespace {

std::uint32_t pack(Rgb8 c) {
  return (std::uint32_t(c.r) << 16) | (std::uint32_t(c.g) << 8) | c.b;
}

Rgb8 unpack(std::uint32_t key) {
  return {std::uint8_t(key >> 16), std::uint8_t(key >> 8), std::uint8_t(key)};
}

// Distance in 8-bit units between a real color and an 8-bit color.
double distance255(const Rgb& c, Rgb8 p) {
  const double dr = c.r * 255.0 - p.r;
  const double dg = c.g * 255.0 - p.g;
  const double db = c.b * 255.0 - p.b;
  return std::sqrt(dr * dr + dg * dg + db * db);
}

class DisjointSet {
 public:
  explicit DisjointSet(std::size_t n) : parent_(n) {
    std::iota(parent_.begin(), parent_.end(), std::size_t{0});
  }
  std::size_t find(std::size_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    // The smaller index becomes the root so roots are order-independent.
    if (b < a) std::swap(a, b);
    parent_[b] = a;
  }

 private:
  std::vector<std::size_t> parent_;
};

}  // namespace

void Palette::validate() const {
  std::set<std::string> names;
  std::set<std::uint32_t> colors{pack(background)};
  for (const auto& e : entries) {
    if (e.name.empty()) throw ConfigError("palette class name is empty");
    if (!names.insert(e.name).second) {
      throw ConfigError("palette class \"" + e.name + "\" appears twice");
    }
    if (!colors.insert(pack(e.color)).second) {
      throw ConfigError("palette color of \"" + e.name +
                        "\" duplicates another entry or the background");
    }
  }
}

double Palette::min_separation() const {
  std::vector<Rgb8> all{background};
  for (const auto& e : entries) all.push_back(e.color);
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < all.size(); ++i) {
    for (std::size_t j = i + 1; j < all.size(); ++j) {
      best = std::min(best, distance(all[i], all[j]));
    }
  }
  return best;
}

RgbImage encode_semantic(const LabelMap& map, const Palette& pal) {
  pal.validate();
  RgbImage out(map.width(), map.height(), PixelFormat::kByte,
               to_rgb(pal.background));
  const auto n = static_cast<std::int32_t>(pal.size());
  for (std::size_t i = 0; i < map.size(); ++i) {
    const std::int32_t label = map.labels[i];
    if (label == LabelMap::kBackground) continue;
    if (label < 0 || label >= n) {
      throw StructuralError("label " + std::to_string(label) + " at pixel " +
                            std::to_string(i) + " is outside the palette");
    }
    out.set_byte(i, pal.entries[label].color);
  }
  return out;
}

LabelMap decode_semantic(const RgbImage& img, const Palette& pal,
                         double max_dist) {
  pal.validate();
  if (!(max_dist >= 0.0)) throw ConfigError("max_dist must be >= 0");
  const auto classify = [&](const Rgb& c) {
    std::int32_t best = LabelMap::kBackground;
    double best_d = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < pal.size(); ++k) {
      const double d = distance255(c, pal.entries[k].color);
      if (d < best_d) {
        best_d = d;
        best = static_cast<std::int32_t>(k);
      }
    }
    const double d_bg = distance255(c, pal.background);
    if (d_bg < best_d) {
      best_d = d_bg;
      best = LabelMap::kBackground;
    }
    return best_d > max_dist ? LabelMap::kBackground : best;
  };

  LabelMap out(img.width(), img.height());
  std::unordered_map<std::uint32_t, std::int32_t> cache;
  const bool on_lattice = img.format() == PixelFormat::kByte;
  for (std::size_t i = 0; i < img.size(); ++i) {
    if (!on_lattice) {
      out.labels[i] = classify(img[i]);
      continue;
    }
    const std::uint32_t key = pack(img.byte_at(i));
    auto it = cache.find(key);
    if (it == cache.end()) it = cache.emplace(key, classify(img[i])).first;
    out.labels[i] = it->second;
  }
  return out;
}

LabelMap majority_filter(const LabelMap& map) {
  LabelMap out = map;
  const int w = map.width();
  const int h = map.height();
  std::map<std::int32_t, int> votes;
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      votes.clear();
      for (int dy = -1; dy <= 1; ++dy) {
        for (int dx = -1; dx <= 1; ++dx) {
          const int nx = x + dx;
          const int ny = y + dy;
          if (nx < 0 || ny < 0 || nx >= w || ny >= h) continue;
          ++votes[map.labels.at(nx, ny)];
        }
      }
      const std::int32_t own = map.labels.at(x, y);
      std::int32_t best = own;
      int best_votes = votes[own];
      for (const auto& [label, count] : votes) {
        if (count > best_votes) {
          best = label;
          best_votes = count;
        }
      }
      out.labels.at(x, y) = best;
    }
  }
  return out;
}

InstanceMaskSet make_instance_set(std::span<const Mask> masks, int width,
                                  int height, Rgb8 background) {
  InstanceMaskSet set{width, height, {}, background};
  Mask covered(width, height, 0);
  for (std::size_t m = 0; m < masks.size(); ++m) {
    const Mask& mask = masks[m];
    if (!mask.same_shape(width, height)) {
      throw StructuralError("mask " + std::to_string(m) +
                            " does not match the image shape");
    }
    Instance inst{mask, {}, 0};
    for (std::size_t i = 0; i < mask.size(); ++i) {
      if (!mask[i]) continue;
      if (covered[i]) {
        throw StructuralError("mask " + std::to_string(m) +
                              " overlaps an earlier mask at pixel " +
                              std::to_string(i));
      }
      covered[i] = 1;
      ++inst.area;
    }
    set.instances.push_back(std::move(inst));
  }
  return set;
}

std::vector<Rgb8> instance_colors(std::size_t count, Rgb8 background,
                                  std::uint64_t seed) {
  constexpr int kMaxRejections = 4096;
  std::mt19937_64 engine(seed);
  std::vector<Rgb8> colors;
  colors.reserve(count);
  int rejections = 0;
  while (colors.size() < count) {
    const std::uint64_t bits = engine();
    const Rgb8 candidate{std::uint8_t(bits & 0xff),
                         std::uint8_t((bits >> 8) & 0xff),
                         std::uint8_t((bits >> 16) & 0xff)};
    bool ok = distance(candidate, background) >= kInstanceColorSeparation;
    for (const Rgb8& c : colors) {
      if (!ok) break;
      ok = distance(candidate, c) >= kInstanceColorSeparation;
    }
    if (ok) {
      colors.push_back(candidate);
      rejections = 0;
    } else if (++rejections >= kMaxRejections) {
      throw CapacityError("cannot place " + std::to_string(count) +
                          " instance colors at separation " +
                          std::to_string(int(kInstanceColorSeparation)) +
                          "; placed " + std::to_string(colors.size()));
    }
  }
  return colors;
}

RgbImage encode_instances(std::span<const Mask> masks, int width, int height,
                          Rgb8 background, std::uint64_t seed) {
  const InstanceMaskSet set =
      make_instance_set(masks, width, height, background);
  const std::vector<Rgb8> colors =
      instance_colors(set.size(), background, seed);
  RgbImage out(width, height, PixelFormat::kByte, to_rgb(background));
  for (std::size_t m = 0; m < set.size(); ++m) {
    const Mask& mask = set.instances[m].mask;
    for (std::size_t i = 0; i < mask.size(); ++i) {
      if (mask[i]) out.set_byte(i, colors[m]);
    }
  }
  return out;
}

InstanceMaskSet decode_instances(const RgbImage& img, Rgb8 background,
                                 double color_tol, std::size_t min_area) {
  if (!(color_tol > 0.0) || !std::isfinite(color_tol)) {
    throw ConfigError("color_tol must be finite and > 0");
  }
  InstanceMaskSet result{img.width(), img.height(), {}, background};

  // Distinct foreground colors and their pixel counts. std::map keeps the
  // color order, and hence the clustering, deterministic.
  std::vector<std::uint32_t> pixel_keys(img.size());
  std::vector<std::uint8_t> foreground(img.size(), 0);
  std::map<std::uint32_t, std::size_t> counts;
  for (std::size_t i = 0; i < img.size(); ++i) {
    const Rgb8 c = img.byte_at(i);
    if (distance(c, background) <= color_tol) continue;
    pixel_keys[i] = pack(c);
    foreground[i] = 1;
    ++counts[pixel_keys[i]];
  }
  if (counts.empty()) return result;

  std::vector<std::uint32_t> colors;
  std::unordered_map<std::uint32_t, std::size_t> color_index;
  for (const auto& [key, n] : counts) {
    color_index.emplace(key, colors.size());
    colors.push_back(key);
  }

  // Single linkage over distinct colors, using a uniform grid with cells of
  // side color_tol so only neighbouring cells need comparing.
  const double cell = std::max(color_tol, 1.0);
  const auto cell_of = [&](std::uint8_t v) { return int(std::floor(v / cell)); };
  const auto cell_key = [](int a, int b, int c) {
    return (std::int64_t(a) << 32) | (std::int64_t(b) << 16) | std::int64_t(c);
  };
  std::unordered_map<std::int64_t, std::vector<std::size_t>> grid;
  for (std::size_t k = 0; k < colors.size(); ++k) {
    const Rgb8 c = unpack(colors[k]);
    grid[cell_key(cell_of(c.r), cell_of(c.g), cell_of(c.b))].push_back(k);
  }
  DisjointSet sets(colors.size());
  for (std::size_t k = 0; k < colors.size(); ++k) {
    const Rgb8 c = unpack(colors[k]);
    const int cr = cell_of(c.r), cg = cell_of(c.g), cb = cell_of(c.b);
    for (int dr = -1; dr <= 1; ++dr) {
      for (int dg = -1; dg <= 1; ++dg) {
        for (int db = -1; db <= 1; ++db) {
          const auto it = grid.find(cell_key(cr + dr, cg + dg, cb + db));
          if (it == grid.end()) continue;
          for (std::size_t j : it->second) {
            if (j > k && distance(c, unpack(colors[j])) <= color_tol) {
              sets.unite(k, j);
            }
          }
        }
      }
    }
  }

  // Cluster areas, then surviving clusters in order of first pixel.
  std::vector<std::size_t> area(colors.size(), 0);
  for (std::size_t k = 0; k < colors.size(); ++k) {
    area[sets.find(k)] += counts[colors[k]];
  }
  std::unordered_map<std::size_t, std::size_t> slot;  // root -> instance
  std::vector<std::array<double, 3>> color_sums;
  for (std::size_t i = 0; i < img.size(); ++i) {
    if (!foreground[i]) continue;
    const std::size_t root = sets.find(color_index[pixel_keys[i]]);
    if (area[root] < min_area) continue;
    auto it = slot.find(root);
    if (it == slot.end()) {
      it = slot.emplace(root, result.instances.size()).first;
      result.instances.push_back(
          {Mask(img.width(), img.height(), 0), {}, 0});
      color_sums.push_back({0.0, 0.0, 0.0});
    }
    Instance& inst = result.instances[it->second];
    inst.mask[i] = 1;
    ++inst.area;
    const Rgb8 c = unpack(pixel_keys[i]);
    color_sums[it->second][0] += c.r;
    color_sums[it->second][1] += c.g;
    color_sums[it->second][2] += c.b;
  }
  for (std::size_t m = 0; m < result.size(); ++m) {
    Instance& inst = result.instances[m];
    const double n = double(inst.area);
    inst.color = {std::uint8_t(std::lround(color_sums[m][0] / n)),
                  std::uint8_t(std::lround(color_sums[m][1] / n)),
                  std::uint8_t(std::lround(color_sums[m][2] / n))};
  }
  return result;
}

}  // namespace visenc
