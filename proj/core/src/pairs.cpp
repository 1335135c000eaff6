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

#include "visenc/pairs.hpp"

#include <charconv>
#include <cmath>
#include <random>

#include "json.hpp"
#include "visenc/io.hpp"
#include "visenc/normal_codec.hpp"

namespace visenc {
namespace {

template <typename T, typename Parse>
WeightedMix<T> parse_mix(std::string_view text, Parse parse_name) {
  WeightedMix<T> mix;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t end = std::min(text.find(',', start), text.size());
    const std::string_view item = text.substr(start, end - start);
    const std::size_t colon = item.rfind(':');
    double weight = 1.0;
    std::string_view name = item;
    if (colon != std::string_view::npos) {
      name = item.substr(0, colon);
      const std::string_view w = item.substr(colon + 1);
      const auto [ptr, ec] = std::from_chars(w.data(), w.data() + w.size(), weight);
      if (ec != std::errc() || ptr != w.data() + w.size()) {
        throw ConfigError("bad mix weight in \"" + std::string(item) + "\"");
      }
    }
    if (!std::isfinite(weight) || weight < 0.0) {
      throw ConfigError("mix weights must be finite and >= 0");
    }
    mix.emplace_back(parse_name(name), weight);
    start = end + 1;
  }
  double total = 0.0;
  for (const auto& [v, w] : mix) total += w;
  if (!(total > 0.0)) throw ConfigError("mix weights sum to zero");
  return mix;
}

template <typename T>
const T& pick(const WeightedMix<T>& mix, std::uint64_t word) {
  double total = 0.0;
  for (const auto& [v, w] : mix) total += w;
  const double u = double(word >> 11) * 0x1.0p-53 * total;
  double acc = 0.0;
  for (const auto& [v, w] : mix) {
    acc += w;
    if (u < acc) return v;
  }
  // Rounding can leave u == total; fall back to the last positive weight.
  for (auto it = mix.rbegin(); it != mix.rend(); ++it) {
    if (it->second > 0.0) return it->first;
  }
  return mix.back().first;
}

std::string target_name(const std::string& id) {
  std::string safe;
  for (char ch : id) {
    const bool ok = std::isalnum(static_cast<unsigned char>(ch)) || ch == '-' ||
                    ch == '_' || ch == '.';
    safe.push_back(ok ? ch : '_');
  }
  return safe + "_target.png";
}

}  // namespace

WeightedMix<PromptStyle> parse_style_mix(std::string_view text) {
  return parse_mix<PromptStyle>(text, [](std::string_view name) {
    return parse_prompt_style(name);
  });
}

WeightedMix<std::string> parse_colormap_mix(std::string_view text) {
  return parse_mix<std::string>(text, [](std::string_view name) {
    if (name != "cube") load_lut(name);
    return std::string(name);
  });
}

PairManifest emit_training_pairs(const Manifest& manifest,
                                 const PairOptions& opts,
                                 const std::filesystem::path& out_dir) {
  if (opts.style_mix.empty() || opts.colormap_mix.empty()) {
    throw ConfigError("style and colormap mixes must be non-empty");
  }
  opts.config.validate();
  std::filesystem::create_directories(out_dir);
  std::mt19937_64 engine(opts.seed);
  PairManifest result;
  for (const ManifestRecord& rec : manifest.records) {
    const std::uint64_t style_word = engine();
    const std::uint64_t colormap_word = engine();
    const std::uint64_t instance_seed = engine();
    TrainingPair pair;
    pair.id = rec.id;
    pair.task = rec.task;
    pair.input_image = manifest.display_path(rec.input_image);
    pair.style = pick(opts.style_mix, style_word);
    pair.target = target_name(rec.id);
    try {
      PromptTemplate tmpl;
      tmpl.task = rec.task;
      tmpl.style = pair.style;
      tmpl.depth = opts.config.depth;
      RgbImage target;
      switch (rec.task) {
        case Task::kDepth: {
          pair.colormap = pick(opts.colormap_mix, colormap_word);
          const DepthMap gt = load_depth_gt(rec.gt);
          if (pair.colormap == "cube") {
            target = encode_depth(gt, opts.config.depth);
          } else {
            tmpl.colormap = pair.colormap;
            LutCodecOptions lut_opts = opts.config.lut_options();
            target = encode_depth_lut(gt, load_lut(pair.colormap),
                                      opts.config.depth.transform, lut_opts);
          }
          break;
        }
        case Task::kNormals:
          target = encode_normals(load_normals(rec.gt));
          break;
        case Task::kSemantic:
        case Task::kReferring: {
          tmpl.palette = load_palette(*rec.palette);
          target = encode_semantic(load_labels(rec.gt, *tmpl.palette),
                                   *tmpl.palette);
          break;
        }
        case Task::kInstance: {
          tmpl.palette = load_palette(*rec.palette);
          const InstanceMaskSet gt =
              load_instances(rec.gt, tmpl.palette->background);
          std::vector<Mask> masks;
          for (const auto& inst : gt.instances) masks.push_back(inst.mask);
          target = encode_instances(masks, gt.width, gt.height,
                                    tmpl.palette->background, instance_seed);
          break;
        }
      }
      pair.prompt = render_prompt(tmpl);
      save_rgb_image(out_dir / pair.target, target.quantized());
      result.pairs.push_back(std::move(pair));
    } catch (const std::exception& e) {
      result.skipped.push_back({rec.id, e.what()});
    }
  }
  return result;
}

std::string PairManifest::to_json() const {
  using ojson = nlohmann::ordered_json;
  ojson rows = ojson::array();
  for (const auto& p : pairs) {
    ojson row;
    row["id"] = p.id;
    row["task"] = to_string(p.task);
    row["input_image"] = p.input_image;
    row["prompt"] = p.prompt;
    row["target"] = p.target;
    row["style"] = to_string(p.style);
    if (!p.colormap.empty()) row["colormap"] = p.colormap;
    rows.push_back(row);
  }
  ojson skipped_rows = ojson::array();
  for (const auto& s : skipped) {
    skipped_rows.push_back({{"id", s.id}, {"warning", s.reason}});
  }
  ojson j;
  j["codec_version"] = kCodecVersion;
  j["pairs"] = rows;
  j["skipped"] = skipped_rows;
  return j.dump(2) + "\n";
}

}  // namespace visenc
