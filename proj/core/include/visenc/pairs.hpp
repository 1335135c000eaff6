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

// Training-pair emission: (input image, instruction, target visualization)
// triples for mixing vision tasks into a generator's training data.
//
// For every record, in manifest order, three words are drawn from a
// std::mt19937_64 seeded with PairOptions::seed: one picks the prompt style,
// one picks the depth colormap, one seeds instance colors. A word w selects
// from a weighted mix by comparing (w >> 11) * 2^-53 against cumulative
// normalized weights in the order the mix lists them.

#ifndef VISENC_PAIRS_HPP_
#define VISENC_PAIRS_HPP_

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "visenc/eval.hpp"
#include "visenc/manifest.hpp"
#include "visenc/prompt.hpp"

namespace visenc {

template <typename T>
using WeightedMix = std::vector<std::pair<T, double>>;

// "hex:1,json_map:0.5"; a bare name gets weight 1.
WeightedMix<PromptStyle> parse_style_mix(std::string_view text);
// Colormap names: "cube" (the cube path) or any LUT accepted by load_lut.
WeightedMix<std::string> parse_colormap_mix(std::string_view text);

struct PairOptions {
  WeightedMix<PromptStyle> style_mix{{PromptStyle::kJsonMap, 1.0}};
  WeightedMix<std::string> colormap_mix{{"cube", 1.0}};
  std::uint64_t seed = 0;
  RunConfig config;
};

struct TrainingPair {
  std::string id;
  Task task = Task::kDepth;
  std::string input_image;
  std::string prompt;
  std::string target;  // file name inside the output directory
  PromptStyle style = PromptStyle::kJsonMap;
  std::string colormap;  // depth records only
};

struct SkippedRecord {
  std::string id;
  std::string reason;
};

struct PairManifest {
  std::vector<TrainingPair> pairs;
  std::vector<SkippedRecord> skipped;

  std::string to_json() const;
};

// Writes one 8-bit PNG target per record into out_dir (created if needed).
// Records whose ground truth cannot be loaded or encoded are skipped with a
// reason.
PairManifest emit_training_pairs(const Manifest& manifest,
                                 const PairOptions& opts,
                                 const std::filesystem::path& out_dir);

}  // namespace visenc

#endif  // VISENC_PAIRS_HPP_
