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

// Instruction text asking a generator to emit a task visualization.
//
// Segmentation prompts name every palette color once, in one of four
// styles taken from common prompt phrasings:
//
//   json_map          {"skateboard": "<255, 255, 0>", ...}
//   rgb_tuple         The skateboard is represented by (255, 255, 0).
//   hex               The skateboard is #FFFF00.
//   natural_language  ... the skateboard category in pure yellow (<255, 255, 0>)
//
// Instance prompts ask for one class at a time; the palette holds that
// class as its only entry and only the background color is prescribed.
// Depth and normal prompts describe the codec and ignore the style.

#ifndef VISENC_PROMPT_HPP_
#define VISENC_PROMPT_HPP_

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "visenc/depth_codec.hpp"
#include "visenc/seg_codec.hpp"
#include "visenc/task.hpp"

namespace visenc {

enum class PromptStyle { kJsonMap, kRgbTuple, kHex, kNaturalLanguage };

std::string to_string(PromptStyle style);
PromptStyle parse_prompt_style(std::string_view name);
std::vector<PromptStyle> all_prompt_styles();

struct PromptTemplate {
  Task task = Task::kSemantic;
  PromptStyle style = PromptStyle::kJsonMap;
  std::optional<Palette> palette;  // required for segmentation tasks
  DepthCodecConfig depth;          // describes the depth codec
  std::optional<std::string> colormap;  // LUT name instead of the cube path
};

// Deterministic. Throws ConfigError when a segmentation task has no palette
// or an empty one, or an instance palette has more than one class.
std::string render_prompt(const PromptTemplate& t);

// Closest entry of a small table of color names, prefixed "pure " on an
// exact match, e.g. "pure yellow".
std::string describe_color(Rgb8 c);

}  // namespace visenc

#endif  // VISENC_PROMPT_HPP_
