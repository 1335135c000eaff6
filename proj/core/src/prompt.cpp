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

#include "visenc/prompt.hpp"

#include <array>
#include <cstdio>
#include <limits>

#include "json.hpp"
#include "visenc/io.hpp"

namespace visenc {
namespace {

struct NamedColor {
  const char* name;
  Rgb8 color;
};

constexpr std::array<NamedColor, 18> kColorNames{{
    {"black", {0, 0, 0}},         {"white", {255, 255, 255}},
    {"red", {255, 0, 0}},         {"green", {0, 255, 0}},
    {"blue", {0, 0, 255}},        {"yellow", {255, 255, 0}},
    {"cyan", {0, 255, 255}},      {"magenta", {255, 0, 255}},
    {"orange", {255, 165, 0}},    {"purple", {128, 0, 128}},
    {"pink", {255, 192, 203}},    {"gray", {128, 128, 128}},
    {"brown", {139, 69, 19}},     {"olive", {128, 128, 0}},
    {"teal", {0, 128, 128}},      {"navy", {0, 0, 128}},
    {"maroon", {128, 0, 0}},      {"light green", {144, 238, 144}},
}};

std::string tuple(Rgb8 c) {
  return std::to_string(c.r) + ", " + std::to_string(c.g) + ", " +
         std::to_string(c.b);
}

std::string angle_tuple(Rgb8 c) { return "<" + tuple(c) + ">"; }
std::string paren_tuple(Rgb8 c) { return "(" + tuple(c) + ")"; }

std::string quoted(const std::string& s) { return nlohmann::json(s).dump(); }

std::string number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

// Color in the requested style, for sentences.
std::string styled(Rgb8 c, PromptStyle style) {
  switch (style) {
    case PromptStyle::kHex: return to_hex_color(c);
    case PromptStyle::kRgbTuple: return paren_tuple(c);
    case PromptStyle::kJsonMap: return angle_tuple(c);
    case PromptStyle::kNaturalLanguage:
      return describe_color(c) + " (" + angle_tuple(c) + ")";
  }
  return angle_tuple(c);
}

std::string json_mapping(const Palette& pal, bool with_classes) {
  std::string out = "{";
  if (with_classes) {
    for (const auto& e : pal.entries) {
      out += quoted(e.name) + ": \"" + angle_tuple(e.color) + "\", ";
    }
  }
  out += "\"background\": \"" + angle_tuple(pal.background) + "\"}";
  return out;
}

std::string semantic_prompt(const Palette& pal, PromptStyle style) {
  std::string out;
  switch (style) {
    case PromptStyle::kJsonMap:
      return "Generate a semantic segmentation visualization image, using "
             "this color mapping: " +
             json_mapping(pal, true) + ".";
    case PromptStyle::kRgbTuple:
      out = "This image is a per-pixel class labeling of the input.";
      for (const auto& e : pal.entries) {
        out += " The " + e.name + " is represented by " +
               paren_tuple(e.color) + ".";
      }
      return out + " The background is " + paren_tuple(pal.background) + ".";
    case PromptStyle::kHex:
      out = "Generate a semantic segmentation visualization of the input.";
      for (const auto& e : pal.entries) {
        out += " The " + e.name + " is " + to_hex_color(e.color) + ".";
      }
      return out + " The background is " + to_hex_color(pal.background) + ".";
    case PromptStyle::kNaturalLanguage:
      out = "Segment the";
      for (std::size_t k = 0; k < pal.size(); ++k) {
        const auto& e = pal.entries[k];
        if (k > 0) out += k + 1 == pal.size() ? ", and the" : ", the";
        out += " " + e.name + " category in " + styled(e.color, style);
      }
      return out + ". Render everything else in " +
             styled(pal.background, style) + ".";
  }
  return out;
}

std::string instance_prompt(const Palette& pal, PromptStyle style) {
  const std::string& cls = pal.entries.front().name;
  switch (style) {
    case PromptStyle::kJsonMap:
      return "Generate an instance segmentation visualization of this image. "
             "Each " + cls + " is colored differently, using this "
             "background mapping: " + json_mapping(pal, false) + ".";
    case PromptStyle::kRgbTuple:
      return "This image shows segmentation masks for the " + cls +
             " instances from the input image. The background is " +
             paren_tuple(pal.background) + ". Each " + cls +
             " is represented by a different solid color.";
    case PromptStyle::kHex:
      return "This image shows segmentation masks for the " + cls +
             " instances from the input image. The background is set to " +
             to_hex_color(pal.background) + ". Each " + cls +
             " instance is represented by a solid mask, and a different "
             "color is used for each mask.";
    case PromptStyle::kNaturalLanguage:
      return "Generate an instance segmentation visualization of this image. "
             "Each " + cls + " is colored differently. The background is " +
             styled(pal.background, style) + ".";
  }
  return {};
}

std::string referring_prompt(const Palette& pal, PromptStyle style) {
  std::string out;
  switch (style) {
    case PromptStyle::kJsonMap:
      return "Generate a segmentation map image of the referred regions, "
             "using this color mapping: " +
             json_mapping(pal, true) + ".";
    case PromptStyle::kRgbTuple:
      out = "This image shows segmentation masks from the given image.";
      for (const auto& e : pal.entries) {
        out += " The " + e.name + " is represented by " +
               paren_tuple(e.color) + ".";
      }
      return out + " The background is " + paren_tuple(pal.background) + ".";
    case PromptStyle::kHex:
      out = "This image shows segmentation masks from the given image.";
      for (const auto& e : pal.entries) {
        out += " The " + e.name + " is rendered as " + to_hex_color(e.color) +
               ".";
      }
      return out + " The background is " + to_hex_color(pal.background) + ".";
    case PromptStyle::kNaturalLanguage:
      out = "A segmentation map image.";
      for (const auto& e : pal.entries) {
        out += " The area that corresponds to the " + e.name +
               " is rendered solid " + styled(e.color, style) + ".";
      }
      return out + " Everything else is rendered " +
             styled(pal.background, style) + ".";
  }
  return out;
}

std::string depth_prompt(const PromptTemplate& t) {
  const auto& p = t.depth.transform;
  std::string out =
      "Generate a metric depth visualization of this image. Curve each "
      "depth d in meters as t = 1 - (1 - d / (lambda * c))^(lambda + 1) with "
      "lambda = " + number(p.lambda) + " and c = " + number(p.c) + ", capped "
      "at t = " + number(t.depth.t_max) + ", then ";
  if (t.colormap) {
    out += "color t with the " + *t.colormap +
           " colormap from its first color (near) to its last color (far).";
  } else {
    out += "color t by walking the RGB cube edges from black (near) to white "
           "(far) through the corners";
    const auto& corners = t.depth.path.corners();
    for (std::size_t i = 0; i < corners.size(); ++i) {
      out += (i == 0 ? " " : ", ") + paren_tuple(to_rgb8(corners[i]));
    }
    out += ". Paint pixels without valid depth " +
           paren_tuple(to_rgb8(t.depth.invalid_color)) + ".";
  }
  return out;
}

}  // namespace

std::string to_string(PromptStyle style) {
  switch (style) {
    case PromptStyle::kJsonMap: return "json_map";
    case PromptStyle::kRgbTuple: return "rgb_tuple";
    case PromptStyle::kHex: return "hex";
    case PromptStyle::kNaturalLanguage: return "natural_language";
  }
  return "unknown";
}

std::vector<PromptStyle> all_prompt_styles() {
  return {PromptStyle::kJsonMap, PromptStyle::kRgbTuple, PromptStyle::kHex,
          PromptStyle::kNaturalLanguage};
}

PromptStyle parse_prompt_style(std::string_view name) {
  for (PromptStyle s : all_prompt_styles()) {
    if (to_string(s) == name) return s;
  }
  throw ConfigError("unknown prompt style \"" + std::string(name) + "\"");
}

std::string describe_color(Rgb8 c) {
  const NamedColor* best = &kColorNames.front();
  double best_d = std::numeric_limits<double>::infinity();
  for (const auto& named : kColorNames) {
    const double d = distance(c, named.color);
    if (d < best_d) {
      best_d = d;
      best = &named;
    }
  }
  return (best_d == 0.0 ? "pure " : "") + std::string(best->name);
}

std::string render_prompt(const PromptTemplate& t) {
  switch (t.task) {
    case Task::kDepth:
      t.depth.validate();
      return depth_prompt(t);
    case Task::kNormals:
      return "Generate a camera-space surface normal visualization of this "
             "image, with +x pointing right, +y up and +z out of the image "
             "toward the camera. Map each unit normal (x, y, z) to "
             "R = (1 - x) / 2, G = (1 + y) / 2, B = (1 + z) / 2, so surfaces "
             "facing left are pinkish red, surfaces facing up are light "
             "green and surfaces facing the camera are light blue.";
    default:
      break;
  }
  if (!t.palette || t.palette->entries.empty()) {
    throw ConfigError(to_string(t.task) + " prompt needs a non-empty palette");
  }
  t.palette->validate();
  if (t.task == Task::kInstance) {
    if (t.palette->size() != 1) {
      throw ConfigError("instance prompts segment one class at a time; "
                        "palette has " +
                        std::to_string(t.palette->size()) + " classes");
    }
    return instance_prompt(*t.palette, t.style);
  }
  if (t.task == Task::kReferring) return referring_prompt(*t.palette, t.style);
  return semantic_prompt(*t.palette, t.style);
}

}  // namespace visenc
