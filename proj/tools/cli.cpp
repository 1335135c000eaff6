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

#include "cli.hpp"

#include <CLI11.hpp>

#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <optional>
#include <sstream>

#include "visenc/degrade.hpp"
#include "visenc/depth_codec.hpp"
#include "visenc/eval.hpp"
#include "visenc/geometry.hpp"
#include "visenc/io.hpp"
#include "visenc/normal_codec.hpp"
#include "visenc/pairs.hpp"
#include "visenc/prompt.hpp"
#include "visenc/seg_codec.hpp"

namespace visenc::cli {
namespace {

namespace fs = std::filesystem;

// Flags shared by every subcommand. Unset flags fall back to the --config
// file, then to library defaults.
struct CodecFlags {
  std::optional<std::string> config;
  std::optional<std::uint64_t> seed;
  std::optional<double> lambda;
  std::optional<double> c;
  std::optional<double> t_max;
  std::optional<std::string> corner_order;
  std::optional<std::string> lut;
  std::optional<std::size_t> lut_samples;
  std::optional<double> color_tol;
  std::optional<std::size_t> min_area;
  std::optional<double> iou_threshold;
  std::optional<std::string> dataset;
  std::optional<double> d_min;
  std::optional<double> d_max;
  std::optional<double> max_dist;
  std::optional<double> min_norm;
  std::optional<std::string> degrade;
  std::optional<unsigned> threads;
  bool smooth = false;

  RunConfig resolve() const {
    RunConfig cfg;
    if (config) cfg.merge_json(read_text_file(*config));
    if (dataset) cfg.apply_dataset(*dataset);
    if (seed) cfg.seed = *seed;
    if (lambda) cfg.depth.transform.lambda = *lambda;
    if (c) cfg.depth.transform.c = *c;
    if (t_max) cfg.depth.t_max = *t_max;
    if (corner_order) cfg.depth.path = CubePath::parse(*corner_order);
    if (lut) cfg.lut = *lut;
    if (lut_samples) cfg.lut_samples = *lut_samples;
    if (color_tol) cfg.color_tol = *color_tol;
    if (min_area) cfg.min_area = *min_area;
    if (iou_threshold) cfg.iou_threshold = *iou_threshold;
    if (d_min) cfg.d_min = *d_min;
    if (d_max) cfg.d_max = *d_max;
    if (max_dist) cfg.max_dist = *max_dist;
    if (min_norm) cfg.min_norm = *min_norm;
    if (degrade) cfg.degrade = *degrade;
    if (threads) cfg.threads = *threads;
    if (smooth) cfg.smooth = true;
    cfg.validate();
    return cfg;
  }
};

void add_codec_flags(CLI::App* sub, CodecFlags& f) {
  sub->add_option("--config", f.config, "JSON run configuration");
  sub->add_option("--seed", f.seed, "Seed for noise, instance colors, pairs");
  sub->add_option("--lambda", f.lambda, "Power transform shape (< -1)");
  sub->add_option("--c", f.c, "Power transform scale (> 0)");
  sub->add_option("--t-max", f.t_max, "Normalized distance cap in (0, 1)");
  sub->add_option("--corner-order", f.corner_order,
                  "Cube path as 8 octal digits (4r+2g+b), default 01326457");
  sub->add_option("--lut", f.lut,
                  "Depth colormap: grayscale, viridis, plasma, inferno or a "
                  "colormap JSON file");
  sub->add_option("--lut-samples", f.lut_samples, "Dense samples for LUT decode");
  sub->add_option("--color-tol", f.color_tol, "Instance clustering tolerance");
  sub->add_option("--min-area", f.min_area, "Smallest instance kept, pixels");
  sub->add_option("--iou-threshold", f.iou_threshold, "Instance match IoU");
  sub->add_option("--dataset", f.dataset, "Depth range preset: indoor, driving");
  sub->add_option("--d-min", f.d_min, "Smallest evaluated depth, meters");
  sub->add_option("--d-max", f.d_max, "Largest evaluated depth, meters");
  sub->add_option("--max-dist", f.max_dist, "Semantic color match radius");
  sub->add_option("--min-norm", f.min_norm, "Normal decode validity floor");
  sub->add_option("--degrade", f.degrade,
                  "Corruption applied to predictions, e.g. noise:4,quantize8");
  sub->add_option("--threads", f.threads, "Eval worker threads, 0 = all cores");
  sub->add_flag("--smooth", f.smooth, "3x3 majority filter after decoding");
}

Intrinsics parse_intrinsics(const std::string& text) {
  std::vector<double> v;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      v.push_back(std::stod(item, &used));
      if (used != item.size()) throw 0;
    } catch (...) {
      throw ConfigError("bad intrinsics value \"" + item + "\"");
    }
  }
  if (v.size() != 4) throw ConfigError("--intrinsics expects fx,fy,cx,cy");
  Intrinsics k{v[0], v[1], v[2], v[3]};
  k.validate();
  return k;
}

// An 8-bit RGB PNG is an encoded visualization; anything else is depth GT.
DepthMap load_any_depth(const fs::path& path, const RunConfig& cfg) {
  const auto bytes = read_file(path);
  if (bytes.size() >= 8 && bytes[0] == 0x89 && bytes[1] == 'P') {
    const PngRaster r = decode_png(bytes);
    if (r.channels >= 3) {
      const RgbImage img = load_rgb_image(path);
      return cfg.lut ? decode_depth_lut(img, load_lut(*cfg.lut),
                                        cfg.depth.transform, cfg.lut_options())
                     : decode_depth(img, cfg.depth);
    }
  }
  return load_depth_gt(path);
}

struct Options {
  CodecFlags codec;
  std::string in;
  std::string out;
  std::string palette;
  std::string manifest;
  std::string csv;
  std::string intrinsics;
  std::string colors;
  std::string ops;
  std::string task = "semantic";
  std::string style = "json_map";
  std::string style_mix = "json_map";
  std::string colormap_mix = "cube";
  bool instances = false;
};

Palette palette_or_default(const std::string& path) {
  return path.empty() ? Palette{} : load_palette(path);
}

int eval_command(const Options& o, EvalKind kind, std::ostream& out) {
  const RunConfig cfg = o.codec.resolve();
  const EvalReport report = run_eval(Manifest::load(o.manifest), kind, cfg);
  write_text_file(o.out, report.to_json());
  if (!o.csv.empty()) write_text_file(o.csv, report.to_csv());
  out << to_string(kind) << ": scored " << report.n_scored() << ", failed "
      << report.n_failed() << "\n";
  for (const auto& [k, v] : report.aggregate) out << "  " << k << " = " << v << "\n";
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"visenc: encode, decode and evaluate vision task outputs "
               "rendered as RGB images",
               "visenc"};
  app.require_subcommand(1);
  Options o;
  std::map<CLI::App*, std::function<int()>> actions;

  const auto sub = [&](const char* name, const char* help,
                       std::function<int()> action) {
    CLI::App* s = app.add_subcommand(name, help);
    add_codec_flags(s, o.codec);
    actions[s] = std::move(action);
    return s;
  };

  auto* encode_depth_cmd = sub("encode-depth",
      "Depth ground truth (16-bit mm PNG or PFM) to an 8-bit RGB PNG", [&] {
        const RunConfig cfg = o.codec.resolve();
        const DepthMap depth = load_depth_gt(o.in);
        const RgbImage img =
            cfg.lut ? encode_depth_lut(depth, load_lut(*cfg.lut),
                                       cfg.depth.transform, cfg.lut_options())
                    : encode_depth(depth, cfg.depth);
        save_rgb_image(o.out, img.quantized());
        return kExitOk;
      });
  encode_depth_cmd->add_option("--in", o.in, "Depth file")->required();
  encode_depth_cmd->add_option("--out", o.out, "Output PNG")->required();

  auto* decode_depth_cmd = sub("decode-depth",
      "RGB depth visualization to depth (.pfm meters or .png 16-bit mm)", [&] {
        const RunConfig cfg = o.codec.resolve();
        const RgbImage img = load_rgb_image(o.in);
        const DepthMap depth =
            cfg.lut ? decode_depth_lut(img, load_lut(*cfg.lut),
                                       cfg.depth.transform, cfg.lut_options())
                    : decode_depth(img, cfg.depth);
        save_depth(o.out, depth);
        return kExitOk;
      });
  decode_depth_cmd->add_option("--in", o.in, "Input PNG")->required();
  decode_depth_cmd->add_option("--out", o.out, "Output depth file")->required();

  auto* encode_normals_cmd = sub("encode-normals",
      "Normal map (3-channel PFM) to an 8-bit RGB PNG", [&] {
        o.codec.resolve();
        save_rgb_image(o.out, encode_normals(load_normals(o.in)).quantized());
        return kExitOk;
      });
  encode_normals_cmd->add_option("--in", o.in, "Normal PFM")->required();
  encode_normals_cmd->add_option("--out", o.out, "Output PNG")->required();

  auto* decode_normals_cmd = sub("decode-normals",
      "RGB normal visualization to a 3-channel PFM", [&] {
        const RunConfig cfg = o.codec.resolve();
        save_normals_pfm(o.out,
                         decode_normals(load_rgb_image(o.in), cfg.min_norm));
        return kExitOk;
      });
  decode_normals_cmd->add_option("--in", o.in, "Input PNG")->required();
  decode_normals_cmd->add_option("--out", o.out, "Output PFM")->required();

  auto* encode_seg_cmd = sub("encode-seg",
      "Label map (or instance ids with --instances) to a colored PNG", [&] {
        const RunConfig cfg = o.codec.resolve();
        if (o.instances) {
          const Palette pal = palette_or_default(o.palette);
          const InstanceMaskSet set = load_instances(o.in, pal.background);
          std::vector<Mask> masks;
          for (const auto& inst : set.instances) masks.push_back(inst.mask);
          save_rgb_image(o.out, encode_instances(masks, set.width, set.height,
                                                 pal.background, cfg.seed));
          return kExitOk;
        }
        if (o.palette.empty()) throw ConfigError("--palette is required");
        const Palette pal = load_palette(o.palette);
        save_rgb_image(o.out, encode_semantic(load_labels(o.in, pal), pal));
        return kExitOk;
      });
  encode_seg_cmd->add_option("--in", o.in, "Label or instance-id PNG")->required();
  encode_seg_cmd->add_option("--out", o.out, "Output PNG")->required();
  encode_seg_cmd->add_option("--palette", o.palette, "Palette JSON");
  encode_seg_cmd->add_flag("--instances", o.instances, "Instance mode");

  auto* decode_seg_cmd = sub("decode-seg",
      "Colored PNG to a label PNG (or instance-id PNG with --instances)", [&] {
        const RunConfig cfg = o.codec.resolve();
        const RgbImage img = load_rgb_image(o.in);
        if (o.instances) {
          const Palette pal = palette_or_default(o.palette);
          save_instance_ids_png(o.out, decode_instances(img, pal.background,
                                                        cfg.color_tol,
                                                        cfg.min_area));
          return kExitOk;
        }
        if (o.palette.empty()) throw ConfigError("--palette is required");
        LabelMap labels =
            decode_semantic(img, load_palette(o.palette), cfg.max_dist);
        if (cfg.smooth) labels = majority_filter(labels);
        save_labels_png(o.out, labels);
        return kExitOk;
      });
  decode_seg_cmd->add_option("--in", o.in, "Input PNG")->required();
  decode_seg_cmd->add_option("--out", o.out, "Output PNG")->required();
  decode_seg_cmd->add_option("--palette", o.palette, "Palette JSON");
  decode_seg_cmd->add_flag("--instances", o.instances, "Instance mode");

  auto* degrade_cmd = sub("degrade", "Apply deterministic corruptions", [&] {
    const RunConfig cfg = o.codec.resolve();
    const std::string text = o.ops.empty() ? cfg.degrade : o.ops;
    const RgbImage img = load_rgb_image(o.in);
    save_rgb_image(o.out, degrade(img, DegradeSpec::parse(text, cfg.seed)));
    return kExitOk;
  });
  degrade_cmd->add_option("--in", o.in, "Input PNG")->required();
  degrade_cmd->add_option("--out", o.out, "Output PNG")->required();
  degrade_cmd->add_option("--ops", o.ops,
                          "Ops, e.g. noise:4,blur:1,shift:8:0:-8,quantize8");

  for (auto [name, kind] :
       {std::pair{"eval-depth", EvalKind::kDepth},
        std::pair{"eval-normals", EvalKind::kNormals},
        std::pair{"eval-seg", EvalKind::kSegmentation}}) {
    auto* cmd = sub(name, "Evaluate manifest predictions",
                    [&, kind = kind] { return eval_command(o, kind, out); });
    cmd->add_option("--manifest", o.manifest, "Manifest JSON")->required();
    cmd->add_option("--out", o.out, "Report JSON")->required();
    cmd->add_option("--csv", o.csv, "Optional per-image CSV");
  }

  auto* unproject_cmd = sub("unproject",
      "Depth (GT file or RGB visualization) to an ASCII PLY point cloud", [&] {
        const RunConfig cfg = o.codec.resolve();
        const DepthMap depth = load_any_depth(o.in, cfg);
        const Intrinsics k = parse_intrinsics(o.intrinsics);
        std::optional<RgbImage> colors;
        if (!o.colors.empty()) colors = load_rgb_image(o.colors);
        save_ply(o.out, unproject(depth, k, colors ? &*colors : nullptr));
        return kExitOk;
      });
  unproject_cmd->add_option("--in", o.in, "Depth file or RGB PNG")->required();
  unproject_cmd->add_option("--intrinsics", o.intrinsics, "fx,fy,cx,cy")
      ->required();
  unproject_cmd->add_option("--colors", o.colors, "Optional color PNG");
  unproject_cmd->add_option("--out", o.out, "Output PLY")->required();

  auto* prompts_cmd = sub("make-prompts", "Render a task instruction", [&] {
    const RunConfig cfg = o.codec.resolve();
    PromptTemplate t;
    t.task = parse_task(o.task);
    t.depth = cfg.depth;
    if (cfg.lut) t.colormap = load_lut(*cfg.lut).name;
    if (!o.palette.empty()) t.palette = load_palette(o.palette);
    std::string text;
    if (o.style == "all") {
      for (PromptStyle s : all_prompt_styles()) {
        t.style = s;
        text += to_string(s) + "\t" + render_prompt(t) + "\n";
      }
    } else {
      t.style = parse_prompt_style(o.style);
      text = render_prompt(t) + "\n";
    }
    if (o.out.empty() || o.out == "-") {
      out << text;
    } else {
      write_text_file(o.out, text);
    }
    return kExitOk;
  });
  prompts_cmd->add_option("--task", o.task,
                          "depth, normals, semantic, instance, referring");
  prompts_cmd->add_option("--style", o.style,
                          "json_map, rgb_tuple, hex, natural_language or all");
  prompts_cmd->add_option("--palette", o.palette, "Palette JSON");
  prompts_cmd->add_option("--out", o.out, "Output text file (default stdout)");

  auto* pairs_cmd = sub("make-pairs",
      "Write training targets and pairs.json for a manifest", [&] {
        PairOptions opts;
        opts.config = o.codec.resolve();
        opts.seed = opts.config.seed;
        opts.style_mix = parse_style_mix(o.style_mix);
        opts.colormap_mix = parse_colormap_mix(o.colormap_mix);
        const PairManifest pairs =
            emit_training_pairs(Manifest::load(o.manifest), opts, o.out);
        write_text_file(fs::path(o.out) / "pairs.json", pairs.to_json());
        out << "pairs: " << pairs.pairs.size() << ", skipped "
            << pairs.skipped.size() << "\n";
        for (const auto& s : pairs.skipped) {
          err << "warning: skipped " << s.id << ": " << s.reason << "\n";
        }
        return kExitOk;
      });
  pairs_cmd->add_option("--manifest", o.manifest, "Manifest JSON")->required();
  pairs_cmd->add_option("--out", o.out, "Output directory")->required();
  pairs_cmd->add_option("--style-mix", o.style_mix, "e.g. hex:1,json_map:1");
  pairs_cmd->add_option("--colormap-mix", o.colormap_mix,
                        "e.g. cube:3,viridis:1,grayscale:1");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  if (!reversed.empty()) reversed.pop_back();  // program name
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitConfigError;
  }

  try {
    for (const auto& [cmd, action] : actions) {
      if (cmd->parsed()) return action();
    }
    return kExitConfigError;
  } catch (const ConfigError& e) {
    err << "configuration error: " << e.what() << "\n";
    return kExitConfigError;
  } catch (const FormatError& e) {
    err << "format error: " << e.what() << "\n";
    return kExitConfigError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitRunError;
  }
}

}  // namespace visenc::cli
