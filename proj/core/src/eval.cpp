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

#include "visenc/eval.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <map>
#include <sstream>
#include <thread>

#include "json.hpp"
#include "visenc/degrade.hpp"
#include "visenc/io.hpp"
#include "visenc/metrics.hpp"
#include "visenc/normal_codec.hpp"

namespace visenc {
namespace {

using ojson = nlohmann::ordered_json;

constexpr const char* kMatchedF1Note =
    "instance.matched_f1 approximates pmF1: one-to-one optimal assignment, "
    "pairs count at IoU >= iou_threshold, averaged over images";

RgbImage load_prediction(const ManifestRecord& rec, const RunConfig& cfg) {
  if (!rec.pred) throw RunError("record has no prediction");
  if (!std::filesystem::exists(*rec.pred)) {
    throw RunError("prediction " + rec.pred->string() + " does not exist");
  }
  RgbImage img = load_rgb_image(*rec.pred);
  if (!cfg.degrade.empty()) {
    img = degrade(img, DegradeSpec::parse(cfg.degrade, cfg.seed));
  }
  return img;
}

template <typename T>
void read_key(const nlohmann::json& j, const char* key, T& out) {
  if (!j.contains(key)) return;
  try {
    out = j.at(key).get<T>();
  } catch (const nlohmann::json::exception&) {
    throw ConfigError(std::string("config key \"") + key +
                      "\" has the wrong type");
  }
}

}  // namespace

void RunConfig::apply_dataset(std::string_view name) {
  if (name == "indoor") {
    d_min = 1e-3;
    d_max = 10.0;
  } else if (name == "driving") {
    d_min = 1e-3;
    d_max = 80.0;
  } else if (!name.empty()) {
    throw ConfigError("unknown dataset preset \"" + std::string(name) +
                      "\" (expected indoor or driving)");
  }
  dataset = std::string(name);
}

void RunConfig::merge_json(std::string_view json_text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::parse_error& e) {
    throw FormatError(std::string("config: ") + e.what(), e.byte);
  }
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  static const std::vector<std::string> known = {
      "lambda", "c", "t_max", "corner_order", "invalid_threshold", "lut",
      "lut_samples", "dataset", "d_min", "d_max", "min_norm", "max_dist",
      "smooth", "color_tol", "min_area", "iou_threshold", "degrade", "seed",
      "threads"};
  for (const auto& [key, value] : j.items()) {
    if (std::find(known.begin(), known.end(), key) == known.end()) {
      throw ConfigError("unknown config key \"" + key + "\"");
    }
  }
  if (j.contains("dataset")) {
    std::string name;
    read_key(j, "dataset", name);
    apply_dataset(name);
  }
  read_key(j, "lambda", depth.transform.lambda);
  read_key(j, "c", depth.transform.c);
  read_key(j, "t_max", depth.t_max);
  if (j.contains("corner_order")) {
    std::string order;
    read_key(j, "corner_order", order);
    depth.path = CubePath::parse(order);
  }
  read_key(j, "invalid_threshold", depth.invalid_distance_threshold);
  if (j.contains("lut")) {
    if (j["lut"].is_null()) {
      lut.reset();
    } else {
      std::string name;
      read_key(j, "lut", name);
      lut = name;
    }
  }
  read_key(j, "lut_samples", lut_samples);
  read_key(j, "d_min", d_min);
  read_key(j, "d_max", d_max);
  read_key(j, "min_norm", min_norm);
  read_key(j, "max_dist", max_dist);
  read_key(j, "smooth", smooth);
  read_key(j, "color_tol", color_tol);
  read_key(j, "min_area", min_area);
  read_key(j, "iou_threshold", iou_threshold);
  read_key(j, "degrade", degrade);
  read_key(j, "seed", seed);
  read_key(j, "threads", threads);
}

std::string RunConfig::to_json() const {
  ojson j;
  j["lambda"] = depth.transform.lambda;
  j["c"] = depth.transform.c;
  j["t_max"] = depth.t_max;
  j["corner_order"] = depth.path.to_string();
  j["invalid_threshold"] = depth.invalid_distance_threshold;
  j["lut"] = lut ? ojson(*lut) : ojson(nullptr);
  j["lut_samples"] = lut_samples;
  j["dataset"] = dataset;
  j["d_min"] = d_min;
  j["d_max"] = d_max;
  j["min_norm"] = min_norm;
  j["max_dist"] = max_dist;
  j["smooth"] = smooth;
  j["color_tol"] = color_tol;
  j["min_area"] = min_area;
  j["iou_threshold"] = iou_threshold;
  j["degrade"] = degrade;
  j["seed"] = seed;
  return j.dump();
}

void RunConfig::validate() const {
  depth.validate();
  if (lut) load_lut(*lut);
  if (lut_samples < 2) throw ConfigError("lut_samples must be >= 2");
  if (!(d_min < d_max) || d_min < 0.0) {
    throw ConfigError("depth range needs 0 <= d_min < d_max");
  }
  if (!(min_norm > 0.0 && min_norm < 1.0)) {
    throw ConfigError("min_norm must lie in (0, 1)");
  }
  if (!(max_dist >= 0.0)) throw ConfigError("max_dist must be >= 0");
  if (!(color_tol > 0.0)) throw ConfigError("color_tol must be > 0");
  if (!(iou_threshold > 0.0 && iou_threshold <= 1.0)) {
    throw ConfigError("iou_threshold must lie in (0, 1]");
  }
  DegradeSpec::parse(degrade, seed);
}

LutCodecOptions RunConfig::lut_options() const {
  LutCodecOptions opts;
  opts.decode_samples = lut_samples;
  opts.t_max = depth.t_max;
  return opts;
}

std::string to_string(EvalKind kind) {
  switch (kind) {
    case EvalKind::kDepth: return "depth";
    case EvalKind::kNormals: return "normals";
    case EvalKind::kSegmentation: return "segmentation";
  }
  return "unknown";
}

bool eval_covers(EvalKind kind, Task task) {
  switch (kind) {
    case EvalKind::kDepth: return task == Task::kDepth;
    case EvalKind::kNormals: return task == Task::kNormals;
    case EvalKind::kSegmentation: return is_segmentation(task);
  }
  return false;
}

MetricRecord evaluate_record(const ManifestRecord& rec, const RunConfig& cfg) {
  const RgbImage pred_img = load_prediction(rec, cfg);
  switch (rec.task) {
    case Task::kDepth: {
      const DepthMap pred =
          cfg.lut ? decode_depth_lut(pred_img, load_lut(*cfg.lut),
                                     cfg.depth.transform, cfg.lut_options())
                  : decode_depth(pred_img, cfg.depth);
      const DepthMetrics m =
          depth_metrics(pred, load_depth_gt(rec.gt), cfg.d_min, cfg.d_max);
      return {{"delta1", m.delta1},
              {"absrel", m.absrel},
              {"n_valid", double(m.n_valid)}};
    }
    case Task::kNormals: {
      const NormalMetrics m = normal_metrics(
          decode_normals(pred_img, cfg.min_norm), load_normals(rec.gt));
      return {{"mean_deg", m.mean_deg},
              {"median_deg", m.median_deg},
              {"n_valid", double(m.n_valid)}};
    }
    case Task::kSemantic:
    case Task::kReferring: {
      const Palette pal = load_palette(*rec.palette);
      LabelMap pred = decode_semantic(pred_img, pal, cfg.max_dist);
      if (cfg.smooth) pred = majority_filter(pred);
      const SegMetrics m = seg_metrics(pred, load_labels(rec.gt, pal), pal);
      std::uint64_t inter = 0;
      std::uint64_t uni = 0;
      for (auto v : m.intersections) inter += v;
      for (auto v : m.unions) uni += v;
      MetricRecord out{{"miou", m.miou},
                       {"ciou", m.ciou},
                       {"giou", m.giou},
                       {"intersection", double(inter)},
                       {"union", double(uni)}};
      for (const auto& [k, iou] : m.per_class_iou) {
        out.emplace_back("iou." + pal.entries[k].name, iou);
      }
      return out;
    }
    case Task::kInstance: {
      const Palette pal = load_palette(*rec.palette);
      const InstanceMaskSet pred = decode_instances(
          pred_img, pal.background, cfg.color_tol, cfg.min_area);
      const InstanceMaskSet gt = load_instances(rec.gt, pal.background);
      const MatchedF1 m = matched_f1(pred, gt, cfg.iou_threshold);
      return {{"matched_f1", m.f1},
              {"precision", m.precision},
              {"recall", m.recall},
              {"matches", double(m.matches)},
              {"n_pred", double(m.n_pred)},
              {"n_gt", double(m.n_gt)}};
    }
  }
  throw RunError("unsupported task");
}

MetricRecord aggregate_outcomes(EvalKind kind,
                                const std::vector<RecordOutcome>& outcomes) {
  // task -> metric -> per-image values
  std::map<Task, std::map<std::string, std::vector<double>>> values;
  for (const auto& o : outcomes) {
    if (!o.ok) continue;
    for (const auto& [k, v] : o.metrics) values[o.task][k].push_back(v);
  }
  const auto mean = [](const std::vector<double>& v) {
    return order_independent_mean(v);
  };
  const auto sum = [](const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x;  // integer-valued counts, exact
    return s;
  };
  MetricRecord agg;
  switch (kind) {
    case EvalKind::kDepth: {
      auto& v = values[Task::kDepth];
      agg = {{"delta1", mean(v["delta1"])},
             {"absrel", mean(v["absrel"])},
             {"n_images", double(v["delta1"].size())},
             {"n_valid", sum(v["n_valid"])}};
      break;
    }
    case EvalKind::kNormals: {
      auto& v = values[Task::kNormals];
      agg = {{"mean_deg", mean(v["mean_deg"])},
             {"median_deg", mean(v["median_deg"])},
             {"n_images", double(v["mean_deg"].size())},
             {"n_valid", sum(v["n_valid"])}};
      break;
    }
    case EvalKind::kSegmentation: {
      for (Task t : {Task::kSemantic, Task::kReferring}) {
        if (!values.count(t)) continue;
        auto& v = values[t];
        const double uni = sum(v["union"]);
        const std::string p = to_string(t) + ".";
        agg.emplace_back(p + "miou", mean(v["miou"]));
        agg.emplace_back(p + "ciou", uni > 0 ? sum(v["intersection"]) / uni : 1.0);
        agg.emplace_back(p + "giou", mean(v["giou"]));
        agg.emplace_back(p + "n_images", double(v["miou"].size()));
      }
      if (values.count(Task::kInstance)) {
        auto& v = values[Task::kInstance];
        agg.emplace_back("instance.matched_f1", mean(v["matched_f1"]));
        agg.emplace_back("instance.precision", mean(v["precision"]));
        agg.emplace_back("instance.recall", mean(v["recall"]));
        agg.emplace_back("instance.n_images", double(v["matched_f1"].size()));
      }
      break;
    }
  }
  return agg;
}

EvalReport run_eval(const Manifest& manifest, EvalKind kind,
                    const RunConfig& cfg) {
  cfg.validate();
  std::vector<const ManifestRecord*> covered;
  for (const auto& rec : manifest.records) {
    if (eval_covers(kind, rec.task)) covered.push_back(&rec);
  }
  if (covered.empty()) {
    throw RunError("manifest has no " + to_string(kind) + " records");
  }

  EvalReport report;
  report.kind = kind;
  report.config_json = cfg.to_json();
  report.per_image.resize(covered.size());

  // Records are independent; each worker writes only its own slots, so the
  // report does not depend on scheduling.
  std::atomic<std::size_t> next{0};
  const auto worker = [&] {
    for (std::size_t i = next++; i < covered.size(); i = next++) {
      const ManifestRecord& rec = *covered[i];
      RecordOutcome& out = report.per_image[i];
      out.id = rec.id;
      out.task = rec.task;
      try {
        out.metrics = evaluate_record(rec, cfg);
        out.ok = true;
      } catch (const std::exception& e) {
        out.ok = false;
        out.error = e.what();
      }
    }
  };
  unsigned threads = cfg.threads == 0 ? std::thread::hardware_concurrency()
                                      : cfg.threads;
  threads = std::clamp<unsigned>(threads, 1, unsigned(covered.size()));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }

  if (report.n_scored() == 0) {
    throw RunError("all " + std::to_string(covered.size()) + " " +
                   to_string(kind) + " records failed; first error: " +
                   report.per_image.front().error);
  }
  report.aggregate = aggregate_outcomes(kind, report.per_image);
  return report;
}

std::size_t EvalReport::n_scored() const {
  return std::size_t(std::count_if(per_image.begin(), per_image.end(),
                                   [](const auto& o) { return o.ok; }));
}

std::size_t EvalReport::n_failed() const {
  return per_image.size() - n_scored();
}

std::string EvalReport::to_json() const {
  ojson j;
  j["eval"] = to_string(kind);
  j["codec_version"] = codec_version;
  j["config"] = ojson::parse(config_json);
  if (kind == EvalKind::kSegmentation) {
    j["notes"] = ojson::array({kMatchedF1Note});
  }
  ojson agg = ojson::object();
  for (const auto& [k, v] : aggregate) agg[k] = v;
  j["aggregate"] = agg;
  j["n_records"] = per_image.size();
  j["n_scored"] = n_scored();
  j["n_failed"] = n_failed();
  ojson rows = ojson::array();
  for (const auto& o : per_image) {
    ojson row;
    row["id"] = o.id;
    row["task"] = to_string(o.task);
    row["status"] = o.ok ? "ok" : "failed";
    if (o.ok) {
      ojson m = ojson::object();
      for (const auto& [k, v] : o.metrics) m[k] = v;
      row["metrics"] = m;
    } else {
      row["error"] = o.error;
    }
    rows.push_back(row);
  }
  j["per_image"] = rows;
  return j.dump(2) + "\n";
}

std::string EvalReport::to_csv() const {
  // Union of metric names in first-seen order.
  std::vector<std::string> columns;
  for (const auto& o : per_image) {
    for (const auto& [k, v] : o.metrics) {
      if (std::find(columns.begin(), columns.end(), k) == columns.end()) {
        columns.push_back(k);
      }
    }
  }
  std::ostringstream os;
  os.precision(17);
  os << "id,task";
  for (const auto& c : columns) os << ',' << c;
  os << '\n';
  for (const auto& o : per_image) {
    if (!o.ok) continue;
    os << o.id << ',' << to_string(o.task);
    for (const auto& c : columns) {
      os << ',';
      for (const auto& [k, v] : o.metrics) {
        if (k == c) os << v;
      }
    }
    os << '\n';
  }
  return os.str();
}

}  // namespace visenc
