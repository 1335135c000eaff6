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

// Run configuration, evaluation runner and reports.

#ifndef VISENC_EVAL_HPP_
#define VISENC_EVAL_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "visenc/depth_codec.hpp"
#include "visenc/manifest.hpp"
#include "visenc/seg_codec.hpp"
#include "visenc/task.hpp"

namespace visenc {

inline constexpr const char* kCodecVersion = "visenc-codec/1";

// Every tunable of the codecs and metrics. The JSON form (used by --config
// files and echoed into reports) has the keys
//   lambda c t_max corner_order invalid_threshold lut lut_samples dataset
//   d_min d_max min_norm max_dist smooth color_tol min_area iou_threshold
//   degrade seed threads
struct RunConfig {
  DepthCodecConfig depth;
  std::optional<std::string> lut;  // builtin name or colormap file
  std::size_t lut_samples = 4096;
  std::string dataset;  // "", "indoor" or "driving"
  double d_min = 1e-3;
  double d_max = 80.0;
  double min_norm = 0.2;
  double max_dist = kDefaultMaxColorDistance;
  bool smooth = false;  // 3x3 majority filter after semantic decoding
  double color_tol = kDefaultColorTolerance;
  std::size_t min_area = kDefaultMinArea;
  double iou_threshold = 0.5;
  std::string degrade;  // DegradeSpec text applied to predictions
  std::uint64_t seed = 0;
  unsigned threads = 1;  // 0 = hardware concurrency

  // "indoor" caps depth at 10 m, "driving" at 80 m.
  void apply_dataset(std::string_view name);
  // Overrides the fields present in a JSON object; "dataset" is applied
  // before explicit d_min / d_max.
  void merge_json(std::string_view json_text);
  std::string to_json() const;
  void validate() const;
  LutCodecOptions lut_options() const;
};

using MetricRecord = std::vector<std::pair<std::string, double>>;

struct RecordOutcome {
  std::string id;
  Task task = Task::kDepth;
  bool ok = false;
  std::string error;
  MetricRecord metrics;
};

enum class EvalKind { kDepth, kNormals, kSegmentation };

std::string to_string(EvalKind kind);
bool eval_covers(EvalKind kind, Task task);

struct EvalReport {
  EvalKind kind = EvalKind::kDepth;
  std::string codec_version = kCodecVersion;
  std::string config_json;
  std::vector<RecordOutcome> per_image;
  MetricRecord aggregate;

  std::size_t n_scored() const;
  std::size_t n_failed() const;
  // Deterministic JSON text.
  std::string to_json() const;
  // One row per scored record: id, task, then metrics.
  std::string to_csv() const;
};

// Aggregates per-image outcomes. cIoU sums intersections and unions; every
// other metric is the mean over images. Failed records are ignored.
MetricRecord aggregate_outcomes(EvalKind kind,
                                const std::vector<RecordOutcome>& outcomes);

// Scores one record; throws on any decode or metric failure.
MetricRecord evaluate_record(const ManifestRecord& rec, const RunConfig& cfg);

// Evaluates every manifest record the kind covers. A failing record is
// reported and skipped. Throws RunError when no record is covered or all
// covered records fail.
EvalReport run_eval(const Manifest& manifest, EvalKind kind,
                    const RunConfig& cfg);

}  // namespace visenc

#endif  // VISENC_EVAL_HPP_
