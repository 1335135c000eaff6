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

// Benchmark metrics for decoded task outputs.

#ifndef VISENC_METRICS_HPP_
#define VISENC_METRICS_HPP_

#include <cstddef>
#include <cstdint>
#include <limits>
#include <map>
#include <span>
#include <vector>

#include "visenc/image.hpp"
#include "visenc/seg_codec.hpp"

namespace visenc {

inline constexpr double kDelta1Threshold = 1.25;
inline constexpr double kDefaultIouThreshold = 0.5;

struct DepthMetrics {
  double delta1 = 0.0;  // fraction with max(pred/gt, gt/pred) < 1.25
  double absrel = 0.0;  // mean |pred - gt| / gt
  std::size_t n_valid = 0;
};

// Over pixels valid in both maps with gt in [d_min, d_max] and gt > 0.
// Throws StructuralError on shape mismatch, ConfigError unless
// d_min < d_max, and EmptyEvaluationError if no pixel qualifies.
DepthMetrics depth_metrics(
    const DepthMap& pred, const DepthMap& gt, double d_min = 0.0,
    double d_max = std::numeric_limits<double>::infinity());

struct NormalMetrics {
  double mean_deg = 0.0;
  double median_deg = 0.0;  // lower middle for even counts
  std::size_t n_valid = 0;
};

NormalMetrics normal_metrics(const NormalMap& pred, const NormalMap& gt);

struct SegMetrics {
  // Mean IoU over classes whose union is nonempty (1 if there are none).
  double miou = 1.0;
  // Pooled IoU: sum of per-class intersections over sum of unions.
  double ciou = 1.0;
  // Per-image IoU; for a single image this equals ciou. Datasets average it.
  double giou = 1.0;
  std::map<std::size_t, double> per_class_iou;
  std::vector<std::uint64_t> intersections;  // per palette class
  std::vector<std::uint64_t> unions;
};

// Background is not a class. Throws StructuralError on shape mismatch or
// labels outside the palette.
SegMetrics seg_metrics(const LabelMap& pred, const LabelMap& gt,
                       const Palette& pal);

// Dataset accumulation: cIoU from summed counts, mIoU and gIoU averaged
// over images. Results do not depend on the order of add() calls.
class SegAccumulator {
 public:
  void add(const SegMetrics& m);
  std::size_t count() const { return miou_.size(); }
  double miou() const;
  double ciou() const;
  double giou() const;

 private:
  std::vector<double> miou_;
  std::vector<double> giou_;
  std::uint64_t intersection_ = 0;
  std::uint64_t union_ = 0;
};

struct MatchedF1 {
  double f1 = 0.0;
  double precision = 0.0;
  double recall = 0.0;
  double iou_threshold = kDefaultIouThreshold;
  std::size_t matches = 0;
  std::size_t n_pred = 0;
  std::size_t n_gt = 0;
};

double mask_iou(const Mask& a, const Mask& b);

// Row -> column assignment maximizing the total score (Hungarian method).
// Unassigned rows map to -1. The matrix may be rectangular.
std::vector<int> optimal_assignment(
    const std::vector<std::vector<double>>& score);

// One-to-one matching of predicted and ground-truth instances maximizing
// the number of pairs with IoU >= iou_threshold (ties broken by total IoU).
// Stand-in for the SA-Co pmF1 metric. Two empty sets score 1.
MatchedF1 matched_f1(const InstanceMaskSet& pred, const InstanceMaskSet& gt,
                     double iou_threshold = kDefaultIouThreshold);

// Mean of values summed in sorted order, so the result does not depend on
// insertion order. Returns 0 for an empty span.
double order_independent_mean(std::span<const double> values);

}  // namespace visenc

#endif  // VISENC_METRICS_HPP_
