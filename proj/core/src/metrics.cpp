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

#include "visenc/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace visenc {
namespace {

void require_same_shape(int w1, int h1, int w2, int h2, const char* what) {
  if (w1 != w2 || h1 != h2) {
    throw StructuralError(std::string(what) + ": prediction is " +
                          std::to_string(w1) + "x" + std::to_string(h1) +
                          " but ground truth is " + std::to_string(w2) + "x" +
                          std::to_string(h2));
  }
}

// Min-cost assignment for rows <= cols using potentials (Kuhn-Munkres).
std::vector<int> hungarian_min(const std::vector<std::vector<double>>& cost,
                               std::size_t rows, std::size_t cols) {
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> u(rows + 1, 0.0), v(cols + 1, 0.0);
  std::vector<std::size_t> p(cols + 1, 0), way(cols + 1, 0);
  for (std::size_t i = 1; i <= rows; ++i) {
    p[0] = i;
    std::size_t j0 = 0;
    std::vector<double> minv(cols + 1, inf);
    std::vector<bool> used(cols + 1, false);
    do {
      used[j0] = true;
      const std::size_t i0 = p[j0];
      double delta = inf;
      std::size_t j1 = 0;
      for (std::size_t j = 1; j <= cols; ++j) {
        if (used[j]) continue;
        const double cur = cost[i0 - 1][j - 1] - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (std::size_t j = 0; j <= cols; ++j) {
        if (used[j]) {
          u[p[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (p[j0] != 0);
    do {
      const std::size_t j1 = way[j0];
      p[j0] = p[j1];
      j0 = j1;
    } while (j0 != 0);
  }
  std::vector<int> row_to_col(rows, -1);
  for (std::size_t j = 1; j <= cols; ++j) {
    if (p[j] != 0) row_to_col[p[j] - 1] = int(j - 1);
  }
  return row_to_col;
}

}  // namespace

DepthMetrics depth_metrics(const DepthMap& pred, const DepthMap& gt,
                           double d_min, double d_max) {
  require_same_shape(pred.width(), pred.height(), gt.width(), gt.height(),
                     "depth_metrics");
  if (!(d_min < d_max)) throw ConfigError("depth range needs d_min < d_max");
  std::size_t n = 0;
  std::size_t inliers = 0;
  double absrel_sum = 0.0;
  for (std::size_t i = 0; i < gt.size(); ++i) {
    if (!pred.valid[i] || !gt.valid[i]) continue;
    const double g = gt.values[i];
    const double p = pred.values[i];
    if (!(g > 0.0) || g < d_min || g > d_max || !std::isfinite(p)) continue;
    ++n;
    if (std::max(p / g, g / p) < kDelta1Threshold) ++inliers;
    absrel_sum += std::abs(p - g) / g;
  }
  if (n == 0) {
    throw EmptyEvaluationError("depth_metrics: no jointly valid pixels in [" +
                               std::to_string(d_min) + ", " +
                               std::to_string(d_max) + "]");
  }
  return {double(inliers) / double(n), absrel_sum / double(n), n};
}

NormalMetrics normal_metrics(const NormalMap& pred, const NormalMap& gt) {
  require_same_shape(pred.width(), pred.height(), gt.width(), gt.height(),
                     "normal_metrics");
  std::vector<double> errors;
  errors.reserve(gt.size());
  for (std::size_t i = 0; i < gt.size(); ++i) {
    if (!pred.valid[i] || !gt.valid[i]) continue;
    // atan2 keeps small angles exact where acos(dot) loses ~1e-8 rad.
    const Vec3& a = pred.vectors[i];
    const Vec3& b = gt.vectors[i];
    const double cx = a.y * b.z - a.z * b.y;
    const double cy = a.z * b.x - a.x * b.z;
    const double cz = a.x * b.y - a.y * b.x;
    const double angle =
        std::atan2(std::sqrt(cx * cx + cy * cy + cz * cz), a.dot(b));
    errors.push_back(angle * 180.0 / std::numbers::pi);
  }
  if (errors.empty()) {
    throw EmptyEvaluationError("normal_metrics: no jointly valid pixels");
  }
  NormalMetrics m;
  m.n_valid = errors.size();
  double sum = 0.0;
  for (double e : errors) sum += e;
  m.mean_deg = sum / double(errors.size());
  const auto mid = errors.begin() + (errors.size() - 1) / 2;
  std::nth_element(errors.begin(), mid, errors.end());
  m.median_deg = *mid;
  return m;
}

SegMetrics seg_metrics(const LabelMap& pred, const LabelMap& gt,
                       const Palette& pal) {
  require_same_shape(pred.width(), pred.height(), gt.width(), gt.height(),
                     "seg_metrics");
  const std::size_t classes = pal.size();
  SegMetrics m;
  m.intersections.assign(classes, 0);
  m.unions.assign(classes, 0);
  const auto check = [&](std::int32_t label, std::size_t i) {
    if (label != LabelMap::kBackground &&
        (label < 0 || std::size_t(label) >= classes)) {
      throw StructuralError("seg_metrics: label " + std::to_string(label) +
                            " at pixel " + std::to_string(i) +
                            " is outside the palette");
    }
  };
  for (std::size_t i = 0; i < gt.size(); ++i) {
    const std::int32_t p = pred.labels[i];
    const std::int32_t g = gt.labels[i];
    check(p, i);
    check(g, i);
    if (p == g) {
      if (p != LabelMap::kBackground) {
        ++m.intersections[p];
        ++m.unions[p];
      }
      continue;
    }
    if (p != LabelMap::kBackground) ++m.unions[p];
    if (g != LabelMap::kBackground) ++m.unions[g];
  }
  std::uint64_t inter_total = 0;
  std::uint64_t union_total = 0;
  double iou_sum = 0.0;
  for (std::size_t k = 0; k < classes; ++k) {
    inter_total += m.intersections[k];
    union_total += m.unions[k];
    if (m.unions[k] == 0) continue;
    const double iou = double(m.intersections[k]) / double(m.unions[k]);
    m.per_class_iou[k] = iou;
    iou_sum += iou;
  }
  if (!m.per_class_iou.empty()) {
    m.miou = iou_sum / double(m.per_class_iou.size());
  }
  if (union_total > 0) {
    m.ciou = double(inter_total) / double(union_total);
  }
  m.giou = m.ciou;
  return m;
}

double order_independent_mean(std::span<const double> values) {
  if (values.empty()) return 0.0;
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  double sum = 0.0;
  for (double v : sorted) sum += v;
  return sum / double(sorted.size());
}

void SegAccumulator::add(const SegMetrics& m) {
  miou_.push_back(m.miou);
  giou_.push_back(m.giou);
  for (auto v : m.intersections) intersection_ += v;
  for (auto v : m.unions) union_ += v;
}

double SegAccumulator::miou() const { return order_independent_mean(miou_); }

double SegAccumulator::ciou() const {
  return union_ == 0 ? 1.0 : double(intersection_) / double(union_);
}

double SegAccumulator::giou() const { return order_independent_mean(giou_); }

double mask_iou(const Mask& a, const Mask& b) {
  require_same_shape(a.width(), a.height(), b.width(), b.height(), "mask_iou");
  std::size_t inter = 0;
  std::size_t uni = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const bool x = a[i] != 0;
    const bool y = b[i] != 0;
    inter += (x && y) ? 1 : 0;
    uni += (x || y) ? 1 : 0;
  }
  return uni == 0 ? 0.0 : double(inter) / double(uni);
}

std::vector<int> optimal_assignment(
    const std::vector<std::vector<double>>& score) {
  const std::size_t rows = score.size();
  if (rows == 0) return {};
  const std::size_t cols = score.front().size();
  for (const auto& row : score) {
    if (row.size() != cols) {
      throw StructuralError("optimal_assignment: ragged score matrix");
    }
  }
  if (cols == 0) return std::vector<int>(rows, -1);
  if (rows <= cols) {
    std::vector<std::vector<double>> cost(rows, std::vector<double>(cols));
    for (std::size_t i = 0; i < rows; ++i) {
      for (std::size_t j = 0; j < cols; ++j) cost[i][j] = -score[i][j];
    }
    return hungarian_min(cost, rows, cols);
  }
  std::vector<std::vector<double>> cost(cols, std::vector<double>(rows));
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) cost[j][i] = -score[i][j];
  }
  const std::vector<int> col_to_row = hungarian_min(cost, cols, rows);
  std::vector<int> row_to_col(rows, -1);
  for (std::size_t j = 0; j < cols; ++j) {
    if (col_to_row[j] >= 0) row_to_col[col_to_row[j]] = int(j);
  }
  return row_to_col;
}

MatchedF1 matched_f1(const InstanceMaskSet& pred, const InstanceMaskSet& gt,
                     double iou_threshold) {
  if (!(iou_threshold > 0.0 && iou_threshold <= 1.0)) {
    throw ConfigError("iou_threshold must lie in (0, 1]");
  }
  MatchedF1 r;
  r.iou_threshold = iou_threshold;
  r.n_pred = pred.size();
  r.n_gt = gt.size();
  if (r.n_pred == 0 && r.n_gt == 0) {
    r.precision = r.recall = r.f1 = 1.0;
    return r;
  }
  if (r.n_pred > 0 && r.n_gt > 0) {
    // A qualifying pair scores 1 plus a tie-break share of its IoU; the
    // tie-break terms of all pairs sum to less than 1, so the assignment
    // always maximizes the number of qualifying pairs first.
    const double tie_scale = 1.0 / double(std::min(r.n_pred, r.n_gt) + 1);
    std::vector<std::vector<double>> score(r.n_pred,
                                           std::vector<double>(r.n_gt, 0.0));
    std::vector<std::vector<bool>> qualifies(
        r.n_pred, std::vector<bool>(r.n_gt, false));
    for (std::size_t i = 0; i < r.n_pred; ++i) {
      for (std::size_t j = 0; j < r.n_gt; ++j) {
        const double iou =
            mask_iou(pred.instances[i].mask, gt.instances[j].mask);
        if (iou >= iou_threshold) {
          qualifies[i][j] = true;
          score[i][j] = 1.0 + tie_scale * iou;
        }
      }
    }
    const std::vector<int> assign = optimal_assignment(score);
    for (std::size_t i = 0; i < r.n_pred; ++i) {
      if (assign[i] >= 0 && qualifies[i][assign[i]]) ++r.matches;
    }
  }
  r.precision = r.n_pred ? double(r.matches) / double(r.n_pred) : 0.0;
  r.recall = r.n_gt ? double(r.matches) / double(r.n_gt) : 0.0;
  const double pr = r.precision + r.recall;
  r.f1 = pr > 0.0 ? 2.0 * r.precision * r.recall / pr : 0.0;
  return r;
}

}  // namespace visenc
