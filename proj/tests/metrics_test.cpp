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

#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <random>
#include <set>

namespace visenc {
namespace {

// Largest number of pairs with IoU >= threshold over all injective matchings.
std::size_t best_matching_by_permutation(
    const std::vector<std::vector<double>>& iou, double threshold) {
  const std::size_t rows = iou.size();
  const std::size_t cols = rows ? iou[0].size() : 0;
  const std::size_t n = std::max(rows, cols);
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::size_t best = 0;
  do {
    std::size_t count = 0;
    for (std::size_t i = 0; i < rows; ++i) {
      if (perm[i] < cols && iou[i][perm[i]] >= threshold) ++count;
    }
    best = std::max(best, count);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

InstanceMaskSet random_overlapping_set(std::mt19937_64& rng, std::size_t n) {
  InstanceMaskSet set{4, 4, {}, {0, 0, 0}};
  std::bernoulli_distribution bit(0.5);
  for (std::size_t k = 0; k < n; ++k) {
    Instance inst{Mask(4, 4, 0), {}, 0};
    for (std::size_t i = 0; i < 16; ++i) {
      inst.mask[i] = bit(rng);
      inst.area += inst.mask[i];
    }
    set.instances.push_back(inst);
  }
  return set;
}

TEST(DepthMetrics, ClosedFormScalings) {
  DepthMap gt(10, 10);
  for (std::size_t i = 0; i < gt.size(); ++i) gt.values[i] = 0.5 + 0.37 * i;
  DepthMap pred = gt;
  for (std::size_t i = 0; i < gt.size(); ++i) pred.values[i] *= 1.1;
  DepthMetrics m = depth_metrics(pred, gt);
  EXPECT_EQ(m.delta1, 1.0);
  EXPECT_NEAR(m.absrel, 0.1, 1e-12);
  for (std::size_t i = 0; i < gt.size(); ++i) pred.values[i] = 1.3 * gt.values[i];
  m = depth_metrics(pred, gt);
  EXPECT_EQ(m.delta1, 0.0);
  EXPECT_NEAR(m.absrel, 0.3, 1e-12);
  EXPECT_EQ(m.n_valid, 100u);
}

TEST(DepthMetrics, RangeAndValidityMasks) {
  DepthMap gt(4, 1);
  gt.values[0] = 1.0;
  gt.values[1] = 2.0;
  gt.values[2] = 50.0;
  gt.values[3] = 3.0;
  DepthMap pred = gt;
  pred.values[2] = 500.0;
  pred.valid[3] = 0;
  const DepthMetrics m = depth_metrics(pred, gt, 0.5, 10.0);
  EXPECT_EQ(m.n_valid, 2u);
  EXPECT_EQ(m.delta1, 1.0);
  EXPECT_THROW(depth_metrics(pred, gt, 20.0, 30.0), EmptyEvaluationError);
  EXPECT_THROW(depth_metrics(pred, DepthMap(3, 1)), StructuralError);
}

TEST(SegMetrics, ExhaustiveTwoByFourTwoClass) {
  const Palette pal{{{"a", {255, 0, 0}}, {"b", {0, 255, 0}}}, {0, 0, 0}};
  const auto make = [](unsigned bits) {
    LabelMap m(4, 2);
    for (int i = 0; i < 8; ++i) m.labels[i] = (bits >> i) & 1;
    return m;
  };
  for (unsigned p = 0; p < 256; ++p) {
    const LabelMap pred = make(p);
    for (unsigned g = 0; g < 256; ++g) {
      const LabelMap gt = make(g);
      double inter[2] = {0, 0};
      double uni[2] = {0, 0};
      for (int i = 0; i < 8; ++i) {
        for (int k = 0; k < 2; ++k) {
          const bool a = pred.labels[i] == k;
          const bool b = gt.labels[i] == k;
          inter[k] += a && b;
          uni[k] += a || b;
        }
      }
      double sum = 0;
      int present = 0;
      for (int k = 0; k < 2; ++k) {
        if (uni[k] > 0) {
          sum += inter[k] / uni[k];
          ++present;
        }
      }
      const SegMetrics m = seg_metrics(pred, gt, pal);
      ASSERT_DOUBLE_EQ(m.miou, sum / present) << p << " " << g;
      ASSERT_DOUBLE_EQ(m.ciou, (inter[0] + inter[1]) / (uni[0] + uni[1]));
      ASSERT_EQ(m.per_class_iou.size(), std::size_t(present));
    }
  }
}

TEST(SegMetrics, BackgroundIsNotAClass) {
  const Palette pal{{{"a", {255, 0, 0}}, {"b", {0, 255, 0}}}, {0, 0, 0}};
  LabelMap gt(4, 1);
  LabelMap pred(4, 1);
  gt.labels[0] = 0;
  pred.labels[0] = 0;
  gt.labels[1] = 0;  // predicted background: a miss for class a
  const SegMetrics m = seg_metrics(pred, gt, pal);
  EXPECT_DOUBLE_EQ(m.miou, 0.5);
  EXPECT_EQ(m.per_class_iou.count(1), 0u);
  // Both empty: nothing to score, perfect by convention.
  EXPECT_EQ(seg_metrics(LabelMap(3, 3), LabelMap(3, 3), pal).miou, 1.0);
}

TEST(SegMetrics, AccumulatorPoolsCiouAndAveragesMiou) {
  SegMetrics a;
  a.miou = 1.0;
  a.giou = 1.0;
  a.intersections = {10};
  a.unions = {10};
  SegMetrics b;
  b.miou = 0.0;
  b.giou = 0.0;
  b.intersections = {0};
  b.unions = {30};
  SegAccumulator acc;
  acc.add(a);
  acc.add(b);
  EXPECT_DOUBLE_EQ(acc.miou(), 0.5);
  EXPECT_DOUBLE_EQ(acc.giou(), 0.5);
  EXPECT_DOUBLE_EQ(acc.ciou(), 0.25);
}

TEST(OptimalAssignment, MatchesPermutationSearch) {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t rows = 1 + trial % 6;
    const std::size_t cols = 1 + (trial / 6) % 6;
    std::vector<std::vector<double>> s(rows, std::vector<double>(cols));
    for (auto& r : s) {
      for (auto& v : r) v = u(rng);
    }
    const std::vector<int> a = optimal_assignment(s);
    double got = 0;
    std::set<int> used;
    for (std::size_t i = 0; i < rows; ++i) {
      if (a[i] < 0) continue;
      EXPECT_TRUE(used.insert(a[i]).second);
      got += s[i][a[i]];
    }
    EXPECT_EQ(used.size(), std::min(rows, cols));
    // Exhaustive maximum.
    const std::size_t n = std::max(rows, cols);
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    double best = -1;
    do {
      double total = 0;
      for (std::size_t i = 0; i < rows; ++i) {
        if (perm[i] < cols) total += s[i][perm[i]];
      }
      best = std::max(best, total);
    } while (std::next_permutation(perm.begin(), perm.end()));
    EXPECT_NEAR(got, best, 1e-12);
  }
}

TEST(MatchedF1, MatchesPermutationSearch) {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 400; ++trial) {
    const InstanceMaskSet pred = random_overlapping_set(rng, trial % 7);
    const InstanceMaskSet gt = random_overlapping_set(rng, (trial / 7) % 7);
    for (double thr : {0.25, 0.5}) {
      std::vector<std::vector<double>> iou(
          pred.size(), std::vector<double>(gt.size()));
      for (std::size_t i = 0; i < pred.size(); ++i) {
        for (std::size_t j = 0; j < gt.size(); ++j) {
          iou[i][j] = mask_iou(pred.instances[i].mask, gt.instances[j].mask);
        }
      }
      const MatchedF1 m = matched_f1(pred, gt, thr);
      if (pred.size() == 0 && gt.size() == 0) {
        EXPECT_EQ(m.f1, 1.0);
        continue;
      }
      const std::size_t best =
          pred.size() && gt.size() ? best_matching_by_permutation(iou, thr) : 0;
      ASSERT_EQ(m.matches, best) << "trial " << trial;
      const double p = pred.size() ? double(best) / pred.size() : 0.0;
      const double r = gt.size() ? double(best) / gt.size() : 0.0;
      EXPECT_DOUBLE_EQ(m.f1, p + r > 0 ? 2 * p * r / (p + r) : 0.0);
    }
  }
}

TEST(MatchedF1, EmptySideConventions) {
  std::mt19937_64 rng(1);
  const InstanceMaskSet some = random_overlapping_set(rng, 2);
  const InstanceMaskSet none{4, 4, {}, {0, 0, 0}};
  EXPECT_EQ(matched_f1(none, none).f1, 1.0);
  EXPECT_EQ(matched_f1(some, none).f1, 0.0);
  EXPECT_EQ(matched_f1(none, some).f1, 0.0);
  EXPECT_THROW(matched_f1(some, some, 0.0), ConfigError);
}

TEST(OrderIndependentMean, PermutationInvariant) {
  std::vector<double> v{1e16, 1.0, -1e16, 3.0, 0.1, 0.2};
  const double ref = order_independent_mean(v);
  std::sort(v.begin(), v.end());
  do {
    ASSERT_EQ(order_independent_mean(v), ref);
  } while (std::next_permutation(v.begin(), v.end()));
  EXPECT_EQ(order_independent_mean(std::vector<double>{}), 0.0);
}

}  // namespace
}  // namespace visenc
