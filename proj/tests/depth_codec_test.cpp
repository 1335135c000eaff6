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

#include "visenc/depth_codec.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "scenes.hpp"

namespace visenc {
namespace {

// Corner colors of "01326457" written out by hand.
const Rgb kCorners[8] = {{0, 0, 0}, {0, 0, 1}, {0, 1, 1}, {0, 1, 0},
                         {1, 1, 0}, {1, 0, 0}, {1, 0, 1}, {1, 1, 1}};

// Walks the path edge by edge, consuming unit arc length per edge.
Rgb walk_path(double t) {
  double remaining = 7.0 * t;
  int k = 0;
  while (k < 6 && remaining >= 1.0) {
    remaining -= 1.0;
    ++k;
  }
  const Rgb& a = kCorners[k];
  const Rgb& b = kCorners[k + 1];
  return {a.r + remaining * (b.r - a.r), a.g + remaining * (b.g - a.g),
          a.b + remaining * (b.b - a.b)};
}

// Minimizes distance over a uniform sampling of the path.
double brute_force_t(const Rgb& p, int samples, double* best_dist) {
  double best = std::numeric_limits<double>::infinity();
  double best_t = 0;
  for (int k = 0; k <= samples; ++k) {
    const double t = double(k) / samples;
    const double d = distance(p, walk_path(t));
    if (d < best) {
      best = d;
      best_t = t;
    }
  }
  *best_dist = best;
  return best_t;
}

TEST(PowerTransform, ClosedFormSpotValues) {
  // With lambda = -3 and c = 10/3, f(d) = 1 - (1 + d/10)^-2.
  EXPECT_NEAR(curve_depth(10.0), 0.75, 1e-12);
  EXPECT_NEAR(curve_depth(30.0), 0.9375, 1e-12);
  EXPECT_NEAR(curve_depth(90.0), 0.99, 1e-12);
  EXPECT_EQ(curve_depth(0.0), 0.0);
  for (double d : {0.01, 0.5, 3.0, 47.0, 500.0}) {
    EXPECT_NEAR(curve_depth(d), 1.0 - std::pow(1.0 + d / 10.0, -2.0), 1e-14);
  }
}

TEST(PowerTransform, RoundTripAcrossParameters) {
  for (double lambda : {-1.5, -3.0, -6.0}) {
    for (double c : {0.5, 10.0 / 3.0, 20.0}) {
      const PowerTransformParams p{lambda, c};
      for (int k = 0; k <= 400; ++k) {
        const double d = std::pow(10.0, -2.0 + 6.0 * k / 400.0);
        const double t = curve_depth(d, p);
        // Past 1 - t ~ 1e-6 the inverse amplifies rounding in t beyond 1e-9.
        if (1.0 - t < 1e-6) continue;
        EXPECT_NEAR(uncurve_depth(t, p) / d, 1.0, 1e-9)
            << "lambda=" << lambda << " c=" << c << " d=" << d;
      }
    }
  }
}

TEST(PowerTransform, StrictlyIncreasingAndBounded) {
  double prev = -1.0;
  for (int k = 0; k < 2000; ++k) {
    const double d = 0.05 * k;
    const double t = curve_depth(d);
    EXPECT_GT(t, prev);
    EXPECT_LT(t, 1.0);
    prev = t;
  }
}

TEST(PowerTransform, RejectsBadInput) {
  EXPECT_THROW(curve_depth(-1.0), DomainError);
  EXPECT_THROW(curve_depth(std::nan("")), DomainError);
  EXPECT_THROW(uncurve_depth(1.0), DomainError);
  EXPECT_THROW(curve_depth(1.0, {-1.0, 1.0}), ConfigError);
  EXPECT_THROW(curve_depth(1.0, {-3.0, 0.0}), ConfigError);
}

TEST(CubePath, DefaultOrderMatchesHandWrittenCorners) {
  const CubePath path;
  EXPECT_EQ(path.to_string(), "01326457");
  for (int k = 0; k < 8; ++k) EXPECT_EQ(path[k], kCorners[k]);
  EXPECT_EQ(CubePath::parse("01326457").corners(), path.corners());
}

TEST(CubePath, RejectsNonHamiltonianOrders) {
  EXPECT_THROW(CubePath::parse("0132645"), ConfigError);
  EXPECT_THROW(CubePath::parse("01326458"), ConfigError);
  EXPECT_THROW(CubePath::parse("01326447"), ConfigError);
  EXPECT_THROW(CubePath::parse("01234567"), ConfigError);
  EXPECT_THROW(CubePath::parse("10326457"), ConfigError);
  EXPECT_NO_THROW(CubePath::parse("04623157"));
}

TEST(CubePath, PathColorMatchesEdgeWalk) {
  for (int k = 0; k <= 7000; ++k) {
    const double t = k / 7000.0;
    const Rgb a = path_color(t);
    const Rgb b = walk_path(t);
    EXPECT_NEAR(distance(a, b), 0.0, 1e-12) << "t=" << t;
  }
  EXPECT_THROW(path_color(1.5), DomainError);
}

TEST(CubePath, DepthTenEncodesOnFifthEdge) {
  // t = 0.75, 7t = 5.25: a quarter along the edge from red to magenta.
  const Rgb c = path_color(curve_depth(10.0));
  EXPECT_NEAR(c.r, 1.0, 1e-12);
  EXPECT_NEAR(c.g, 0.0, 1e-12);
  EXPECT_NEAR(c.b, 0.25, 1e-12);
  EXPECT_NEAR(distance(c, walk_path(0.75)), 0.0, 1e-12);
}

TEST(CubePath, ProjectionAgreesWithBruteForce) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int k = 0; k < 300; ++k) {
    const Rgb p{u(rng), u(rng), u(rng)};
    const PathProjection proj = project_onto_path(p);
    double brute_dist = 0;
    const double brute_t = brute_force_t(p, 70000, &brute_dist);
    EXPECT_LE(proj.distance, brute_dist + 1e-12);
    if (std::abs(proj.t - brute_t) > 2e-5) {
      // Only legitimate when two path points are equally close.
      EXPECT_NEAR(distance(p, walk_path(brute_t)), proj.distance, 1e-4);
    }
  }
}

TEST(CubePath, OnPathPointsProjectToThemselves) {
  for (int k = 0; k <= 700; ++k) {
    const double t = k / 700.0;
    const PathProjection proj = project_onto_path(path_color(t));
    EXPECT_NEAR(proj.t, t, 1e-12);
    EXPECT_NEAR(proj.distance, 0.0, 1e-12);
  }
}

TEST(CubePath, TiesResolveToSmallestT) {
  // Cube center is equidistant from several edges.
  const PathProjection proj = project_onto_path({0.5, 0.5, 0.5});
  double best = std::numeric_limits<double>::infinity();
  double first_t = 0;
  for (int k = 0; k <= 7000; ++k) {
    const double d = distance({0.5, 0.5, 0.5}, walk_path(k / 7000.0));
    if (d < best - 1e-12) {
      best = d;
      first_t = k / 7000.0;
    }
  }
  EXPECT_NEAR(proj.t, first_t, 1e-3);
}

TEST(DepthCodec, RealPrecisionRoundTrip) {
  DepthMap d(200, 1);
  for (int x = 0; x < 200; ++x) d.values.at(x, 0) = 0.1 + 0.6 * x;
  d.valid.at(5, 0) = 0;
  const DepthMap back = decode_depth(encode_depth(d));
  for (int x = 0; x < 200; ++x) {
    if (x == 5) {
      EXPECT_FALSE(back.valid.at(x, 0));
      continue;
    }
    ASSERT_TRUE(back.valid.at(x, 0));
    EXPECT_NEAR(back.values.at(x, 0) / d.values.at(x, 0), 1.0, 1e-9);
  }
}

TEST(DepthCodec, EightBitSweepRelativeError) {
  DepthMap d(4000, 1);
  for (int x = 0; x < 4000; ++x) {
    d.values.at(x, 0) = 0.1 * std::pow(800.0, x / 3999.0);  // 0.1 .. 80 m
  }
  const DepthMap back = decode_depth(encode_depth(d).quantized());
  double worst = 0;
  for (int x = 0; x < 4000; ++x) {
    ASSERT_TRUE(back.valid.at(x, 0));
    const double g = d.values.at(x, 0);
    worst = std::max(worst, std::abs(back.values.at(x, 0) - g) / g);
  }
  EXPECT_LE(worst, 0.02);
}

TEST(DepthCodec, FarDepthsClampToTMax) {
  DepthMap d(1, 1, 5000.0);
  const DepthCodecConfig cfg;
  const DepthMap back = decode_depth(encode_depth(d, cfg), cfg);
  EXPECT_NEAR(back.values[0], cfg.max_depth(), 1e-9);
  EXPECT_NEAR(cfg.max_depth(), 10.0 * (std::sqrt(200.0) - 1.0), 1e-9);
}

TEST(DepthCodec, InvalidSentinelIsFarFromPath) {
  const DepthCodecConfig cfg;
  EXPECT_GT(project_onto_path(cfg.invalid_color).distance,
            cfg.invalid_distance_threshold);
  DepthCodecConfig bad;
  bad.invalid_color = {0.0, 0.0, 0.0};
  EXPECT_THROW(bad.validate(), ConfigError);
}

TEST(DepthCodec, AlternativePathRoundTrips) {
  DepthCodecConfig cfg;
  cfg.path = CubePath::parse("04623157");
  DepthMap d(50, 1);
  for (int x = 0; x < 50; ++x) d.values.at(x, 0) = 0.2 + x;
  const DepthMap back = decode_depth(encode_depth(d, cfg), cfg);
  for (int x = 0; x < 50; ++x) {
    EXPECT_NEAR(back.values.at(x, 0) / d.values.at(x, 0), 1.0, 1e-9);
  }
}

TEST(ColorLut, BuiltinTablesMatchPublishedEndpoints) {
  const ColorLut viridis = builtin_lut("viridis");
  ASSERT_EQ(viridis.entries.size(), 256u);
  EXPECT_NEAR(viridis.entries.front().r, 0.267004, 1e-6);
  EXPECT_NEAR(viridis.entries.front().g, 0.004874, 1e-6);
  EXPECT_NEAR(viridis.entries.front().b, 0.329415, 1e-6);
  EXPECT_NEAR(viridis.entries.back().r, 0.993248, 1e-6);
  EXPECT_NEAR(viridis.entries.back().g, 0.906157, 1e-6);
  EXPECT_NEAR(viridis.entries.back().b, 0.143936, 1e-6);
  EXPECT_EQ(builtin_lut("grayscale").entries.size(), 2u);
  for (const auto& name : builtin_lut_names()) {
    EXPECT_NO_THROW(builtin_lut(name).validate());
  }
  EXPECT_THROW(builtin_lut("jet"), ConfigError);
}

TEST(ColorLut, RealPrecisionRoundTrip) {
  for (const auto& name : builtin_lut_names()) {
    const ColorLut lut = builtin_lut(name);
    DepthMap d(120, 1);
    for (int x = 0; x < 120; ++x) d.values.at(x, 0) = 0.1 + 0.5 * x;
    const DepthMap back = decode_depth_lut(encode_depth_lut(d, lut), lut);
    for (int x = 0; x < 120; ++x) {
      EXPECT_NEAR(back.values.at(x, 0) / d.values.at(x, 0), 1.0, 1e-6)
          << name << " d=" << d.values.at(x, 0);
    }
  }
}

TEST(ColorLut, ProjectionIsNoWorseThanDenseSamples) {
  const ColorLut lut = builtin_lut("plasma");
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int k = 0; k < 100; ++k) {
    const Rgb p{u(rng), u(rng), u(rng)};
    const PathProjection proj = project_onto_lut(p, lut, 4096);
    for (int s = 0; s <= 4095; ++s) {
      ASSERT_LE(proj.distance, distance(p, lut.sample(s / 4095.0)) + 1e-12);
    }
  }
}

TEST(ColorLut, InvalidPixelsUseFirstEntryUnlessThresholded) {
  const ColorLut lut = builtin_lut("viridis");
  DepthMap d(2, 1, 3.0);
  d.valid[1] = 0;
  const RgbImage img = encode_depth_lut(d, lut);
  EXPECT_EQ(img[1], lut.entries.front());
  LutCodecOptions opts;
  opts.invalid_color = Rgb{1.0, 0.0, 0.0};
  opts.invalid_distance_threshold = 0.2;
  const DepthMap back =
      decode_depth_lut(encode_depth_lut(d, lut, {}, opts), lut, {}, opts);
  EXPECT_TRUE(back.valid[0]);
  EXPECT_FALSE(back.valid[1]);
}

}  // namespace
}  // namespace visenc
