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

#include "visenc/degrade.hpp"

#include <gtest/gtest.h>

#include <random>

#include "scenes.hpp"
#include "visenc/depth_codec.hpp"
#include "visenc/metrics.hpp"

namespace visenc {
namespace {

RgbImage random_bytes(std::uint64_t seed, int w, int h) {
  std::mt19937_64 rng(seed);
  std::vector<std::uint8_t> b(std::size_t(w) * h * 3);
  for (auto& v : b) v = std::uint8_t(rng());
  return RgbImage::from_bytes(w, h, b);
}

TEST(DegradeSpec, ParseAndFormatRoundTrip) {
  const DegradeSpec s =
      DegradeSpec::parse("noise:4,blur:1,shift:8:0:-8,quantize8", 9);
  ASSERT_EQ(s.ops.size(), 4u);
  EXPECT_EQ(std::get<GaussianNoise>(s.ops[0]).sigma, 4.0);
  EXPECT_EQ(std::get<BoxBlur>(s.ops[1]).radius, 1);
  EXPECT_EQ(std::get<ChromaShift>(s.ops[2]).delta[2], -8.0);
  EXPECT_EQ(DegradeSpec::parse(s.to_string(), 9), s);
  EXPECT_EQ(DegradeSpec::parse("gaussian_noise:2.5").to_string(), "noise:2.5");
  EXPECT_TRUE(DegradeSpec::parse("").ops.empty());
}

TEST(DegradeSpec, RejectsMalformedOps) {
  EXPECT_THROW(DegradeSpec::parse("noise:-1"), ConfigError);
  EXPECT_THROW(DegradeSpec::parse("noise"), ConfigError);
  EXPECT_THROW(DegradeSpec::parse("blur:1.5"), ConfigError);
  EXPECT_THROW(DegradeSpec::parse("blur:-2"), ConfigError);
  EXPECT_THROW(DegradeSpec::parse("shift:1:2"), ConfigError);
  EXPECT_THROW(DegradeSpec::parse("jpeg:50"), ConfigError);
  EXPECT_THROW(DegradeSpec::parse("noise:abc"), ConfigError);
}

TEST(Degrade, NoiseIsDeterministicPerSeed) {
  const RgbImage img = random_bytes(1, 32, 32);
  const auto spec = DegradeSpec::parse("noise:4,quantize8", 17);
  EXPECT_EQ(degrade(img, spec).to_bytes(), degrade(img, spec).to_bytes());
  EXPECT_NE(degrade(img, spec).to_bytes(),
            degrade(img, DegradeSpec::parse("noise:4,quantize8", 18)).to_bytes());
}

TEST(Degrade, NoiseHasRequestedSpread) {
  const RgbImage gray(200, 200, PixelFormat::kReal, {0.5, 0.5, 0.5});
  const RgbImage out = degrade(gray, DegradeSpec::parse("noise:4", 3));
  double sum = 0, sum2 = 0;
  const double n = 3.0 * out.size();
  for (const Rgb& p : out.pixels()) {
    for (int c = 0; c < 3; ++c) {
      const double e = (p[c] - 0.5) * 255.0;
      sum += e;
      sum2 += e * e;
    }
  }
  EXPECT_NEAR(sum / n, 0.0, 0.05);
  EXPECT_NEAR(std::sqrt(sum2 / n), 4.0, 0.05);
}

TEST(Degrade, QuantizeIsIdempotent) {
  const RgbImage img = degrade(random_bytes(2, 16, 16),
                               DegradeSpec::parse("noise:3", 1));
  const auto q = DegradeSpec::parse("quantize8");
  const RgbImage once = degrade(img, q);
  EXPECT_EQ(once.format(), PixelFormat::kByte);
  EXPECT_EQ(degrade(once, q), once);
}

TEST(Degrade, BoxBlurMatchesDirectAverage) {
  const RgbImage img = random_bytes(3, 23, 17);
  for (int r : {1, 2, 5}) {
    const RgbImage out = degrade(img, DegradeSpec::parse("blur:" + std::to_string(r)));
    for (int y = 0; y < 17; ++y) {
      for (int x = 0; x < 23; ++x) {
        int sums[3] = {0, 0, 0};
        int count = 0;
        for (int yy = std::max(0, y - r); yy <= std::min(16, y + r); ++yy) {
          for (int xx = std::max(0, x - r); xx <= std::min(22, x + r); ++xx) {
            const Rgb8 b = img.byte_at(std::size_t(yy) * 23 + xx);
            sums[0] += b.r;
            sums[1] += b.g;
            sums[2] += b.b;
            ++count;
          }
        }
        const Rgb8 got = out.byte_at(std::size_t(y) * 23 + x);
        const std::uint8_t want[3] = {
            std::uint8_t(std::floor(double(sums[0]) / count + 0.5)),
            std::uint8_t(std::floor(double(sums[1]) / count + 0.5)),
            std::uint8_t(std::floor(double(sums[2]) / count + 0.5))};
        ASSERT_EQ(got.r, want[0]);
        ASSERT_EQ(got.g, want[1]);
        ASSERT_EQ(got.b, want[2]);
      }
    }
  }
  EXPECT_EQ(degrade(img, DegradeSpec::parse("blur:0")), img);
}

TEST(Degrade, ChromaShiftClamps) {
  RgbImage img(1, 1, PixelFormat::kByte);
  img.set_byte(0, {250, 3, 100});
  const RgbImage out = degrade(img, DegradeSpec::parse("shift:10:-10:5"));
  EXPECT_EQ(out.byte_at(0), (Rgb8{255, 0, 105}));
}

TEST(Degrade, StrongerNoiseHurtsDepthMore) {
  const testing::Scene s = testing::make_scene(5);
  const RgbImage enc = encode_depth(s.depth);
  const auto absrel = [&](const char* ops) {
    const DepthMap d = decode_depth(degrade(enc, DegradeSpec::parse(ops, 42)));
    return depth_metrics(d, s.depth).absrel;
  };
  EXPECT_GE(absrel("noise:8,quantize8"), absrel("noise:2,quantize8"));
}

}  // namespace
}  // namespace visenc
