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

// Throughput of the codecs and metrics on synthetic VGA-sized inputs.

#include <benchmark/benchmark.h>

#include <cmath>
#include <random>
#include <vector>

#include "visenc/degrade.hpp"
#include "visenc/depth_codec.hpp"
#include "visenc/geometry.hpp"
#include "visenc/metrics.hpp"
#include "visenc/normal_codec.hpp"
#include "visenc/seg_codec.hpp"

namespace {

using namespace visenc;

constexpr int kWidth = 640;
constexpr int kHeight = 480;

DepthMap ramp_depth() {
  DepthMap d(kWidth, kHeight);
  for (int y = 0; y < kHeight; ++y)
    for (int x = 0; x < kWidth; ++x)
      d.values.at(x, y) = 0.5 + 60.0 * (x + y * kWidth) / (kWidth * kHeight);
  return d;
}

NormalMap wavy_normals() {
  NormalMap n(kWidth, kHeight);
  for (int y = 0; y < kHeight; ++y) {
    for (int x = 0; x < kWidth; ++x) {
      const Vec3 v{std::sin(x * 0.02), std::cos(y * 0.03), 1.5};
      n.vectors.at(x, y) = v * (1.0 / v.norm());
    }
  }
  return n;
}

Palette bench_palette() {
  Palette p;
  p.entries = {{"a", {255, 0, 0}}, {"b", {0, 255, 0}}, {"c", {0, 0, 255}},
               {"d", {255, 255, 0}}};
  return p;
}

LabelMap stripe_labels() {
  LabelMap m(kWidth, kHeight);
  for (int y = 0; y < kHeight; ++y)
    for (int x = 0; x < kWidth; ++x)
      m.labels.at(x, y) = ((x / 40) + (y / 40)) % 5 - 1;
  return m;
}

void BM_EncodeDepth(benchmark::State& state) {
  const DepthMap d = ramp_depth();
  for (auto _ : state) benchmark::DoNotOptimize(encode_depth(d));
  state.SetItemsProcessed(state.iterations() * d.size());
}
BENCHMARK(BM_EncodeDepth);

void BM_DecodeDepth(benchmark::State& state) {
  const RgbImage img = encode_depth(ramp_depth()).quantized();
  for (auto _ : state) benchmark::DoNotOptimize(decode_depth(img));
  state.SetItemsProcessed(state.iterations() * img.size());
}
BENCHMARK(BM_DecodeDepth);

void BM_DecodeDepthLut(benchmark::State& state) {
  const ColorLut lut = builtin_lut("viridis");
  const RgbImage img = encode_depth_lut(ramp_depth(), lut).quantized();
  for (auto _ : state) benchmark::DoNotOptimize(decode_depth_lut(img, lut));
  state.SetItemsProcessed(state.iterations() * img.size());
}
BENCHMARK(BM_DecodeDepthLut);

void BM_NormalRoundTrip(benchmark::State& state) {
  const NormalMap n = wavy_normals();
  for (auto _ : state)
    benchmark::DoNotOptimize(decode_normals(encode_normals(n).quantized()));
  state.SetItemsProcessed(state.iterations() * n.size());
}
BENCHMARK(BM_NormalRoundTrip);

void BM_DecodeSemantic(benchmark::State& state) {
  const Palette pal = bench_palette();
  const RgbImage img = encode_semantic(stripe_labels(), pal);
  for (auto _ : state) benchmark::DoNotOptimize(decode_semantic(img, pal));
  state.SetItemsProcessed(state.iterations() * img.size());
}
BENCHMARK(BM_DecodeSemantic);

void BM_DecodeInstances(benchmark::State& state) {
  std::vector<Mask> masks;
  for (int i = 0; i < state.range(0); ++i) {
    Mask m(kWidth, kHeight, 0);
    const int cx = 40 + (i * 97) % (kWidth - 80);
    const int cy = 40 + (i * 61) % (kHeight - 80);
    for (int y = cy - 15; y < cy + 15; ++y)
      for (int x = cx - 15; x < cx + 15; ++x) m.at(x, y) = 1;
    for (const Mask& prev : masks)
      for (std::size_t k = 0; k < m.size(); ++k)
        if (prev[k]) m[k] = 0;
    masks.push_back(std::move(m));
  }
  const RgbImage img = encode_instances(masks, kWidth, kHeight, {}, 7);
  for (auto _ : state) benchmark::DoNotOptimize(decode_instances(img, {}));
  state.SetItemsProcessed(state.iterations() * img.size());
}
BENCHMARK(BM_DecodeInstances)->Arg(4)->Arg(16);

void BM_SegMetrics(benchmark::State& state) {
  const Palette pal = bench_palette();
  const LabelMap gt = stripe_labels();
  LabelMap pred = gt;
  for (std::size_t i = 0; i < pred.size(); i += 7) pred.labels[i] = 0;
  for (auto _ : state) benchmark::DoNotOptimize(seg_metrics(pred, gt, pal));
}
BENCHMARK(BM_SegMetrics);

void BM_NormalMetrics(benchmark::State& state) {
  const NormalMap gt = wavy_normals();
  const NormalMap pred = decode_normals(encode_normals(gt).quantized());
  for (auto _ : state) benchmark::DoNotOptimize(normal_metrics(pred, gt));
}
BENCHMARK(BM_NormalMetrics);

void BM_Degrade(benchmark::State& state) {
  const RgbImage img = encode_depth(ramp_depth());
  const DegradeSpec spec = DegradeSpec::parse("noise:4,blur:1,quantize8", 1);
  for (auto _ : state) benchmark::DoNotOptimize(degrade(img, spec));
  state.SetItemsProcessed(state.iterations() * img.size());
}
BENCHMARK(BM_Degrade);

void BM_Unproject(benchmark::State& state) {
  const DepthMap d = ramp_depth();
  const Intrinsics k{500.0, 500.0, 320.0, 240.0};
  for (auto _ : state) benchmark::DoNotOptimize(unproject(d, k));
  state.SetItemsProcessed(state.iterations() * d.size());
}
BENCHMARK(BM_Unproject);

}  // namespace

BENCHMARK_MAIN();
