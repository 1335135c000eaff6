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

#include "visenc/io.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <cstring>
#include <filesystem>

#include "scenes.hpp"

namespace visenc {
namespace {

namespace fs = std::filesystem;

class IoTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("visenc_io_" + std::string(::testing::UnitTest::GetInstance()
                                           ->current_test_info()
                                           ->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }
  fs::path dir_;
};

TEST_F(IoTest, Png16MillimetersToMeters) {
  PngRaster r{3, 1, 1, 16, {5000, 0, 65535}};
  write_png(dir_ / "d.png", r);
  const DepthMap d = load_depth_gt(dir_ / "d.png");
  EXPECT_TRUE(d.valid[0]);
  EXPECT_DOUBLE_EQ(d.values[0], 5.0);
  EXPECT_FALSE(d.valid[1]);
  EXPECT_DOUBLE_EQ(d.values[2], 65.535);
}

TEST_F(IoTest, PfmNanAndZeroAreInvalid) {
  PfmImage p{3, 2, 1, {1.5f, NAN, 0.0f, INFINITY, 2.0f, -1.0f}};
  write_pfm(dir_ / "d.pfm", p);
  const DepthMap d = load_depth_gt(dir_ / "d.pfm");
  EXPECT_EQ(d.valid_count(), 2u);
  EXPECT_DOUBLE_EQ(d.values.at(0, 0), 1.5);
  EXPECT_DOUBLE_EQ(d.values.at(1, 1), 2.0);
}

TEST_F(IoTest, PfmRowsAreStoredBottomUp) {
  PfmImage p{1, 2, 1, {1.0f, 2.0f}};  // top row 1, bottom row 2
  const auto bytes = encode_pfm(p);
  const std::string header = "Pf\n1 2\n-1.0\n";
  ASSERT_EQ(std::string(bytes.begin(), bytes.begin() + header.size()), header);
  float first;
  std::memcpy(&first, bytes.data() + header.size(), 4);
  EXPECT_EQ(first, 2.0f);
  EXPECT_EQ(decode_pfm(bytes).data, p.data);
}

TEST_F(IoTest, PfmBigEndian) {
  std::string text = "Pf\n1 1\n1.0\n";
  std::vector<std::uint8_t> bytes(text.begin(), text.end());
  const std::uint8_t be[4] = {0x40, 0x20, 0x00, 0x00};  // 2.5f
  bytes.insert(bytes.end(), be, be + 4);
  EXPECT_EQ(decode_pfm(bytes).data[0], 2.5f);
}

TEST_F(IoTest, FormatErrorsCarryOffsets) {
  const std::string bad_width = "Pf\nx 2\n-1.0\n";
  try {
    decode_pfm(std::vector<std::uint8_t>(bad_width.begin(), bad_width.end()));
    FAIL();
  } catch (const FormatError& e) {
    EXPECT_EQ(e.offset(), 3u);
    EXPECT_NE(std::string(e.what()).find("at byte 3"), std::string::npos);
  }
  const std::string short_data = "Pf\n2 2\n-1.0\nabc";
  try {
    decode_pfm(std::vector<std::uint8_t>(short_data.begin(), short_data.end()));
    FAIL();
  } catch (const FormatError& e) {
    EXPECT_EQ(e.offset(), short_data.size());
  }
  auto png = encode_png({4, 4, 3, 8, std::vector<std::uint16_t>(48, 7)});
  png.resize(png.size() / 2);
  try {
    decode_png(png);
    FAIL();
  } catch (const FormatError& e) {
    EXPECT_GT(e.offset(), 8u);
    EXPECT_LE(e.offset(), png.size());
  }
  EXPECT_THROW(decode_png(std::vector<std::uint8_t>{1, 2, 3}), FormatError);
}

TEST_F(IoTest, PngRoundTrip) {
  PngRaster r{2, 2, 3, 8, {0, 1, 2, 3, 4, 5, 250, 251, 252, 253, 254, 255}};
  const PngRaster back = decode_png(encode_png(r));
  EXPECT_EQ(back.samples, r.samples);
  EXPECT_EQ(back.channels, 3);
  EXPECT_EQ(encode_png(r), encode_png(r));
}

TEST_F(IoTest, DepthSaveLoadBothFormats) {
  const testing::Scene s = testing::make_scene(1, 20, 10);
  save_depth(dir_ / "a.pfm", s.depth);
  save_depth(dir_ / "a.png", s.depth);
  const DepthMap pfm = load_depth_gt(dir_ / "a.pfm");
  const DepthMap png = load_depth_gt(dir_ / "a.png");
  for (std::size_t i = 0; i < s.depth.size(); ++i) {
    ASSERT_EQ(bool(pfm.valid[i]), bool(s.depth.valid[i]));
    ASSERT_EQ(bool(png.valid[i]), bool(s.depth.valid[i]));
    if (!s.depth.valid[i]) continue;
    EXPECT_NEAR(pfm.values[i], s.depth.values[i], 1e-5 * s.depth.values[i]);
    EXPECT_NEAR(png.values[i], s.depth.values[i], 5e-4);
  }
}

TEST_F(IoTest, NormalsAndLabels) {
  const testing::Scene s = testing::make_scene(2, 20, 10);
  save_normals_pfm(dir_ / "n.pfm", s.normals);
  const NormalMap n = load_normals(dir_ / "n.pfm");
  EXPECT_EQ(n.valid, s.normals.valid);
  const Palette pal = testing::scene_palette();
  save_labels_png(dir_ / "l.png", s.labels);
  EXPECT_EQ(load_labels(dir_ / "l.png", pal), s.labels);
  // RGB label files use exact palette colors.
  save_rgb_image(dir_ / "rgb.png", encode_semantic(s.labels, pal));
  EXPECT_EQ(load_labels(dir_ / "rgb.png", pal), s.labels);
  RgbImage off(1, 1, PixelFormat::kByte);
  off.set_byte(0, {1, 2, 3});
  save_rgb_image(dir_ / "off.png", off);
  EXPECT_THROW(load_labels(dir_ / "off.png", pal), FormatError);
}

TEST_F(IoTest, InstanceIdsRoundTrip) {
  const auto blobs = testing::random_blobs(3, 30, 20, 5, 10);
  const InstanceMaskSet set = make_instance_set(blobs, 30, 20);
  save_instance_ids_png(dir_ / "i.png", set);
  const InstanceMaskSet back = load_instances(dir_ / "i.png", {0, 0, 0});
  ASSERT_EQ(back.size(), set.size());
  std::size_t total = 0;
  for (const auto& inst : back.instances) total += inst.area;
  std::size_t want = 0;
  for (const auto& inst : set.instances) want += inst.area;
  EXPECT_EQ(total, want);
}

TEST(Palette, JsonForms) {
  const Palette pal = parse_palette(R"({"background": "#000000",
      "classes": [{"name": "skateboard", "color": [255, 255, 0]},
                  {"name": "menu", "color": "#80c000"}]})");
  ASSERT_EQ(pal.size(), 2u);
  EXPECT_EQ(pal.entries[1].color, (Rgb8{128, 192, 0}));
  EXPECT_EQ(parse_palette(palette_to_json(pal)), pal);
  EXPECT_EQ(to_hex_color({128, 192, 0}), "#80C000");
  EXPECT_THROW(parse_hex_color("80C000"), ConfigError);
  EXPECT_THROW(parse_palette(R"({"classes": [{"name": "a", "color": [256, 0, 0]}]})"),
               ConfigError);
  try {
    parse_palette("{\"classes\": [");
    FAIL();
  } catch (const FormatError& e) {
    EXPECT_GT(e.offset(), 0u);
  }
}

TEST(Lut, FileAndBuiltin) {
  const ColorLut lut =
      parse_lut(R"({"name": "ramp", "entries": [[0,0,0],[1,0,0],[1,1,0]]})");
  EXPECT_EQ(lut.entries.size(), 3u);
  EXPECT_EQ(load_lut("viridis").entries.size(), 256u);
  EXPECT_THROW(load_lut("/nonexistent/lut.json"), ConfigError);
  EXPECT_THROW(parse_lut(R"({"entries": [[0,0,0]]})"), ConfigError);
}

}  // namespace
}  // namespace visenc
