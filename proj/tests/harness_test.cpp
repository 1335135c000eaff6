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

#include <gtest/gtest.h>

#include <filesystem>

#include "json.hpp"
#include "scenes.hpp"
#include "visenc/eval.hpp"
#include "visenc/io.hpp"
#include "visenc/manifest.hpp"
#include "visenc/metrics.hpp"
#include "visenc/pairs.hpp"
#include "visenc/prompt.hpp"

namespace visenc {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

class FixtureTest : public ::testing::Test {
 protected:
  static void SetUpTestSuite() {
    dir_ = new fs::path(fs::temp_directory_path() / "visenc_harness_fixtures");
    fs::remove_all(*dir_);
    testing::write_fixture_set(*dir_);
  }
  static void TearDownTestSuite() {
    fs::remove_all(*dir_);
    delete dir_;
  }
  static const fs::path& dir() { return *dir_; }
  static fs::path* dir_;
};
fs::path* FixtureTest::dir_ = nullptr;

double metric(const MetricRecord& m, const std::string& name) {
  for (const auto& [k, v] : m) {
    if (k == name) return v;
  }
  ADD_FAILURE() << "no metric " << name;
  return std::nan("");
}

TEST(RunConfig, JsonMergeAndValidation) {
  RunConfig cfg;
  cfg.merge_json(R"({"lambda": -4, "corner_order": "04623157", "d_max": 10,
                     "lut": "viridis", "seed": 7})");
  EXPECT_EQ(cfg.depth.transform.lambda, -4.0);
  EXPECT_EQ(cfg.depth.path.to_string(), "04623157");
  EXPECT_EQ(cfg.lut, "viridis");
  EXPECT_NO_THROW(cfg.validate());
  EXPECT_THROW(cfg.merge_json(R"({"lamda": -4})"), ConfigError);
  EXPECT_THROW(cfg.merge_json(R"({"d_max": "far"})"), ConfigError);
  EXPECT_THROW(cfg.merge_json("{"), FormatError);
  RunConfig bad;
  bad.d_min = 5;
  bad.d_max = 1;
  EXPECT_THROW(bad.validate(), ConfigError);
}

TEST(RunConfig, DatasetPresetsAreEchoed) {
  RunConfig cfg;
  cfg.apply_dataset("indoor");
  EXPECT_EQ(cfg.d_max, 10.0);
  const json j = json::parse(cfg.to_json());
  EXPECT_EQ(j["dataset"], "indoor");
  EXPECT_EQ(j["d_max"], 10.0);
  cfg.apply_dataset("driving");
  EXPECT_EQ(cfg.d_max, 80.0);
  EXPECT_THROW(cfg.apply_dataset("underwater"), ConfigError);
}

TEST(Prompts, SemanticStylesNameEveryClass) {
  PromptTemplate t;
  t.palette = Palette{{{"skateboard", {255, 255, 0}}}, {0, 0, 0}};
  t.style = PromptStyle::kJsonMap;
  EXPECT_NE(render_prompt(t).find(R"("skateboard": "<255, 255, 0>")"),
            std::string::npos);
  t.style = PromptStyle::kNaturalLanguage;
  EXPECT_NE(render_prompt(t).find(
                "Segment the skateboard category in pure yellow (<255, 255, 0>)"),
            std::string::npos)
      << render_prompt(t);
  t.palette = Palette{{{"menu", {128, 192, 0}}}, {0, 0, 0}};
  t.style = PromptStyle::kHex;
  EXPECT_NE(render_prompt(t).find("The menu is #80C000"), std::string::npos);
  t.style = PromptStyle::kRgbTuple;
  EXPECT_NE(render_prompt(t).find("(128, 192, 0)"), std::string::npos);
  EXPECT_EQ(render_prompt(t), render_prompt(t));
}

TEST(Prompts, SegmentationNeedsPalette) {
  PromptTemplate t;
  t.task = Task::kSemantic;
  EXPECT_THROW(render_prompt(t), ConfigError);
  t.palette = Palette{};
  EXPECT_THROW(render_prompt(t), ConfigError);
}

TEST(Prompts, DepthAndNormalDescribeTheCodec) {
  PromptTemplate t;
  t.task = Task::kDepth;
  const std::string cube = render_prompt(t);
  EXPECT_NE(cube.find("lambda = -3"), std::string::npos);
  EXPECT_NE(cube.find("(0, 0, 0), (0, 0, 255), (0, 255, 255)"),
            std::string::npos);
  t.colormap = "viridis";
  EXPECT_NE(render_prompt(t).find("viridis"), std::string::npos);
  t.task = Task::kNormals;
  EXPECT_FALSE(render_prompt(t).empty());
}

TEST(Prompts, DescribeColor) {
  EXPECT_EQ(describe_color({255, 255, 0}), "pure yellow");
  EXPECT_EQ(describe_color({250, 10, 5}), "red");
}

TEST(Manifest, StructuralChecks) {
  const fs::path dir = fs::temp_directory_path() / "visenc_manifest_checks";
  fs::create_directories(dir);
  write_text_file(dir / "a.png", "x");
  EXPECT_THROW(Manifest::parse(R"({"records": [
      {"id": "a", "task": "depth", "input_image": "a.png", "gt": "a.png"},
      {"id": "a", "task": "depth", "input_image": "a.png", "gt": "a.png"}]})",
                               dir),
               ConfigError);
  EXPECT_THROW(Manifest::parse(R"({"records": [
      {"id": "a", "task": "semantic", "input_image": "a.png", "gt": "a.png"}]})",
                               dir),
               ConfigError);
  EXPECT_THROW(Manifest::parse(R"({"records": [
      {"id": "a", "task": "depth", "input_image": "a.png", "gt": "b.png"}]})",
                               dir),
               ConfigError);
  EXPECT_THROW(Manifest::parse(R"({"records": [
      {"id": "a", "task": "pose", "input_image": "a.png", "gt": "a.png"}]})",
                               dir),
               ConfigError);
  EXPECT_THROW(Manifest::parse("[1, 2", dir), FormatError);
  const Manifest m = Manifest::parse(R"({"records": [
      {"id": "a", "task": "depth", "input_image": "a.png", "gt": "a.png",
       "intrinsics": [500, 500, 320, 240]}]})",
                                     dir);
  EXPECT_EQ(m.records[0].intrinsics->fx, 500.0);
  EXPECT_EQ(m.display_path(m.records[0].gt), "a.png");
  fs::remove_all(dir);
}

TEST_F(FixtureTest, IdentityPredictionsScorePerfectly) {
  const Manifest m = Manifest::load(dir() / "manifest.json");
  const RunConfig cfg;
  const EvalReport depth = run_eval(m, EvalKind::kDepth, cfg);
  EXPECT_EQ(depth.n_scored(), 2u);
  EXPECT_EQ(metric(depth.aggregate, "delta1"), 1.0);
  EXPECT_LT(metric(depth.aggregate, "absrel"), 0.01);
  const EvalReport normals = run_eval(m, EvalKind::kNormals, cfg);
  EXPECT_LT(metric(normals.aggregate, "mean_deg"), 0.5);
  const EvalReport seg = run_eval(m, EvalKind::kSegmentation, cfg);
  EXPECT_EQ(seg.n_scored(), 5u);
  EXPECT_EQ(metric(seg.per_image[0].metrics, "miou"), 1.0);
  EXPECT_LT(metric(seg.aggregate, "semantic.miou"), 1.0);
  EXPECT_EQ(metric(seg.aggregate, "instance.matched_f1"), 1.0);
  EXPECT_EQ(metric(seg.aggregate, "referring.miou"), 1.0);
  EXPECT_NE(seg.to_json().find("pmF1"), std::string::npos);
}

TEST_F(FixtureTest, AggregateMatchesRecomputation) {
  const Manifest m = Manifest::load(dir() / "manifest.json");
  const EvalReport r = run_eval(m, EvalKind::kDepth, RunConfig{});
  std::vector<double> d1;
  for (const auto& o : r.per_image) d1.push_back(metric(o.metrics, "delta1"));
  EXPECT_EQ(metric(r.aggregate, "delta1"), order_independent_mean(d1));
  EXPECT_EQ(aggregate_outcomes(EvalKind::kDepth, r.per_image), r.aggregate);
}

TEST_F(FixtureTest, ThreadCountDoesNotChangeReports) {
  const Manifest m = Manifest::load(dir() / "manifest.json");
  RunConfig one;
  RunConfig many;
  many.threads = 4;
  for (EvalKind k :
       {EvalKind::kDepth, EvalKind::kNormals, EvalKind::kSegmentation}) {
    EXPECT_EQ(run_eval(m, k, one).to_json(), run_eval(m, k, many).to_json());
  }
}

TEST_F(FixtureTest, MissingPredictionIsRecordedNotFatal) {
  Manifest m = Manifest::load(dir() / "manifest.json");
  m.records[0].pred = dir() / "nope.png";
  const EvalReport r = run_eval(m, EvalKind::kDepth, RunConfig{});
  EXPECT_EQ(r.n_scored(), 1u);
  EXPECT_EQ(r.n_failed(), 1u);
  EXPECT_FALSE(r.per_image[0].ok);
  m.records[4].pred = dir() / "nope.png";
  EXPECT_THROW(run_eval(m, EvalKind::kDepth, RunConfig{}), RunError);
}

TEST_F(FixtureTest, CsvHasOneRowPerRecord) {
  const Manifest m = Manifest::load(dir() / "manifest.json");
  const std::string csv = run_eval(m, EvalKind::kNormals, RunConfig{}).to_csv();
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 3);
  EXPECT_EQ(csv.rfind("id,task,mean_deg", 0), 0u) << csv;
}

TEST_F(FixtureTest, DegradedPredictionsStillScoreWell) {
  const Manifest m = Manifest::load(dir() / "manifest.json");
  RunConfig cfg;
  cfg.degrade = "noise:4,quantize8";
  cfg.seed = 3;
  EXPECT_GE(metric(run_eval(m, EvalKind::kDepth, cfg).aggregate, "delta1"),
            0.99);
}

TEST_F(FixtureTest, TrainingPairsRoundTrip) {
  const Manifest m = Manifest::load(dir() / "manifest.json");
  PairOptions opts;
  opts.seed = 5;
  opts.style_mix = parse_style_mix("hex");
  opts.colormap_mix = parse_colormap_mix("cube:1,viridis:1");
  const fs::path out = dir() / "pairs";
  const PairManifest pairs = emit_training_pairs(m, opts, out);
  EXPECT_EQ(pairs.pairs.size(), m.records.size());
  EXPECT_TRUE(pairs.skipped.empty());
  for (const auto& p : pairs.pairs) {
    EXPECT_EQ(p.style, PromptStyle::kHex);
    if (p.task == Task::kSemantic) {
      EXPECT_NE(p.prompt.find("#FF0000"), std::string::npos);
    }
    if (p.id != "depth0") continue;
    const DepthMap gt = load_depth_gt(m.records[0].gt);
    const RgbImage img = load_rgb_image(out / p.target);
    const DepthMap back = p.colormap == "cube"
                              ? decode_depth(img)
                              : decode_depth_lut(img, builtin_lut(p.colormap));
    for (std::size_t i = 0; i < gt.size(); ++i) {
      if (!gt.valid[i]) continue;
      ASSERT_TRUE(back.valid[i]);
      EXPECT_NEAR(back.values[i] / gt.values[i], 1.0, 0.03);
    }
  }
  EXPECT_EQ(emit_training_pairs(m, opts, out).to_json(), pairs.to_json());
}

TEST_F(FixtureTest, UnencodableGroundTruthIsSkipped) {
  Manifest m = Manifest::load(dir() / "manifest.json");
  m.records[0].gt = dir() / "palette.json";
  const PairManifest pairs =
      emit_training_pairs(m, PairOptions{}, dir() / "pairs_skip");
  ASSERT_EQ(pairs.skipped.size(), 1u);
  EXPECT_EQ(pairs.skipped[0].id, m.records[0].id);
}

TEST(Mixes, ParseWeights) {
  const auto mix = parse_style_mix("hex:2,json_map:0.5");
  ASSERT_EQ(mix.size(), 2u);
  EXPECT_EQ(mix[0].second, 2.0);
  EXPECT_THROW(parse_style_mix("hex:-1"), ConfigError);
  EXPECT_THROW(parse_style_mix("hex:0"), ConfigError);
  EXPECT_THROW(parse_colormap_mix("jet"), ConfigError);
}

}  // namespace
}  // namespace visenc
