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

// Dataset manifests.
//
//   {"records": [
//     {"id": "kitchen_0001", "task": "depth",
//      "input_image": "rgb/kitchen_0001.png", "gt": "depth/kitchen_0001.png",
//      "pred": "pred/kitchen_0001.png",
//      "intrinsics": [518.8, 519.5, 325.6, 253.7]},
//     {"id": "street_12", "task": "semantic", "input_image": "...",
//      "gt": "...", "palette": "palettes/cityscapes.json"}
//   ]}
//
// Relative paths resolve against the manifest's directory. Loading checks
// that ids are unique, that input_image, gt and palette exist, and that
// segmentation records carry a palette. pred files are checked when a run
// reads them, so a missing prediction fails only its own record.

#ifndef VISENC_MANIFEST_HPP_
#define VISENC_MANIFEST_HPP_

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "visenc/geometry.hpp"
#include "visenc/task.hpp"

namespace visenc {

struct ManifestRecord {
  std::string id;
  Task task = Task::kDepth;
  std::filesystem::path input_image;
  std::filesystem::path gt;
  std::optional<std::filesystem::path> pred;
  std::optional<std::filesystem::path> palette;
  std::optional<Intrinsics> intrinsics;
};

struct Manifest {
  std::filesystem::path base_dir;
  std::vector<ManifestRecord> records;

  // Throws FormatError for malformed JSON and ConfigError for schema or
  // invariant violations.
  static Manifest parse(std::string_view json_text,
                        const std::filesystem::path& base_dir);
  static Manifest load(const std::filesystem::path& path);

  // Path relative to base_dir when it lies beneath it, for reports.
  std::string display_path(const std::filesystem::path& p) const;
};

}  // namespace visenc

#endif  // VISENC_MANIFEST_HPP_
