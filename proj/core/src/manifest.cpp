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

#include "visenc/manifest.hpp"

#include <set>

#include "json.hpp"
#include "visenc/io.hpp"

namespace visenc {

Manifest Manifest::parse(std::string_view json_text,
                         const std::filesystem::path& base_dir) {
  using nlohmann::json;
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw FormatError(std::string("manifest: ") + e.what(), e.byte);
  }
  if (!j.is_object() || !j.contains("records") || !j["records"].is_array()) {
    throw ConfigError("manifest must be an object with a \"records\" array");
  }
  Manifest m;
  m.base_dir = base_dir;
  std::set<std::string> ids;
  const auto resolve = [&](const std::string& p) {
    const std::filesystem::path path(p);
    return (path.is_absolute() ? path : base_dir / path).lexically_normal();
  };
  for (const json& r : j["records"]) {
    const auto field = [&](const char* name) -> std::string {
      if (!r.contains(name) || !r[name].is_string()) {
        throw ConfigError(std::string("manifest record is missing string "
                                      "field \"") + name + "\"");
      }
      return r[name].get<std::string>();
    };
    ManifestRecord rec;
    rec.id = field("id");
    if (rec.id.empty()) throw ConfigError("manifest record id is empty");
    if (!ids.insert(rec.id).second) {
      throw ConfigError("manifest id \"" + rec.id + "\" is not unique");
    }
    rec.task = parse_task(field("task"));
    rec.input_image = resolve(field("input_image"));
    rec.gt = resolve(field("gt"));
    if (r.contains("pred") && !r["pred"].is_null()) rec.pred = resolve(field("pred"));
    if (r.contains("palette") && !r["palette"].is_null()) {
      rec.palette = resolve(field("palette"));
    }
    if (r.contains("intrinsics") && !r["intrinsics"].is_null()) {
      const json& k = r["intrinsics"];
      if (!k.is_array() || k.size() != 4) {
        throw ConfigError("record \"" + rec.id +
                          "\": intrinsics must be [fx, fy, cx, cy]");
      }
      for (const json& v : k) {
        if (!v.is_number()) {
          throw ConfigError("record \"" + rec.id +
                            "\": intrinsics must be numbers");
        }
      }
      rec.intrinsics = Intrinsics{k[0].get<double>(), k[1].get<double>(),
                                  k[2].get<double>(), k[3].get<double>()};
      rec.intrinsics->validate();
    }
    if (is_segmentation(rec.task) && !rec.palette) {
      throw ConfigError("record \"" + rec.id + "\": " + to_string(rec.task) +
                        " records need a palette");
    }
    for (const auto* p : {&rec.input_image, &rec.gt}) {
      if (!std::filesystem::exists(*p)) {
        throw ConfigError("record \"" + rec.id + "\": missing file " +
                          p->string());
      }
    }
    if (rec.palette && !std::filesystem::exists(*rec.palette)) {
      throw ConfigError("record \"" + rec.id + "\": missing palette " +
                        rec.palette->string());
    }
    m.records.push_back(std::move(rec));
  }
  return m;
}

Manifest Manifest::load(const std::filesystem::path& path) {
  return parse(read_text_file(path), path.parent_path());
}

std::string Manifest::display_path(const std::filesystem::path& p) const {
  const auto rel = p.lexically_relative(base_dir);
  if (!rel.empty() && *rel.begin() != "..") return rel.generic_string();
  return p.generic_string();
}

}  // namespace visenc
