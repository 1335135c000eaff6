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

#ifndef VISENC_TASK_HPP_
#define VISENC_TASK_HPP_

#include <string>
#include <string_view>

namespace visenc {

enum class Task { kDepth, kNormals, kSemantic, kInstance, kReferring };

// "depth", "normals", "semantic", "instance", "referring".
std::string to_string(Task task);
// Throws ConfigError for unknown names.
Task parse_task(std::string_view name);

inline bool is_segmentation(Task t) {
  return t == Task::kSemantic || t == Task::kInstance || t == Task::kReferring;
}

}  // namespace visenc

#endif  // VISENC_TASK_HPP_
