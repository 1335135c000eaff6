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

#include "visenc/task.hpp"

#include "visenc/error.hpp"

namespace visenc {

std::string to_string(Task task) {
  switch (task) {
    case Task::kDepth: return "depth";
    case Task::kNormals: return "normals";
    case Task::kSemantic: return "semantic";
    case Task::kInstance: return "instance";
    case Task::kReferring: return "referring";
  }
  return "unknown";
}

Task parse_task(std::string_view name) {
  for (Task t : {Task::kDepth, Task::kNormals, Task::kSemantic,
                 Task::kInstance, Task::kReferring}) {
    if (to_string(t) == name) return t;
  }
  throw ConfigError("unknown task \"" + std::string(name) + "\"");
}

}  // namespace visenc
