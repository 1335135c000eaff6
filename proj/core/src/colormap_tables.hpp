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

#ifndef VISENC_SRC_COLORMAP_TABLES_HPP_
#define VISENC_SRC_COLORMAP_TABLES_HPP_

#include <array>

#include "visenc/image.hpp"

namespace visenc::detail {

extern const std::array<Rgb, 256> kViridisTable;
extern const std::array<Rgb, 256> kPlasmaTable;
extern const std::array<Rgb, 256> kInfernoTable;

}  // namespace visenc::detail

#endif  // VISENC_SRC_COLORMAP_TABLES_HPP_
