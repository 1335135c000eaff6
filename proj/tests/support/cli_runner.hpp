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

#ifndef VISENC_TESTS_SUPPORT_CLI_RUNNER_HPP_
#define VISENC_TESTS_SUPPORT_CLI_RUNNER_HPP_

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "cli_cases.hpp"
#include "visenc/io.hpp"

namespace visenc::testing {

struct CliResult {
  int code = -1;
  std::string out;
  std::string err;
};

inline CliResult run_cli(std::vector<std::string> args) {
  args.insert(args.begin(), "visenc");
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

inline std::vector<std::string> expand(const std::vector<std::string>& args,
                                       const std::filesystem::path& in,
                                       const std::filesystem::path& out) {
  std::vector<std::string> result;
  for (std::string a : args) {
    for (const auto& [key, value] :
         {std::pair<std::string, std::string>{"{in}", in.string()},
          std::pair<std::string, std::string>{"{out}", out.string()}}) {
      for (std::size_t pos; (pos = a.find(key)) != std::string::npos;) {
        a.replace(pos, key.size(), value);
      }
    }
    result.push_back(a);
  }
  return result;
}

inline CliResult run_case(const CliCase& c, const std::filesystem::path& in,
                          const std::filesystem::path& out) {
  std::filesystem::create_directories(out);
  return run_cli(expand(c.args, in, out));
}

// FNV-1a over file bytes, or over decoded samples for PNG so the digest
// does not depend on the zlib build.
inline std::string output_digest(const std::filesystem::path& path) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  const auto mix = [&h](std::uint64_t byte) {
    h ^= byte;
    h *= 0x100000001b3ull;
  };
  if (path.extension() == ".png") {
    const PngRaster r = read_png(path);
    for (int v : {r.width, r.height, r.channels, r.bit_depth}) mix(unsigned(v));
    for (std::uint16_t s : r.samples) {
      mix(s & 0xff);
      mix(s >> 8);
    }
  } else {
    for (std::uint8_t b : read_file(path)) mix(b);
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace visenc::testing

#endif  // VISENC_TESTS_SUPPORT_CLI_RUNNER_HPP_
