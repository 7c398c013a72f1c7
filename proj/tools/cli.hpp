// Copyright 2026 The g24 Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef G24_TOOLS_CLI_HPP_
#define G24_TOOLS_CLI_HPP_

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "g24/angles.hpp"
#include "g24/enumerate.hpp"

namespace g24::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;

struct RunConfig {
  int cap = 40;
  std::filesystem::path cache_dir;
  unsigned digits = 50;
  std::uint64_t seed = 0;
  Tolerances tolerances;

  EnumerationConfig enumeration() const { return EnumerationConfig{cap, cache_dir}; }
};

// Layers, lowest first: defaults, config file, environment, flags. The
// config file holds key=value lines (cap, cache_dir, digits, seed,
// tol_product, tol_incidence); '#' starts a comment.
using Settings = std::map<std::string, std::string>;
Settings ReadConfigFile(const std::filesystem::path& path);
Settings SettingsFromEnvironment();
RunConfig ResolveConfig(const std::vector<Settings>& layers);

int RunCli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

// SVG rendering of approx CSV output, one polyline per series.
struct PlotInput {
  std::vector<double> t;
  std::vector<double> psi;
};
PlotInput ReadApproxCsv(std::istream& in);
std::string RenderSvg(const PlotInput& data, const std::string& phi_spec, double guide);

}  // namespace g24::cli

#endif  // G24_TOOLS_CLI_HPP_
