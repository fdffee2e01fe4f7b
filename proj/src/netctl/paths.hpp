// Copyright 2026 The netctl Authors.
//
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

#ifndef NETCTL_PATHS_HPP_
#define NETCTL_PATHS_HPP_

#include <cstddef>
#include <vector>

#include "netctl/game.hpp"

namespace netctl {

// All simple origin->destination paths, ordered lexicographically by edge
// index (declaration order of the edges). Throws kNoPath when none exist and
// kTooManyPaths when more than max_paths exist.
std::vector<Path> EnumeratePaths(const Network& network, NodeIndex origin,
                                 NodeIndex destination, std::size_t max_paths);

// Sum of the listed per-edge values over the path's edges.
double PathSum(const Path& path, const std::vector<double>& per_edge);

}  // namespace netctl

#endif  // NETCTL_PATHS_HPP_
