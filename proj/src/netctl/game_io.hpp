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

#ifndef NETCTL_GAME_IO_HPP_
#define NETCTL_GAME_IO_HPP_

#include <cstddef>
#include <string>

#include "json.hpp"
#include "netctl/control_game.hpp"
#include "netctl/equilibrium.hpp"
#include "netctl/game.hpp"

namespace netctl {

inline constexpr std::size_t kDefaultMaxPaths = 64;

// Parses the JSON game format. Populations without "paths" get every simple
// path (at most max_paths). Structural problems throw Error(kParse) with a
// "line N" prefix; invariant violations are left for Validate().
GameInstance ParseGame(const std::string& text, std::size_t max_paths = kDefaultMaxPaths);
GameInstance LoadGameFile(const std::string& path,
                          std::size_t max_paths = kDefaultMaxPaths);

nlohmann::json GameToJson(const GameInstance& instance);

nlohmann::json FlowsToJson(const GameInstance& instance, const FlowProfile& flows);
// Reads the "flows" array written by FlowsToJson; loads are recomputed.
FlowProfile FlowsFromJson(const GameInstance& instance, const nlohmann::json& doc);

nlohmann::json ResultToJson(const GameInstance& instance, const EquilibriumResult& result,
                            const std::string& kind);
nlohmann::json ResultToJson(const GameInstance& instance, const NceResult& result);

// 1-based line of the value addressed by a JSON pointer such as
// "/edges/2/tail", or 0 when it cannot be found.
std::size_t LineOfPointer(const std::string& text, const std::string& pointer);

// Reads a whole file; throws Error(kParse) when it cannot be opened.
std::string ReadTextFile(const std::string& path);

// The report with each violation prefixed by the line of `text` holding the
// offending element, when one can be located.
std::string AnnotateReport(const ValidationReport& report, const std::string& text);

}  // namespace netctl

#endif  // NETCTL_GAME_IO_HPP_
