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

#ifndef NETCTL_INSTANCES_HPP_
#define NETCTL_INSTANCES_HPP_

#include <vector>

#include "netctl/game.hpp"

namespace netctl {

// Two parallel O->D edges: "top" with constant cost 1 and "bottom" with cost
// x^p; unit demand. Controller r receives fractions[r] of the demand.
// Integer p yields an ordinary coefficient list, other p > 0 a real monomial.
GameInstance PigouInstance(double p, const std::vector<double>& fractions = {1.0});

// Four-node Braess network with unit demand: O->A and B->D cost x^p, A->D and
// O->B cost 1, A->B costs 0. Paths: upper, zig-zag, lower.
GameInstance BraessInstance(double p, const std::vector<double>& fractions = {1.0});

// Equal fractions 1/R.
std::vector<double> ProportionalFractions(std::size_t num_controllers);

}  // namespace netctl

#endif  // NETCTL_INSTANCES_HPP_
