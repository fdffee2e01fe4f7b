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

#ifndef NETCTL_FLOW_HPP_
#define NETCTL_FLOW_HPP_

#include <cstddef>
#include <vector>

#include "netctl/game.hpp"

namespace netctl {

// Path flows per (controller r, population i, path s) plus the induced edge
// loads. Populations outside a controller's support hold all-zero rows.
struct FlowProfile {
  std::vector<std::vector<std::vector<double>>> flow;
  std::vector<double> edge_loads;

  static FlowProfile Zero(const GameInstance& instance);

  void RecomputeLoads(const GameInstance& instance);
  // Load on each edge coming from controller r alone.
  std::vector<double> ControllerLoads(const GameInstance& instance,
                                      std::size_t r) const;
  // Path flows of population i summed over controllers.
  std::vector<double> PopulationFlows(std::size_t i) const;
  // Sets entries below `threshold` to zero, moving the mass onto the largest
  // path of the same (r, i) row so that row sums are preserved.
  void Truncate(const GameInstance& instance, double threshold);
};

std::vector<double> EdgeLoadsFromFlows(const GameInstance& instance,
                                       const FlowProfile& flows);
std::vector<double> EdgeCosts(const Network& network,
                              const std::vector<double>& loads);

// Throws Error(kInfeasibleFlows) unless every row sums to its share, all
// entries are nonnegative, and the stored loads match the path flows.
void RequireFeasible(const GameInstance& instance, const FlowProfile& flows);

// Sum_e f_e c_e(f_e).
double SocialCostOfLoads(const Network& network, const std::vector<double>& loads);
// Sum_e integral_0^{f_e} c_e.
double PotentialOfLoads(const Network& network, const std::vector<double>& loads);

double SocialCost(const GameInstance& instance, const FlowProfile& flows);
double BeckmannPotential(const GameInstance& instance, const FlowProfile& flows);
// Sum over all (r, i, s) of path flow times path cost; equals SocialCost.
double PathCostAggregate(const GameInstance& instance, const FlowProfile& flows);

}  // namespace netctl

#endif  // NETCTL_FLOW_HPP_
