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

#include "netctl/flow.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "netctl/error.hpp"
#include "netctl/paths.hpp"

namespace netctl {
namespace {

constexpr double kFeasibilityTol = 1e-9;
constexpr double kLoadTol = 1e-12;

}  // namespace

FlowProfile FlowProfile::Zero(const GameInstance& instance) {
  FlowProfile profile;
  profile.flow.resize(instance.assignment.size());
  for (auto& per_population : profile.flow) {
    for (const Population& pop : instance.populations) {
      per_population.emplace_back(pop.paths.size(), 0.0);
    }
  }
  profile.edge_loads.assign(instance.network.edges.size(), 0.0);
  return profile;
}

void FlowProfile::RecomputeLoads(const GameInstance& instance) {
  edge_loads = EdgeLoadsFromFlows(instance, *this);
}

std::vector<double> FlowProfile::ControllerLoads(const GameInstance& instance,
                                                 std::size_t r) const {
  std::vector<double> loads(instance.network.edges.size(), 0.0);
  for (std::size_t i = 0; i < instance.populations.size(); ++i) {
    const auto& paths = instance.populations[i].paths;
    for (std::size_t s = 0; s < paths.size(); ++s) {
      const double x = flow[r][i][s];
      if (x == 0.0) continue;
      for (EdgeIndex e : paths[s]) loads[e] += x;
    }
  }
  return loads;
}

std::vector<double> FlowProfile::PopulationFlows(std::size_t i) const {
  std::vector<double> total;
  for (const auto& per_population : flow) {
    const auto& row = per_population[i];
    if (total.empty()) total.assign(row.size(), 0.0);
    for (std::size_t s = 0; s < row.size(); ++s) total[s] += row[s];
  }
  return total;
}

void FlowProfile::Truncate(const GameInstance& instance, double threshold) {
  for (auto& per_population : flow) {
    for (auto& row : per_population) {
      if (row.empty()) continue;
      const auto largest = std::max_element(row.begin(), row.end());
      double moved = 0.0;
      for (auto it = row.begin(); it != row.end(); ++it) {
        if (it != largest && *it < threshold) {
          moved += *it;
          *it = 0.0;
        }
      }
      *largest += moved;
      if (*largest < threshold) *largest = 0.0;
    }
  }
  RecomputeLoads(instance);
}

std::vector<double> EdgeLoadsFromFlows(const GameInstance& instance,
                                       const FlowProfile& flows) {
  std::vector<double> loads(instance.network.edges.size(), 0.0);
  for (std::size_t r = 0; r < flows.flow.size(); ++r) {
    for (std::size_t i = 0; i < instance.populations.size(); ++i) {
      const auto& paths = instance.populations[i].paths;
      for (std::size_t s = 0; s < paths.size(); ++s) {
        const double x = flows.flow[r][i][s];
        if (x == 0.0) continue;
        for (EdgeIndex e : paths[s]) loads[e] += x;
      }
    }
  }
  return loads;
}

std::vector<double> EdgeCosts(const Network& network,
                              const std::vector<double>& loads) {
  std::vector<double> costs(network.edges.size());
  for (std::size_t e = 0; e < costs.size(); ++e) {
    costs[e] = network.edges[e].cost.Evaluate(std::max(0.0, loads[e]));
  }
  return costs;
}

void RequireFeasible(const GameInstance& instance, const FlowProfile& flows) {
  const auto fail = [](const std::string& msg) {
    throw Error(ErrorCode::kInfeasibleFlows, "infeasible flows: " + msg);
  };
  const ControlAssignment& a = instance.assignment;
  if (flows.flow.size() != a.size()) fail("controller count mismatch");
  if (flows.edge_loads.size() != instance.network.edges.size()) {
    fail("edge load vector has the wrong size");
  }
  for (std::size_t r = 0; r < a.size(); ++r) {
    if (flows.flow[r].size() != instance.populations.size()) {
      fail("population count mismatch");
    }
    for (std::size_t i = 0; i < instance.populations.size(); ++i) {
      const auto& row = flows.flow[r][i];
      if (row.size() != instance.populations[i].paths.size()) {
        fail("path count mismatch");
      }
      double sum = 0.0;
      for (double x : row) {
        if (!(x >= 0.0) || !std::isfinite(x)) fail("negative or non-finite path flow");
        sum += x;
      }
      const double target = a.shares[r][i];
      if (std::abs(sum - target) > kFeasibilityTol * std::max(1.0, target)) {
        std::ostringstream msg;
        msg << "controller '" << a.controllers[r] << "' routes " << sum
            << " of population '" << instance.populations[i].id << "' but controls "
            << target;
        fail(msg.str());
      }
    }
  }
  const std::vector<double> loads = EdgeLoadsFromFlows(instance, flows);
  for (std::size_t e = 0; e < loads.size(); ++e) {
    if (std::abs(loads[e] - flows.edge_loads[e]) > kLoadTol * std::max(1.0, loads[e])) {
      fail("edge loads are inconsistent with path flows on edge '" +
           instance.network.edges[e].id + "'");
    }
  }
}

double SocialCostOfLoads(const Network& network, const std::vector<double>& loads) {
  double total = 0.0;
  for (std::size_t e = 0; e < network.edges.size(); ++e) {
    const double f = std::max(0.0, loads[e]);
    if (f == 0.0) continue;
    total += f * network.edges[e].cost.Evaluate(f);
  }
  return total;
}

double PotentialOfLoads(const Network& network, const std::vector<double>& loads) {
  double total = 0.0;
  for (std::size_t e = 0; e < network.edges.size(); ++e) {
    total += network.edges[e].cost.Integral(std::max(0.0, loads[e]));
  }
  return total;
}

double SocialCost(const GameInstance& instance, const FlowProfile& flows) {
  RequireFeasible(instance, flows);
  return SocialCostOfLoads(instance.network, flows.edge_loads);
}

double BeckmannPotential(const GameInstance& instance, const FlowProfile& flows) {
  RequireFeasible(instance, flows);
  return PotentialOfLoads(instance.network, flows.edge_loads);
}

double PathCostAggregate(const GameInstance& instance, const FlowProfile& flows) {
  const std::vector<double> costs = EdgeCosts(instance.network, flows.edge_loads);
  double total = 0.0;
  for (const auto& per_population : flows.flow) {
    for (std::size_t i = 0; i < instance.populations.size(); ++i) {
      const auto& paths = instance.populations[i].paths;
      for (std::size_t s = 0; s < paths.size(); ++s) {
        total += per_population[i][s] * PathSum(paths[s], costs);
      }
    }
  }
  return total;
}

}  // namespace netctl
