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

#include "netctl/equilibrium.hpp"

#include "netctl/error.hpp"
#include "netctl/paths.hpp"
#include "netctl/rng.hpp"

namespace netctl {
namespace {

void Evaluate(const GameInstance& instance, const std::vector<InformationType>& types,
              EquilibriumResult& result) {
  const std::vector<double>& loads = result.flows.edge_loads;
  result.social_cost = SocialCostOfLoads(instance.network, loads);
  result.potential = PotentialOfLoads(instance.network, loads);
  const std::vector<double> costs = EdgeCosts(instance.network, loads);
  result.type_path_costs.clear();
  for (const InformationType& type : types) {
    std::vector<double> path_costs;
    for (std::size_t s : type.known_paths) {
      path_costs.push_back(
          PathSum(instance.populations[type.population].paths[s], costs));
    }
    result.type_path_costs.push_back(std::move(path_costs));
  }
}

EquilibriumResult Finish(const GameInstance& instance,
                         const std::vector<InformationType>& types,
                         const std::vector<std::vector<double>>& type_flows,
                         const BlockSolverStats& stats) {
  EquilibriumResult result;
  result.type_flows = type_flows;
  result.iterations = stats.iterations;
  result.relative_gap = stats.relative_gap;
  result.converged = stats.converged;

  std::vector<std::vector<double>> population_flows;
  for (const Population& pop : instance.populations) {
    population_flows.emplace_back(pop.paths.size(), 0.0);
  }
  for (std::size_t k = 0; k < types.size(); ++k) {
    const InformationType& type = types[k];
    for (std::size_t j = 0; j < type.known_paths.size(); ++j) {
      population_flows[type.population][type.known_paths[j]] += type_flows[k][j];
    }
  }

  FlowProfile& flows = result.flows;
  flows = FlowProfile::Zero(instance);
  const ControlAssignment& a = instance.assignment;
  for (std::size_t r = 0; r < a.size(); ++r) {
    for (std::size_t i = 0; i < instance.populations.size(); ++i) {
      const double fraction = a.shares[r][i] / instance.populations[i].demand;
      for (std::size_t s = 0; s < population_flows[i].size(); ++s) {
        flows.flow[r][i][s] = population_flows[i][s] * fraction;
      }
    }
  }
  flows.Truncate(instance, kFlowDisplayThreshold);
  Evaluate(instance, types, result);
  return result;
}

}  // namespace

std::vector<InformationType> EffectiveTypes(const GameInstance& instance) {
  std::vector<InformationType> types = instance.information_types;
  std::vector<bool> typed(instance.populations.size(), false);
  for (const InformationType& type : types) typed[type.population] = true;
  for (std::size_t i = 0; i < instance.populations.size(); ++i) {
    if (typed[i]) continue;
    InformationType full;
    full.id = instance.populations[i].id;
    full.population = i;
    full.demand = instance.populations[i].demand;
    for (std::size_t s = 0; s < instance.populations[i].paths.size(); ++s) {
      full.known_paths.push_back(s);
    }
    types.push_back(std::move(full));
  }
  return types;
}

EquilibriumResult SolveUe(const GameInstance& instance, const SolveOptions& options) {
  RequireValid(instance);
  if (!(options.tol > 0.0) || !(options.flow_tol > 0.0) || options.max_iters < 0) {
    throw Error(ErrorCode::kInvalidArgument,
                "tol and flow_tol must be > 0 and max_iters >= 0");
  }
  const std::vector<InformationType> types = EffectiveTypes(instance);
  Rng rng(options.seed);
  std::vector<PathBlock> blocks;
  for (const InformationType& type : types) {
    PathBlock block;
    block.demand = type.demand;
    for (std::size_t s : type.known_paths) {
      block.paths.push_back(&instance.populations[type.population].paths[s]);
    }
    const std::size_t n = block.paths.size();
    block.flow = options.seed == 0
                     ? std::vector<double>(n, type.demand / static_cast<double>(n))
                     : rng.SimplexPoint(n, type.demand);
    blocks.push_back(std::move(block));
  }
  const BlockSolver solver(instance.network, EdgeObjective::kPotential, {});
  BlockSolverOptions block_options;
  block_options.tol = options.tol;
  block_options.flow_tol = options.flow_tol;
  block_options.max_iters = options.max_iters;
  block_options.step = options.step;
  const BlockSolverStats stats = solver.Solve(blocks, block_options);

  std::vector<std::vector<double>> type_flows;
  for (const PathBlock& block : blocks) type_flows.push_back(block.flow);
  return Finish(instance, types, type_flows, stats);
}

EquilibriumResult SolveSo(const GameInstance& instance, const SolveOptions& options) {
  const GameInstance marginal = MarginalCostInstance(instance);
  EquilibriumResult result = SolveUe(marginal, options);
  // Same flows, original costs.
  Evaluate(instance, EffectiveTypes(instance), result);
  return result;
}

EquilibriumResult EvaluateFlows(const GameInstance& instance, const FlowProfile& flows) {
  RequireValid(instance);
  RequireFeasible(instance, flows);
  EquilibriumResult result;
  result.flows = flows;
  if (instance.information_types.empty()) {
    for (std::size_t i = 0; i < instance.populations.size(); ++i) {
      result.type_flows.push_back(flows.PopulationFlows(i));
    }
  }
  Evaluate(instance, EffectiveTypes(instance), result);
  return result;
}

}  // namespace netctl
