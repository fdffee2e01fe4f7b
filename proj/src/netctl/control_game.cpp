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

#include "netctl/control_game.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "netctl/equilibrium.hpp"
#include "netctl/error.hpp"
#include "netctl/paths.hpp"
#include "netctl/rng.hpp"

namespace netctl {
namespace {

struct BestResponseWork {
  std::vector<std::vector<double>> flow;
  BlockSolverStats stats;
};

// Own cost of controller r when it alone adds `own` on top of `others`.
double OwnCost(const Network& net, const std::vector<double>& own,
               const std::vector<double>& others) {
  double total = 0.0;
  for (EdgeIndex e = 0; e < own.size(); ++e) {
    if (own[e] <= 0.0) continue;
    total += own[e] * net.edges[e].cost.Evaluate(own[e] + std::max(0.0, others[e]));
  }
  return total;
}

std::vector<double> LoadsOf(const GameInstance& instance,
                            const std::vector<std::vector<double>>& flow) {
  std::vector<double> loads(instance.network.edges.size(), 0.0);
  for (std::size_t i = 0; i < flow.size(); ++i) {
    for (std::size_t s = 0; s < flow[i].size(); ++s) {
      if (flow[i][s] == 0.0) continue;
      for (EdgeIndex e : instance.populations[i].paths[s]) loads[e] += flow[i][s];
    }
  }
  return loads;
}

BestResponseWork SolveBestResponse(const GameInstance& instance,
                                   const std::vector<double>& others, std::size_t r,
                                   double tol,
                                   const std::vector<std::vector<double>>* warm,
                                   long max_iters) {
  const ControlAssignment& a = instance.assignment;
  std::vector<PathBlock> blocks;
  std::vector<std::size_t> block_population;
  for (std::size_t i = 0; i < instance.populations.size(); ++i) {
    const double demand = a.shares[r][i];
    if (demand <= 0.0) continue;
    const Population& pop = instance.populations[i];
    PathBlock block;
    block.demand = demand;
    for (const Path& path : pop.paths) block.paths.push_back(&path);
    const std::size_t n = pop.paths.size();
    double warm_sum = 0.0;
    if (warm != nullptr) {
      for (double x : (*warm)[i]) warm_sum += std::max(0.0, x);
    }
    if (warm_sum > 0.0) {
      for (double x : (*warm)[i]) block.flow.push_back(std::max(0.0, x) * demand / warm_sum);
    } else {
      block.flow.assign(n, demand / static_cast<double>(n));
    }
    blocks.push_back(std::move(block));
    block_population.push_back(i);
  }
  const BlockSolver solver(instance.network, EdgeObjective::kOwnCost, others);
  BlockSolverOptions options;
  options.tol = tol;
  options.max_iters = max_iters;
  BestResponseWork work;
  work.stats = solver.Solve(blocks, options);
  work.flow.resize(instance.populations.size());
  for (std::size_t i = 0; i < instance.populations.size(); ++i) {
    work.flow[i].assign(instance.populations[i].paths.size(), 0.0);
  }
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    work.flow[block_population[b]] = blocks[b].flow;
  }
  return work;
}

KktResidual ComputeKkt(const GameInstance& instance, const std::vector<double>& others,
                       std::size_t r, const std::vector<std::vector<double>>& flow) {
  const BlockSolver solver(instance.network, EdgeObjective::kOwnCost, others);
  const std::vector<double> own = LoadsOf(instance, flow);
  std::vector<double> edge_grad(own.size());
  for (EdgeIndex e = 0; e < own.size(); ++e) edge_grad[e] = solver.EdgeGradient(e, own[e]);

  KktResidual kkt;
  for (std::size_t i = 0; i < instance.populations.size(); ++i) {
    if (instance.assignment.shares[r][i] <= 0.0) continue;
    const auto& paths = instance.populations[i].paths;
    std::vector<double> grads;
    for (const Path& path : paths) grads.push_back(PathSum(path, edge_grad));
    const double cheapest = *std::min_element(grads.begin(), grads.end());
    for (std::size_t s = 0; s < paths.size(); ++s) {
      KktEntry entry;
      entry.population = i;
      entry.path = s;
      entry.flow = flow[i][s];
      entry.multiplier = grads[s] - cheapest;
      entry.stationarity = entry.flow > 0.0 ? entry.multiplier : 0.0;
      entry.complementarity = entry.flow * entry.multiplier;
      kkt.entries.push_back(entry);
    }
  }
  return kkt;
}

void RescaleRows(const GameInstance& instance, FlowProfile& flows) {
  const ControlAssignment& a = instance.assignment;
  for (std::size_t r = 0; r < a.size(); ++r) {
    for (std::size_t i = 0; i < instance.populations.size(); ++i) {
      auto& row = flows.flow[r][i];
      const double share = a.shares[r][i];
      double sum = 0.0;
      for (double& x : row) {
        x = std::max(0.0, x);
        sum += x;
      }
      for (double& x : row) {
        x = sum > 0.0 ? x * share / sum : share / static_cast<double>(row.size());
      }
    }
  }
}

bool SameShape(const GameInstance& instance, const FlowProfile& flows) {
  if (flows.flow.size() != instance.assignment.size()) return false;
  for (const auto& per_population : flows.flow) {
    if (per_population.size() != instance.populations.size()) return false;
    for (std::size_t i = 0; i < per_population.size(); ++i) {
      if (per_population[i].size() != instance.populations[i].paths.size()) return false;
    }
  }
  return true;
}

}  // namespace

double KktResidual::MaxComplementarity() const {
  double worst = 0.0;
  for (const KktEntry& entry : entries) worst = std::max(worst, entry.complementarity);
  return worst;
}

ControllerCostReport ControllerCost(const GameInstance& instance,
                                    const FlowProfile& flows, std::size_t r) {
  if (r >= instance.assignment.size()) {
    throw Error(ErrorCode::kUnknownId, "unknown controller index " + std::to_string(r));
  }
  RequireFeasible(instance, flows);
  const std::vector<double> costs = EdgeCosts(instance.network, flows.edge_loads);
  ControllerCostReport report;
  report.controller = r;
  report.id = instance.assignment.controllers[r];
  for (std::size_t i = 0; i < instance.populations.size(); ++i) {
    const auto& paths = instance.populations[i].paths;
    double cost = 0.0;
    for (std::size_t s = 0; s < paths.size(); ++s) {
      cost += flows.flow[r][i][s] * PathSum(paths[s], costs);
    }
    report.per_population.push_back(cost);
    report.cost += cost;
  }
  return report;
}

BestResponseResult BestResponse(const GameInstance& instance,
                                const std::vector<double>& others, std::size_t r,
                                double tol,
                                const std::vector<std::vector<double>>* warm,
                                long max_iters) {
  if (r >= instance.assignment.size()) {
    throw Error(ErrorCode::kUnknownId, "unknown controller index " + std::to_string(r));
  }
  if (others.size() != instance.network.edges.size()) {
    throw Error(ErrorCode::kInvalidArgument, "fixed loads must cover every edge");
  }
  for (double g : others) {
    if (!(g >= 0.0) || !std::isfinite(g)) {
      throw Error(ErrorCode::kInvalidArgument, "fixed loads must be finite and >= 0");
    }
  }
  BestResponseWork work = SolveBestResponse(instance, others, r, tol, warm, max_iters);
  if (!work.stats.converged) {
    throw Error(ErrorCode::kNotConverged,
                "best response did not converge (relative gap " +
                    std::to_string(work.stats.relative_gap) + ")");
  }
  BestResponseResult result;
  result.kkt = ComputeKkt(instance, others, r, work.flow);
  result.cost = OwnCost(instance.network, LoadsOf(instance, work.flow), others);
  result.flow = std::move(work.flow);
  result.stats = work.stats;
  return result;
}

NceResult SolveNce(const GameInstance& instance, const NceOptions& options,
                   const FlowProfile* warm) {
  RequireValid(instance);
  if (!(options.tol > 0.0) || !(options.flow_tol > 0.0) || options.max_rounds < 1) {
    throw Error(ErrorCode::kInvalidArgument,
                "tol and flow_tol must be > 0 and max_rounds >= 1");
  }
  const ControlAssignment& a = instance.assignment;
  const Network& net = instance.network;

  NceResult result;
  FlowProfile& flows = result.flows;
  if (warm != nullptr && SameShape(instance, *warm)) {
    flows = *warm;
  } else {
    flows = FlowProfile::Zero(instance);
    Rng rng(options.seed);
    for (std::size_t r = 0; r < a.size(); ++r) {
      for (std::size_t i = 0; i < instance.populations.size(); ++i) {
        const std::size_t n = instance.populations[i].paths.size();
        flows.flow[r][i] = options.seed == 0
                               ? std::vector<double>(n, a.shares[r][i] / n)
                               : rng.SimplexPoint(n, a.shares[r][i]);
      }
    }
  }
  RescaleRows(instance, flows);
  flows.RecomputeLoads(instance);
  result.potential_trace.push_back(PotentialOfLoads(net, flows.edge_loads));

  bool inner_ok = true;
  for (long round = 1; round <= options.max_rounds; ++round) {
    double max_improvement = 0.0;
    double max_change = 0.0;
    for (std::size_t r = 0; r < a.size(); ++r) {
      double controlled = 0.0;
      for (double share : a.shares[r]) controlled += share;
      if (controlled <= 0.0) continue;

      std::vector<double> own = flows.ControllerLoads(instance, r);
      std::vector<double> others(own.size());
      for (EdgeIndex e = 0; e < own.size(); ++e) {
        others[e] = std::max(0.0, flows.edge_loads[e] - own[e]);
      }
      const double before = OwnCost(net, own, others);
      BestResponseWork work = SolveBestResponse(instance, others, r, options.inner_tol,
                                                &flows.flow[r], options.inner_max_iters);
      inner_ok = inner_ok && work.stats.converged;
      const double after = OwnCost(net, LoadsOf(instance, work.flow), others);
      max_improvement = std::max(max_improvement, before - after);
      for (std::size_t i = 0; i < work.flow.size(); ++i) {
        for (std::size_t s = 0; s < work.flow[i].size(); ++s) {
          max_change = std::max(max_change, std::abs(work.flow[i][s] - flows.flow[r][i][s]));
        }
      }
      flows.flow[r] = std::move(work.flow);
      flows.RecomputeLoads(instance);
      result.potential_trace.push_back(PotentialOfLoads(net, flows.edge_loads));
    }
    result.rounds = round;
    result.last_improvement = max_improvement;
    result.last_flow_change = max_change;
    if (max_improvement < options.tol && max_change < options.flow_tol) {
      result.converged = inner_ok;
      break;
    }
  }

  flows.Truncate(instance, kFlowDisplayThreshold);
  result.social_cost = SocialCostOfLoads(net, flows.edge_loads);
  result.potential = PotentialOfLoads(net, flows.edge_loads);
  for (std::size_t r = 0; r < a.size(); ++r) {
    result.controller_costs.push_back(ControllerCost(instance, flows, r));
  }
  return result;
}

bool VerifyPotentialDescent(std::span<const double> trace, double slack) {
  for (std::size_t k = 1; k < trace.size(); ++k) {
    if (trace[k] - trace[k - 1] >= slack) return false;
  }
  return true;
}

}  // namespace netctl
