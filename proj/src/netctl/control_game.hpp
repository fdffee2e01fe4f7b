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

#ifndef NETCTL_CONTROL_GAME_HPP_
#define NETCTL_CONTROL_GAME_HPP_

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "netctl/block_solver.hpp"
#include "netctl/flow.hpp"
#include "netctl/game.hpp"

namespace netctl {

// C_r: what controller r's vehicles pay in total at the joint edge loads.
struct ControllerCostReport {
  std::size_t controller = 0;
  std::string id;
  double cost = 0.0;
  std::vector<double> per_population;
};

// First-order optimality data of a best response on one path: the simplex
// multiplier lambda = g_s - min_t g_t (g = self-marginal path cost), the
// stationarity residual (lambda on used paths) and lambda * flow.
struct KktEntry {
  std::size_t population = 0;
  std::size_t path = 0;
  double flow = 0.0;
  double multiplier = 0.0;
  double stationarity = 0.0;
  double complementarity = 0.0;
};

struct KktResidual {
  std::vector<KktEntry> entries;
  double MaxComplementarity() const;
};

struct BestResponseResult {
  // flow[i][s] for controller r; all-zero rows outside its support.
  std::vector<std::vector<double>> flow;
  KktResidual kkt;
  double cost = 0.0;
  BlockSolverStats stats;
};

ControllerCostReport ControllerCost(const GameInstance& instance,
                                    const FlowProfile& flows, std::size_t r);

// Controller r's cost-minimizing split of its demand when every other
// controller contributes the fixed edge loads `others`. Starts from `warm`
// (flow[i][s]) when given, else from the uniform split. Throws
// Error(kNotConverged) if the relative gap does not reach tol.
BestResponseResult BestResponse(const GameInstance& instance,
                                const std::vector<double>& others, std::size_t r,
                                double tol,
                                const std::vector<std::vector<double>>* warm = nullptr,
                                long max_iters = 100000);

struct NceOptions {
  // Largest per-controller cost improvement tolerated in a final round.
  double tol = 1e-9;
  // Largest path-flow change tolerated in a final round.
  double flow_tol = 1e-10;
  long max_rounds = 10000;
  // 0: uniform start; otherwise a seeded random split per (r, i).
  std::uint64_t seed = 0;
  double inner_tol = 1e-13;
  long inner_max_iters = 100000;
};

struct NceResult {
  FlowProfile flows;
  std::vector<ControllerCostReport> controller_costs;
  double social_cost = 0.0;
  double potential = 0.0;
  long rounds = 0;
  // Beckmann potential at the start and after every best-response step.
  std::vector<double> potential_trace;
  double last_improvement = 0.0;
  double last_flow_change = 0.0;
  bool converged = false;
};

// Nash equilibrium of the network control game by round-robin best
// responses in controller order. `warm` (any feasible or infeasible profile
// of matching shape) seeds the start after rescaling each row to its share.
NceResult SolveNce(const GameInstance& instance, const NceOptions& options = {},
                   const FlowProfile* warm = nullptr);

// True iff no consecutive step raises the trace by `slack` or more.
bool VerifyPotentialDescent(std::span<const double> trace, double slack = 1e-9);

}  // namespace netctl

#endif  // NETCTL_CONTROL_GAME_HPP_
