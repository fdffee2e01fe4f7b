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

#ifndef NETCTL_EQUILIBRIUM_HPP_
#define NETCTL_EQUILIBRIUM_HPP_

#include <cstdint>
#include <vector>

#include "netctl/block_solver.hpp"
#include "netctl/flow.hpp"
#include "netctl/game.hpp"

namespace netctl {

struct SolveOptions {
  // Relative duality gap at which the solve counts as converged.
  double tol = 1e-8;
  // Largest path-flow move allowed in the final iteration.
  double flow_tol = 1e-10;
  long max_iters = 100000;
  // 0 starts from the uniform split; anything else from a seeded random point.
  std::uint64_t seed = 0;
  FwStep step = FwStep::kPairwise;
};

struct EquilibriumResult {
  FlowProfile flows;
  double social_cost = 0.0;
  double potential = 0.0;
  // Cost of each known path of each information type, in the order of
  // EffectiveTypes(instance)[k].known_paths.
  std::vector<std::vector<double>> type_path_costs;
  // Flow of each type on each of its known paths, same layout. Empty when
  // the split among declared types is unknown (see EvaluateFlows).
  std::vector<std::vector<double>> type_flows;
  long iterations = 0;
  double relative_gap = 0.0;
  bool converged = false;
};

// The instance's information types, or one fully informed type per
// population when none are declared.
std::vector<InformationType> EffectiveTypes(const GameInstance& instance);

// Information-constrained user equilibrium: minimizes the Beckmann potential
// with every type restricted to its known paths. Controllers are ignored
// during the solve; reported flows split each population proportionally to
// the controllers' shares.
EquilibriumResult SolveUe(const GameInstance& instance,
                          const SolveOptions& options = {});

// Social optimum, computed as the user equilibrium under marginal costs and
// reported with the original costs.
EquilibriumResult SolveSo(const GameInstance& instance,
                          const SolveOptions& options = {});

// Social cost, potential and type path costs of a feasible profile. The
// solver statistics are left at their defaults; type flows are filled in
// only when the instance declares no information types.
EquilibriumResult EvaluateFlows(const GameInstance& instance, const FlowProfile& flows);

// Flows below this are reported as zero.
inline constexpr double kFlowDisplayThreshold = 1e-12;

}  // namespace netctl

#endif  // NETCTL_EQUILIBRIUM_HPP_
