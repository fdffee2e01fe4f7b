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

#ifndef NETCTL_BLOCK_SOLVER_HPP_
#define NETCTL_BLOCK_SOLVER_HPP_

#include <cstddef>
#include <vector>

#include "netctl/game.hpp"

namespace netctl {

// Per-edge objective minimized over a product of path simplices.
//   kPotential: integral_g^{x+g} c, whose gradient is the cost c(x + g).
//   kOwnCost:   x c(x + g), whose gradient is the self-marginal cost
//               c(x + g) + x c'(x + g).
// Here x is the load produced by the blocks and g a fixed background load.
enum class EdgeObjective { kPotential, kOwnCost };

enum class FwStep {
  // Shift flow from the costliest used path to the cheapest path of each
  // block in turn, with an exact line search.
  kPairwise,
  // Move every block toward its all-or-nothing cheapest-path assignment.
  kClassic,
};

// One simplex: `demand` units spread over `paths`.
struct PathBlock {
  double demand = 0.0;
  std::vector<const Path*> paths;
  std::vector<double> flow;
};

struct BlockSolverOptions {
  // Converged once the relative gap is <= tol and no path flow moved by more
  // than flow_tol in the last step.
  double tol = 1e-8;
  double flow_tol = 1e-10;
  long max_iters = 100000;
  FwStep step = FwStep::kPairwise;
};

struct BlockSolverStats {
  long iterations = 0;
  double relative_gap = 0.0;
  bool converged = false;
};

// Conditional-gradient minimizer. The linear subproblem picks each block's
// cheapest path under the current gradient (lowest index on ties); step
// lengths come from an exact 1-D line search (Newton, bisection fallback).
class BlockSolver {
 public:
  BlockSolver(const Network& network, EdgeObjective objective,
              std::vector<double> fixed_loads);

  BlockSolverStats Solve(std::vector<PathBlock>& blocks,
                         const BlockSolverOptions& options) const;

  double EdgeValue(EdgeIndex e, double x) const;
  double EdgeGradient(EdgeIndex e, double x) const;
  double EdgeCurvature(EdgeIndex e, double x) const;

  std::vector<double> Loads(const std::vector<PathBlock>& blocks) const;
  double Objective(const std::vector<double>& loads) const;
  // Sum_b [Sum_s x_s g_s - d_b min_s g_s] and its normalizer Sum_b d_b min_s g_s.
  std::pair<double, double> DualityGap(const std::vector<PathBlock>& blocks,
                                       const std::vector<double>& loads) const;

 private:
  // Both return the largest path-flow change, 0 when nothing moved.
  double PairwiseSweep(std::vector<PathBlock>& blocks,
                       std::vector<double>& loads) const;
  double ClassicStep(std::vector<PathBlock>& blocks,
                   std::vector<double>& loads) const;
  double PathGradient(const Path& path, const std::vector<double>& loads) const;

  const Network& network_;
  EdgeObjective objective_;
  std::vector<double> fixed_;
};

// Minimizer of a convex function on [0, upper] given its increasing
// derivative and (optionally unusable) second derivative.
template <typename Deriv, typename Curv>
double ConvexLineSearch(Deriv&& derivative, Curv&& curvature, double upper);

}  // namespace netctl

#include "netctl/block_solver_inl.hpp"

#endif  // NETCTL_BLOCK_SOLVER_HPP_
