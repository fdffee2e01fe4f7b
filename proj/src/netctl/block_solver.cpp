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

#include "netctl/block_solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace netctl {
namespace {

constexpr long kLoadRefreshPeriod = 64;
constexpr double kStallGap = 1e-10;

std::size_t CheapestPath(const std::vector<double>& gradients) {
  std::size_t best = 0;
  for (std::size_t s = 1; s < gradients.size(); ++s) {
    if (gradients[s] < gradients[best]) best = s;
  }
  return best;
}

}  // namespace

BlockSolver::BlockSolver(const Network& network, EdgeObjective objective,
                         std::vector<double> fixed_loads)
    : network_(network), objective_(objective), fixed_(std::move(fixed_loads)) {
  if (fixed_.empty()) fixed_.assign(network_.edges.size(), 0.0);
  for (double& g : fixed_) g = std::max(0.0, g);
}

double BlockSolver::EdgeValue(EdgeIndex e, double x) const {
  const CostPolynomial& c = network_.edges[e].cost;
  const double g = fixed_[e];
  x = std::max(0.0, x);
  if (objective_ == EdgeObjective::kPotential) {
    return c.Integral(x + g) - c.Integral(g);
  }
  return x == 0.0 ? 0.0 : x * c.Evaluate(x + g);
}

double BlockSolver::EdgeGradient(EdgeIndex e, double x) const {
  const CostPolynomial& c = network_.edges[e].cost;
  const double g = fixed_[e];
  x = std::max(0.0, x);
  if (objective_ == EdgeObjective::kPotential) return c.Evaluate(x + g);
  return c.Evaluate(x + g) + c.ScaledDerivative(x, g);
}

double BlockSolver::EdgeCurvature(EdgeIndex e, double x) const {
  const CostPolynomial& c = network_.edges[e].cost;
  const double g = fixed_[e];
  x = std::max(0.0, x);
  if (objective_ == EdgeObjective::kPotential) return c.Derivative(x + g);
  return 2.0 * c.Derivative(x + g) + c.ScaledSecondDerivative(x, g);
}

double BlockSolver::PathGradient(const Path& path,
                                 const std::vector<double>& loads) const {
  double sum = 0.0;
  for (EdgeIndex e : path) sum += EdgeGradient(e, loads[e]);
  return sum;
}

std::vector<double> BlockSolver::Loads(const std::vector<PathBlock>& blocks) const {
  std::vector<double> loads(network_.edges.size(), 0.0);
  for (const PathBlock& block : blocks) {
    for (std::size_t s = 0; s < block.paths.size(); ++s) {
      if (block.flow[s] == 0.0) continue;
      for (EdgeIndex e : *block.paths[s]) loads[e] += block.flow[s];
    }
  }
  return loads;
}

double BlockSolver::Objective(const std::vector<double>& loads) const {
  double total = 0.0;
  for (EdgeIndex e = 0; e < loads.size(); ++e) total += EdgeValue(e, loads[e]);
  return total;
}

std::pair<double, double> BlockSolver::DualityGap(
    const std::vector<PathBlock>& blocks, const std::vector<double>& loads) const {
  double gap = 0.0;
  double scale = 0.0;
  for (const PathBlock& block : blocks) {
    double cheapest = std::numeric_limits<double>::infinity();
    double used = 0.0;
    for (std::size_t s = 0; s < block.paths.size(); ++s) {
      const double grad = PathGradient(*block.paths[s], loads);
      cheapest = std::min(cheapest, grad);
      used += block.flow[s] * grad;
    }
    gap += std::max(0.0, used - block.demand * cheapest);
    scale += block.demand * cheapest;
  }
  return {gap, scale};
}

double BlockSolver::PairwiseSweep(std::vector<PathBlock>& blocks,
                                  std::vector<double>& loads) const {
  double moved = 0.0;
  std::vector<double> grads;
  std::vector<EdgeIndex> gain;
  std::vector<EdgeIndex> loss;
  for (PathBlock& block : blocks) {
    if (block.paths.size() < 2) continue;
    grads.resize(block.paths.size());
    for (std::size_t s = 0; s < block.paths.size(); ++s) {
      grads[s] = PathGradient(*block.paths[s], loads);
    }
    const std::size_t best = CheapestPath(grads);
    std::size_t worst = best;
    for (std::size_t s = 0; s < block.paths.size(); ++s) {
      if (block.flow[s] > 0.0 && grads[s] > grads[worst]) worst = s;
    }
    if (worst == best) continue;

    const Path& to = *block.paths[best];
    const Path& from = *block.paths[worst];
    gain.clear();
    loss.clear();
    for (EdgeIndex e : to) {
      if (std::find(from.begin(), from.end(), e) == from.end()) gain.push_back(e);
    }
    for (EdgeIndex e : from) {
      if (std::find(to.begin(), to.end(), e) == to.end()) loss.push_back(e);
    }
    const auto derivative = [&](double delta) {
      double d = 0.0;
      for (EdgeIndex e : gain) d += EdgeGradient(e, loads[e] + delta);
      for (EdgeIndex e : loss) d -= EdgeGradient(e, loads[e] - delta);
      return d;
    };
    const auto curvature = [&](double delta) {
      double h = 0.0;
      for (EdgeIndex e : gain) h += EdgeCurvature(e, loads[e] + delta);
      for (EdgeIndex e : loss) h += EdgeCurvature(e, loads[e] - delta);
      return h;
    };
    const double available = block.flow[worst];
    const double delta = ConvexLineSearch(derivative, curvature, available);
    if (delta <= 0.0) continue;
    moved = std::max(moved, delta);
    block.flow[best] += delta;
    block.flow[worst] = delta >= available ? 0.0 : block.flow[worst] - delta;
    for (EdgeIndex e : gain) loads[e] += delta;
    for (EdgeIndex e : loss) loads[e] = std::max(0.0, loads[e] - delta);
  }
  return moved;
}

double BlockSolver::ClassicStep(std::vector<PathBlock>& blocks,
                                std::vector<double>& loads) const {
  std::vector<double> target(loads.size(), 0.0);
  std::vector<std::size_t> chosen(blocks.size());
  std::vector<double> grads;
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    const PathBlock& block = blocks[b];
    grads.resize(block.paths.size());
    for (std::size_t s = 0; s < block.paths.size(); ++s) {
      grads[s] = PathGradient(*block.paths[s], loads);
    }
    chosen[b] = CheapestPath(grads);
    for (EdgeIndex e : *block.paths[chosen[b]]) target[e] += block.demand;
  }
  std::vector<double> direction(loads.size());
  for (std::size_t e = 0; e < loads.size(); ++e) direction[e] = target[e] - loads[e];

  const auto derivative = [&](double t) {
    double d = 0.0;
    for (EdgeIndex e = 0; e < loads.size(); ++e) {
      if (direction[e] != 0.0) {
        d += EdgeGradient(e, loads[e] + t * direction[e]) * direction[e];
      }
    }
    return d;
  };
  const auto curvature = [&](double t) {
    double h = 0.0;
    for (EdgeIndex e = 0; e < loads.size(); ++e) {
      if (direction[e] != 0.0) {
        h += EdgeCurvature(e, loads[e] + t * direction[e]) * direction[e] *
             direction[e];
      }
    }
    return h;
  };
  const double t = ConvexLineSearch(derivative, curvature, 1.0);
  if (t <= 0.0) return 0.0;
  double moved = 0.0;
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    PathBlock& block = blocks[b];
    for (std::size_t s = 0; s < block.paths.size(); ++s) {
      const double aim = s == chosen[b] ? block.demand : 0.0;
      const double next = t >= 1.0 ? aim : block.flow[s] + t * (aim - block.flow[s]);
      moved = std::max(moved, std::abs(next - block.flow[s]));
      block.flow[s] = next;
    }
  }
  loads = Loads(blocks);
  return moved;
}

BlockSolverStats BlockSolver::Solve(std::vector<PathBlock>& blocks,
                                    const BlockSolverOptions& options) const {
  BlockSolverStats stats;
  std::vector<double> loads = Loads(blocks);
  double moved = std::numeric_limits<double>::infinity();
  for (long iter = 0;; ++iter) {
    const auto [gap, scale] = DualityGap(blocks, loads);
    stats.relative_gap = scale > 0.0 ? gap / scale : gap;
    stats.iterations = iter;
    if (stats.relative_gap <= options.tol && moved <= options.flow_tol) {
      stats.converged = true;
      break;
    }
    if (iter >= options.max_iters) break;
    moved = options.step == FwStep::kPairwise ? PairwiseSweep(blocks, loads)
                                              : ClassicStep(blocks, loads);
    if (moved == 0.0) {
      // No improving step is representable in floating point.
      stats.converged = stats.relative_gap <= std::max(options.tol, kStallGap);
      break;
    }
    if ((iter + 1) % kLoadRefreshPeriod == 0) loads = Loads(blocks);
  }
  return stats;
}

}  // namespace netctl
