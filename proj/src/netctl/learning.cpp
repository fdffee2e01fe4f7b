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

#include "netctl/learning.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "netctl/analytics.hpp"
#include "netctl/equilibrium.hpp"
#include "netctl/error.hpp"
#include "netctl/flow.hpp"
#include "netctl/rng.hpp"

namespace netctl {
namespace {

constexpr std::size_t kMaxActions = 200000;
constexpr std::size_t kMaxVertices = 1000000;

// All ways to write `total` as an ordered sum of `parts` nonnegative ints.
void Compositions(int total, std::size_t parts, std::vector<int>& current,
                  std::vector<std::vector<int>>& out) {
  if (current.size() + 1 == parts) {
    current.push_back(total);
    out.push_back(current);
    current.pop_back();
    return;
  }
  for (int k = total; k >= 0; --k) {
    current.push_back(k);
    Compositions(total - k, parts, current, out);
    current.pop_back();
  }
}

double OwnCost(const Network& net, const std::vector<double>& own,
               const std::vector<double>& others) {
  double total = 0.0;
  for (EdgeIndex e = 0; e < own.size(); ++e) {
    if (own[e] <= 0.0) continue;
    total += own[e] * net.edges[e].cost.Evaluate(own[e] + std::max(0.0, others[e]));
  }
  return total;
}

}  // namespace

std::vector<GridAction> ActionGrid(const GameInstance& instance, std::size_t r,
                                   int grid_points) {
  if (grid_points < 2) {
    throw Error(ErrorCode::kInvalidArgument,
                "empty action grid: need at least 2 grid points per path dimension");
  }
  if (r >= instance.assignment.shares.size()) {
    throw Error(ErrorCode::kInvalidArgument, "controller index out of range");
  }
  const int divisions = grid_points - 1;
  std::vector<GridAction> actions(1);
  actions[0].flow.resize(instance.populations.size());
  actions[0].edge_loads.assign(instance.network.edges.size(), 0.0);
  for (std::size_t i = 0; i < instance.populations.size(); ++i) {
    const Population& pop = instance.populations[i];
    const double share = instance.assignment.shares[r][i];
    if (share <= 0.0) {
      for (GridAction& a : actions) a.flow[i].assign(pop.paths.size(), 0.0);
      continue;
    }
    std::vector<std::vector<int>> splits;
    std::vector<int> scratch;
    Compositions(divisions, pop.paths.size(), scratch, splits);
    if (actions.size() * splits.size() > kMaxActions) {
      throw Error(ErrorCode::kInvalidArgument, "action grid too large");
    }
    std::vector<GridAction> expanded;
    expanded.reserve(actions.size() * splits.size());
    for (const GridAction& base : actions) {
      for (const std::vector<int>& split : splits) {
        GridAction a = base;
        a.flow[i].resize(pop.paths.size());
        for (std::size_t s = 0; s < pop.paths.size(); ++s) {
          const double x = share * split[s] / divisions;
          a.flow[i][s] = x;
          if (x == 0.0) continue;
          for (EdgeIndex e : pop.paths[s]) a.edge_loads[e] += x;
        }
        expanded.push_back(std::move(a));
      }
    }
    actions = std::move(expanded);
  }
  return actions;
}

double WorstFeasibleSocialCost(const GameInstance& instance) {
  std::size_t vertices = 1;
  for (const Population& pop : instance.populations) {
    vertices *= pop.paths.size();
    if (vertices > kMaxVertices) {
      throw Error(ErrorCode::kInvalidArgument, "too many vertices to enumerate");
    }
  }
  double worst = 0.0;
  std::vector<std::size_t> choice(instance.populations.size(), 0);
  for (std::size_t v = 0; v < vertices; ++v) {
    std::size_t code = v;
    std::vector<double> loads(instance.network.edges.size(), 0.0);
    for (std::size_t i = 0; i < instance.populations.size(); ++i) {
      const Population& pop = instance.populations[i];
      choice[i] = code % pop.paths.size();
      code /= pop.paths.size();
      for (EdgeIndex e : pop.paths[choice[i]]) loads[e] += pop.demand;
    }
    worst = std::max(worst, SocialCostOfLoads(instance.network, loads));
  }
  return worst;
}

EpisodeLog RunEpisode(const GameInstance& instance, long rounds,
                      const LearnerConfig& config, std::uint64_t seed) {
  RequireValid(instance);
  if (rounds < 1) throw Error(ErrorCode::kInvalidArgument, "rounds must be >= 1");
  if (config.window < 1) throw Error(ErrorCode::kInvalidArgument, "window must be >= 1");

  const Network& net = instance.network;
  const std::size_t num_controllers = instance.assignment.size();
  EpisodeLog log;
  log.controllers = instance.assignment.controllers;
  log.so_cost = SolveSo(instance).social_cost;
  log.worst_cost = WorstFeasibleSocialCost(instance);
  log.window = config.window;
  const double scale = log.worst_cost > 0.0 ? log.worst_cost : 1.0;

  std::vector<std::vector<GridAction>> grids;
  std::vector<std::vector<double>> hindsight(num_controllers);
  std::vector<double> realized(num_controllers, 0.0);
  for (std::size_t r = 0; r < num_controllers; ++r) {
    grids.push_back(ActionGrid(instance, r, config.grid_points));
    const std::size_t k = grids.back().size();
    log.num_actions.push_back(k);
    LearnerState state;
    state.weights.assign(k, 1.0 / static_cast<double>(k));
    log.learners.push_back(std::move(state));
    hindsight[r].assign(k, 0.0);
  }

  Rng rng(seed);
  std::vector<double> loads(net.edges.size());
  std::vector<double> others(net.edges.size());
  std::vector<double> losses;
  log.rounds.reserve(static_cast<std::size_t>(rounds));
  for (long t = 1; t <= rounds; ++t) {
    EpisodeRound round;
    for (std::size_t r = 0; r < num_controllers; ++r) {
      round.actions.push_back(rng.Categorical(log.learners[r].weights));
    }
    std::fill(loads.begin(), loads.end(), 0.0);
    for (std::size_t r = 0; r < num_controllers; ++r) {
      const auto& own = grids[r][round.actions[r]].edge_loads;
      for (EdgeIndex e = 0; e < loads.size(); ++e) loads[e] += own[e];
    }
    round.social_cost = SocialCostOfLoads(net, loads);

    for (std::size_t r = 0; r < num_controllers; ++r) {
      const auto& own = grids[r][round.actions[r]].edge_loads;
      for (EdgeIndex e = 0; e < loads.size(); ++e) {
        others[e] = std::max(0.0, loads[e] - own[e]);
      }
      const double cost = OwnCost(net, own, others);
      round.controller_cost.push_back(cost);
      realized[r] += cost;

      LearnerState& learner = log.learners[r];
      const std::vector<GridAction>& grid = grids[r];
      losses.resize(grid.size());
      double min_loss = std::numeric_limits<double>::infinity();
      for (std::size_t a = 0; a < grid.size(); ++a) {
        const double alt = OwnCost(net, grid[a].edge_loads, others);
        hindsight[r][a] += alt;
        losses[a] = alt / scale;
        min_loss = std::min(min_loss, losses[a]);
      }
      learner.round = t;
      learner.learning_rate =
          std::sqrt(std::log(static_cast<double>(grid.size())) / static_cast<double>(t));
      double total = 0.0;
      for (std::size_t a = 0; a < grid.size(); ++a) {
        learner.weights[a] *= std::exp(-learner.learning_rate * (losses[a] - min_loss));
        total += learner.weights[a];
      }
      for (double& w : learner.weights) w /= total;
    }
    log.rounds.push_back(std::move(round));
  }

  for (std::size_t r = 0; r < num_controllers; ++r) {
    const double best = *std::min_element(hindsight[r].begin(), hindsight[r].end());
    log.normalized_regret.push_back((realized[r] - best) /
                                    (static_cast<double>(rounds) * scale));
  }
  const long window = std::min(config.window, rounds);
  log.trailing_mean = LearningCurve(log, window).back().second;
  return log;
}

std::vector<std::pair<long, double>> LearningCurve(const EpisodeLog& log, long window) {
  const long rounds = static_cast<long>(log.rounds.size());
  if (window < 1 || window > rounds) {
    throw Error(ErrorCode::kInvalidArgument, "window must lie in [1, rounds]");
  }
  std::vector<std::pair<long, double>> curve;
  for (long t = 0; t < rounds; ++t) {
    const long first = std::max(0L, t + 1 - window);
    double sum = 0.0;
    for (long k = first; k <= t; ++k) sum += log.rounds[k].social_cost;
    curve.emplace_back(t + 1, sum / static_cast<double>(t + 1 - first));
  }
  return curve;
}

std::string EpisodeLog::ToCsv() const {
  std::ostringstream out;
  out << "round,controller,cost,social_cost\n";
  for (std::size_t t = 0; t < rounds.size(); ++t) {
    for (std::size_t r = 0; r < controllers.size(); ++r) {
      out << (t + 1) << "," << controllers[r] << ","
          << FormatDouble(rounds[t].controller_cost[r]) << ","
          << FormatDouble(rounds[t].social_cost) << "\n";
    }
  }
  return out.str();
}

}  // namespace netctl
