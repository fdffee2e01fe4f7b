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

#ifndef NETCTL_LEARNING_HPP_
#define NETCTL_LEARNING_HPP_

#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "netctl/game.hpp"

namespace netctl {

struct LearnerConfig {
  // Grid points per path dimension of each controller's split simplex.
  int grid_points = 11;
  // Trailing window for the summary statistic.
  long window = 200;
};

// Exponential-weights learner over one controller's discretized splits.
struct LearnerState {
  std::vector<double> weights;  // probabilities, sum to 1
  double learning_rate = 0.0;   // rate used in the latest update
  long round = 0;
};

// A discretized split: flow[i][s] for the controller's populations.
struct GridAction {
  std::vector<std::vector<double>> flow;
  std::vector<double> edge_loads;
};

// Every split of controller r's shares on a simplex grid with
// grid_points - 1 divisions per population, in lexicographic order.
// Throws Error(kInvalidArgument) when the grid would be empty or too large.
std::vector<GridAction> ActionGrid(const GameInstance& instance, std::size_t r,
                                   int grid_points);

// Largest social cost over all feasible flows (attained at a vertex).
double WorstFeasibleSocialCost(const GameInstance& instance);

struct EpisodeRound {
  std::vector<std::size_t> actions;  // sampled grid index per controller
  std::vector<double> controller_cost;
  double social_cost = 0.0;
};

struct EpisodeLog {
  std::vector<std::string> controllers;
  std::vector<EpisodeRound> rounds;
  std::vector<LearnerState> learners;
  // Per controller: average realized cost minus the average cost of the best
  // fixed grid action in hindsight, divided by worst_cost.
  std::vector<double> normalized_regret;
  std::vector<std::size_t> num_actions;
  double so_cost = 0.0;
  double worst_cost = 0.0;
  long window = 0;
  // Mean social cost over the last `window` rounds.
  double trailing_mean = 0.0;

  std::string ToCsv() const;
};

// Repeated network control game: each round every controller samples a grid
// split from its weights, observes the realized costs of all its grid splits
// against the others' realized loads, and applies the multiplicative update
// w_a <- w_a exp(-eta_t loss_a) with eta_t = sqrt(ln K / t) and losses
// normalized by the worst feasible social cost.
EpisodeLog RunEpisode(const GameInstance& instance, long rounds,
                      const LearnerConfig& config = {}, std::uint64_t seed = 1);

// (round, mean social cost over the trailing window ending at that round),
// rounds numbered from 1. Throws if window < 1 or window > rounds.
std::vector<std::pair<long, double>> LearningCurve(const EpisodeLog& log, long window);

}  // namespace netctl

#endif  // NETCTL_LEARNING_HPP_
