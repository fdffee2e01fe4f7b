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

#ifndef NETCTL_OS_CHOICE_HPP_
#define NETCTL_OS_CHOICE_HPP_

#include <cstddef>
#include <string>
#include <vector>

#include "netctl/control_game.hpp"
#include "netctl/game.hpp"

namespace netctl {

// y[i][r]: flow of population i that chose controller r.
struct OsShareProfile {
  std::vector<std::vector<double>> shares;
};

// Throws Error(kInfeasibleFlows) unless every population's row is
// nonnegative and sums to its demand.
void RequireFeasible(const GameInstance& instance, const OsShareProfile& y,
                     std::size_t num_controllers);

// The instance with controllers "1".."R" routing y.
GameInstance InducedGame(const GameInstance& instance, const OsShareProfile& y,
                         std::size_t num_controllers);

// Per-unit cost a vehicle of population i pays under each controller at the
// NCE `nce` of the induced game. Controllers without share in i report the
// cheapest path cost, which is what an infinitesimal controller's vehicles
// would pay.
std::vector<double> PassengerCost(const GameInstance& induced, const NceResult& nce,
                                  std::size_t i);
// Convenience overload that solves the induced NCE first.
std::vector<double> PassengerCost(const GameInstance& instance, const OsShareProfile& y,
                                  std::size_t num_controllers, std::size_t i,
                                  const NceOptions& options = {});

// Moves min(eta * d_i, donor share) of every population from its costliest
// controller to its cheapest one (lowest index on ties). `costs[i][r]` are
// the per-unit costs at y.
OsShareProfile OsBestResponseStep(const GameInstance& instance, const OsShareProfile& y,
                                  const std::vector<std::vector<double>>& costs,
                                  double eta);
// Convenience overload that solves the induced NCE for the costs.
OsShareProfile OsBestResponseStep(const GameInstance& instance, const OsShareProfile& y,
                                  std::size_t num_controllers, double eta,
                                  const NceOptions& options = {});

struct OsChoiceOptions {
  double eta = 0.05;
  double tol = 1e-6;
  long max_steps = 10000;
  NceOptions nce;
};

struct OsChoiceStep {
  OsShareProfile y;
  std::vector<std::vector<double>> per_unit_cost;  // [i][r]
  double social_cost = 0.0;
  double potential = 0.0;
  double step_size = 0.0;  // eta used to leave this profile (0 at the end)
};

struct OsChoiceTrace {
  std::vector<std::string> population_ids;
  std::vector<OsChoiceStep> steps;
  bool converged = false;
  double final_proportionality_deviation = 0.0;
  double final_cost_spread = 0.0;

  std::string ToCsv() const;
};

// Best-response dynamics of populations choosing controllers. A step that
// does not shrink the largest per-population cost spread is rejected and the
// step size halved. Stops when the spread or the deviation from
// proportional control drops below tol.
OsChoiceTrace SolveOsGame(const GameInstance& instance, std::size_t num_controllers,
                          const OsShareProfile& start, const OsChoiceOptions& options = {});

double ProportionalityDeviation(const GameInstance& instance, const OsShareProfile& y);

}  // namespace netctl

#endif  // NETCTL_OS_CHOICE_HPP_
