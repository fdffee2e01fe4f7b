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

#include "netctl/os_choice.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "netctl/analytics.hpp"
#include "netctl/error.hpp"
#include "netctl/paths.hpp"

namespace netctl {
namespace {

constexpr double kShareTol = 1e-9;
constexpr double kMinStep = 1e-15;
// Per-unit costs closer than this (relative) count as tied.
constexpr double kCostTieTol = 1e-9;

std::vector<std::string> ControllerIds(std::size_t num_controllers) {
  std::vector<std::string> ids;
  for (std::size_t r = 0; r < num_controllers; ++r) ids.push_back(std::to_string(r + 1));
  return ids;
}

struct Evaluation {
  NceResult nce;
  std::vector<std::vector<double>> costs;
  double spread = 0.0;
};

Evaluation Evaluate(const GameInstance& instance, const OsShareProfile& y,
                    std::size_t num_controllers, const NceOptions& options,
                    const FlowProfile* warm) {
  const GameInstance induced = InducedGame(instance, y, num_controllers);
  Evaluation eval;
  eval.nce = SolveNce(induced, options, warm);
  for (std::size_t i = 0; i < instance.populations.size(); ++i) {
    eval.costs.push_back(PassengerCost(induced, eval.nce, i));
    const auto [lo, hi] = std::minmax_element(eval.costs.back().begin(),
                                              eval.costs.back().end());
    eval.spread = std::max(eval.spread, *hi - *lo);
  }
  return eval;
}

}  // namespace

void RequireFeasible(const GameInstance& instance, const OsShareProfile& y,
                     std::size_t num_controllers) {
  const auto fail = [](const std::string& msg) {
    throw Error(ErrorCode::kInfeasibleFlows, "infeasible operating-system shares: " + msg);
  };
  if (num_controllers == 0) fail("no controllers");
  if (y.shares.size() != instance.populations.size()) fail("one row per population required");
  for (std::size_t i = 0; i < y.shares.size(); ++i) {
    if (y.shares[i].size() != num_controllers) fail("one share per controller required");
    double sum = 0.0;
    for (double share : y.shares[i]) {
      if (!(share >= 0.0) || !std::isfinite(share)) fail("shares must be >= 0");
      sum += share;
    }
    const double demand = instance.populations[i].demand;
    if (std::abs(sum - demand) > kShareTol * std::max(1.0, demand)) {
      fail("shares of population '" + instance.populations[i].id +
           "' do not sum to its demand");
    }
  }
}

GameInstance InducedGame(const GameInstance& instance, const OsShareProfile& y,
                         std::size_t num_controllers) {
  RequireFeasible(instance, y, num_controllers);
  std::vector<std::vector<double>> shares(num_controllers,
                                          std::vector<double>(instance.populations.size()));
  for (std::size_t i = 0; i < instance.populations.size(); ++i) {
    for (std::size_t r = 0; r < num_controllers; ++r) shares[r][i] = y.shares[i][r];
  }
  return WithShares(instance, ControllerIds(num_controllers), std::move(shares));
}

std::vector<double> PassengerCost(const GameInstance& induced, const NceResult& nce,
                                  std::size_t i) {
  if (i >= induced.populations.size()) {
    throw Error(ErrorCode::kUnknownId, "unknown population index " + std::to_string(i));
  }
  const auto& paths = induced.populations[i].paths;
  const std::vector<double> edge_costs = EdgeCosts(induced.network, nce.flows.edge_loads);
  std::vector<double> path_costs;
  for (const Path& path : paths) path_costs.push_back(PathSum(path, edge_costs));
  const double cheapest = *std::min_element(path_costs.begin(), path_costs.end());

  std::vector<double> per_unit;
  for (std::size_t r = 0; r < induced.assignment.size(); ++r) {
    const double share = induced.assignment.shares[r][i];
    if (share <= 0.0) {
      per_unit.push_back(cheapest);
      continue;
    }
    double total = 0.0;
    for (std::size_t s = 0; s < paths.size(); ++s) {
      total += nce.flows.flow[r][i][s] * path_costs[s];
    }
    per_unit.push_back(total / share);
  }
  return per_unit;
}

std::vector<double> PassengerCost(const GameInstance& instance, const OsShareProfile& y,
                                  std::size_t num_controllers, std::size_t i,
                                  const NceOptions& options) {
  const GameInstance induced = InducedGame(instance, y, num_controllers);
  return PassengerCost(induced, SolveNce(induced, options), i);
}

OsShareProfile OsBestResponseStep(const GameInstance& instance, const OsShareProfile& y,
                                  const std::vector<std::vector<double>>& costs,
                                  double eta) {
  if (!(eta > 0.0) || eta > 1.0) {
    throw Error(ErrorCode::kInvalidArgument, "step size must lie in (0, 1]");
  }
  const std::size_t num_controllers = y.shares.empty() ? 0 : y.shares.front().size();
  RequireFeasible(instance, y, num_controllers);
  OsShareProfile next = y;
  for (std::size_t i = 0; i < y.shares.size(); ++i) {
    const auto& c = costs.at(i);
    std::size_t cheapest = 0;
    std::size_t costliest = Network::npos;
    for (std::size_t r = 0; r < num_controllers; ++r) {
      if (c[r] < c[cheapest]) cheapest = r;
      if (y.shares[i][r] > 0.0 && (costliest == Network::npos || c[r] > c[costliest])) {
        costliest = r;
      }
    }
    if (costliest == Network::npos ||
        !(c[costliest] - c[cheapest] > kCostTieTol * std::max(1.0, std::abs(c[cheapest])))) {
      continue;
    }
    const double moved = std::min(eta * instance.populations[i].demand,
                                  y.shares[i][costliest]);
    next.shares[i][cheapest] += moved;
    next.shares[i][costliest] =
        moved >= y.shares[i][costliest] ? 0.0 : y.shares[i][costliest] - moved;
  }
  return next;
}

OsShareProfile OsBestResponseStep(const GameInstance& instance, const OsShareProfile& y,
                                  std::size_t num_controllers, double eta,
                                  const NceOptions& options) {
  const GameInstance induced = InducedGame(instance, y, num_controllers);
  const NceResult nce = SolveNce(induced, options);
  std::vector<std::vector<double>> costs;
  for (std::size_t i = 0; i < instance.populations.size(); ++i) {
    costs.push_back(PassengerCost(induced, nce, i));
  }
  return OsBestResponseStep(instance, y, costs, eta);
}

double ProportionalityDeviation(const GameInstance& instance, const OsShareProfile& y) {
  double worst = 0.0;
  for (std::size_t i = 0; i < y.shares.size(); ++i) {
    const double target = 1.0 / static_cast<double>(y.shares[i].size());
    for (double share : y.shares[i]) {
      worst = std::max(worst, std::abs(share / instance.populations[i].demand - target));
    }
  }
  return worst;
}

OsChoiceTrace SolveOsGame(const GameInstance& instance, std::size_t num_controllers,
                          const OsShareProfile& start, const OsChoiceOptions& options) {
  if (!(options.eta > 0.0) || options.eta > 1.0 || !(options.tol > 0.0) ||
      options.max_steps < 0) {
    throw Error(ErrorCode::kInvalidArgument,
                "eta must lie in (0, 1], tol > 0 and max_steps >= 0");
  }
  RequireFeasible(instance, start, num_controllers);

  OsChoiceTrace trace;
  for (const Population& pop : instance.populations) trace.population_ids.push_back(pop.id);
  OsShareProfile y = start;
  Evaluation current = Evaluate(instance, y, num_controllers, options.nce, nullptr);
  const auto record = [&](const OsShareProfile& profile, const Evaluation& eval) {
    OsChoiceStep step;
    step.y = profile;
    step.per_unit_cost = eval.costs;
    step.social_cost = eval.nce.social_cost;
    step.potential = eval.nce.potential;
    trace.steps.push_back(std::move(step));
  };
  record(y, current);

  double eta = options.eta;
  for (long step = 0;; ++step) {
    if (current.spread < options.tol ||
        ProportionalityDeviation(instance, y) < options.tol) {
      trace.converged = true;
      break;
    }
    if (step >= options.max_steps || eta < kMinStep) break;
    const OsShareProfile candidate = OsBestResponseStep(instance, y, current.costs, eta);
    Evaluation next =
        Evaluate(instance, candidate, num_controllers, options.nce, &current.nce.flows);
    if (next.spread < current.spread) {
      trace.steps.back().step_size = eta;
      y = candidate;
      current = std::move(next);
      record(y, current);
    } else {
      eta *= 0.5;
    }
  }
  trace.final_proportionality_deviation = ProportionalityDeviation(instance, y);
  trace.final_cost_spread = current.spread;
  return trace;
}

std::string OsChoiceTrace::ToCsv() const {
  std::ostringstream out;
  out << "step,population,controller,share,per_unit_cost,social_cost\n";
  for (std::size_t k = 0; k < steps.size(); ++k) {
    const OsChoiceStep& step = steps[k];
    for (std::size_t i = 0; i < step.y.shares.size(); ++i) {
      for (std::size_t r = 0; r < step.y.shares[i].size(); ++r) {
        out << k << "," << population_ids.at(i) << "," << (r + 1) << "," << FormatDouble(step.y.shares[i][r])
            << "," << FormatDouble(step.per_unit_cost[i][r]) << ","
            << FormatDouble(step.social_cost) << "\n";
      }
    }
  }
  return out.str();
}

}  // namespace netctl
