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

#ifndef NETCTL_GAME_HPP_
#define NETCTL_GAME_HPP_

#include <cstddef>
#include <string>
#include <vector>

#include "netctl/cost.hpp"

namespace netctl {

using NodeIndex = std::size_t;
using EdgeIndex = std::size_t;

struct Edge {
  std::string id;
  NodeIndex tail = 0;
  NodeIndex head = 0;
  CostPolynomial cost;
};

struct Network {
  std::vector<std::string> nodes;
  std::vector<Edge> edges;

  // Index lookups; npos when absent.
  std::size_t FindNode(const std::string& id) const;
  std::size_t FindEdge(const std::string& id) const;

  static constexpr std::size_t npos = static_cast<std::size_t>(-1);
};

// Ordered edge sequence from a population's origin to its destination.
using Path = std::vector<EdgeIndex>;

struct Population {
  std::string id;
  NodeIndex origin = 0;
  NodeIndex destination = 0;
  double demand = 0.0;
  std::vector<Path> paths;
};

// Players of one population who only know the listed paths
// (indices into that population's path list).
struct InformationType {
  std::string id;
  std::size_t population = 0;
  std::vector<std::size_t> known_paths;
  double demand = 0.0;
};

// shares[r][i] is the flow of population i routed by controller r.
struct ControlAssignment {
  std::vector<std::string> controllers;
  std::vector<std::vector<double>> shares;

  std::size_t size() const { return controllers.size(); }
  std::size_t FindController(const std::string& id) const;
  // True when controller r routes any of population i.
  bool Controls(std::size_t r, std::size_t i) const {
    return shares[r][i] > 0.0;
  }
};

struct GameInstance {
  Network network;
  std::vector<Population> populations;
  ControlAssignment assignment;
  // Empty means every population is a single fully informed type.
  std::vector<InformationType> information_types;

  double TotalDemand() const;
};

struct Violation {
  std::string invariant;
  std::string location;
  std::string message;
};

struct ValidationReport {
  std::vector<Violation> violations;

  bool ok() const { return violations.empty(); }
  std::string ToString() const;
};

ValidationReport Validate(const GameInstance& instance);

// Throws Error(kValidation) carrying the report text when invalid.
void RequireValid(const GameInstance& instance);

// Fraction of total demand routed by controller r.
double ShareOfControl(const GameInstance& instance, std::size_t r);
double ShareOfControl(const GameInstance& instance, const std::string& id);

// Every controller routes exactly 1/|R| of every population, within tol.
bool IsProportional(const GameInstance& instance, double tol);

// Copy of the instance whose assignment gives controller r the fraction
// fractions[r] of every population.
GameInstance WithUniformFractions(const GameInstance& instance,
                                  const std::vector<double>& fractions);

// Copy whose assignment is the per-population share matrix shares[r][i].
GameInstance WithShares(const GameInstance& instance,
                        const std::vector<std::string>& controllers,
                        std::vector<std::vector<double>> shares);

// Proportional assignment over num_controllers controllers named "1".."R".
GameInstance WithProportionalControl(const GameInstance& instance,
                                     std::size_t num_controllers);

// Replaces every edge cost with its marginal cost c(z) + z c'(z).
GameInstance MarginalCostInstance(const GameInstance& instance);

}  // namespace netctl

#endif  // NETCTL_GAME_HPP_
