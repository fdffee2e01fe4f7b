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

#include "netctl/game.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include "netctl/error.hpp"

namespace netctl {
namespace {

constexpr double kShareSumTol = 1e-9;

bool SumMatches(double sum, double target) {
  return std::abs(sum - target) <= kShareSumTol * std::max(1.0, target);
}

class Checker {
 public:
  void Fail(std::string invariant, std::string location, std::string message) {
    report_.violations.push_back(
        {std::move(invariant), std::move(location), std::move(message)});
  }
  ValidationReport Take() { return std::move(report_); }

 private:
  ValidationReport report_;
};

void CheckNetwork(const Network& net, Checker& check) {
  std::set<std::string> seen_nodes;
  for (std::size_t v = 0; v < net.nodes.size(); ++v) {
    if (!seen_nodes.insert(net.nodes[v]).second) {
      check.Fail("Network.unique_node_ids", "nodes[" + std::to_string(v) + "]",
                 "duplicate node id '" + net.nodes[v] + "'");
    }
  }
  std::set<std::string> seen_edges;
  for (std::size_t e = 0; e < net.edges.size(); ++e) {
    const Edge& edge = net.edges[e];
    const std::string where = "edges[" + std::to_string(e) + "] '" + edge.id + "'";
    if (!seen_edges.insert(edge.id).second) {
      check.Fail("Network.unique_edge_ids", where, "duplicate edge id");
    }
    if (edge.tail >= net.nodes.size() || edge.head >= net.nodes.size()) {
      check.Fail("Network.edge_endpoints", where,
                 "edge endpoint references a missing node");
    }
    for (const auto& term : edge.cost.terms()) {
      if (!std::isfinite(term.coefficient) || term.coefficient < 0.0) {
        check.Fail("CostPolynomial.nonnegative", where,
                   "cost coefficients must be finite and >= 0");
      }
      if (!std::isfinite(term.exponent) || term.exponent < 0.0) {
        check.Fail("CostPolynomial.exponent", where,
                   "cost exponents must be finite and >= 0");
      }
    }
  }
}

void CheckPath(const Network& net, const Population& pop, const Path& path,
               const std::string& where, Checker& check) {
  if (path.empty()) {
    check.Fail("Path.nonempty", where, "path has no edges");
    return;
  }
  for (EdgeIndex e : path) {
    if (e >= net.edges.size()) {
      check.Fail("Path.edges_exist", where, "path references a missing edge");
      return;
    }
  }
  if (net.edges[path.front()].tail != pop.origin ||
      net.edges[path.back()].head != pop.destination) {
    check.Fail("Path.endpoints", where,
               "path does not run from the population origin to its destination");
  }
  std::set<NodeIndex> visited{net.edges[path.front()].tail};
  for (std::size_t k = 0; k < path.size(); ++k) {
    const Edge& edge = net.edges[path[k]];
    if (k > 0 && net.edges[path[k - 1]].head != edge.tail) {
      check.Fail("Path.connected", where,
                 "consecutive edges do not share a node at position " +
                     std::to_string(k));
      return;
    }
    if (!visited.insert(edge.head).second) {
      check.Fail("Path.simple", where,
                 "path repeats node '" +
                     (edge.head < net.nodes.size() ? net.nodes[edge.head]
                                                   : std::string("?")) +
                     "'");
      return;
    }
  }
}

void CheckPopulations(const GameInstance& g, Checker& check) {
  const Network& net = g.network;
  std::set<std::string> ids;
  for (std::size_t i = 0; i < g.populations.size(); ++i) {
    const Population& pop = g.populations[i];
    const std::string where = "populations[" + std::to_string(i) + "] '" + pop.id + "'";
    if (!ids.insert(pop.id).second) {
      check.Fail("Population.unique_ids", where, "duplicate population id");
    }
    if (!std::isfinite(pop.demand) || pop.demand <= 0.0) {
      check.Fail("Population.demand", where, "demand must be > 0");
    }
    if (pop.origin >= net.nodes.size() || pop.destination >= net.nodes.size()) {
      check.Fail("Population.nodes", where, "origin or destination is not a node");
      continue;
    }
    if (pop.origin == pop.destination) {
      check.Fail("Population.nodes", where, "origin equals destination");
    }
    if (pop.paths.empty()) {
      check.Fail("Population.paths", where, "population has no paths");
    }
    for (std::size_t s = 0; s < pop.paths.size(); ++s) {
      CheckPath(net, pop, pop.paths[s], where + " path " + std::to_string(s), check);
      for (std::size_t t = 0; t < s; ++t) {
        if (pop.paths[t] == pop.paths[s]) {
          check.Fail("Population.distinct_paths", where,
                     "paths " + std::to_string(t) + " and " + std::to_string(s) +
                         " are identical");
        }
      }
    }
  }
}

void CheckInformationTypes(const GameInstance& g, Checker& check) {
  if (g.information_types.empty()) return;
  std::vector<double> type_demand(g.populations.size(), 0.0);
  std::vector<bool> typed(g.populations.size(), false);
  for (std::size_t k = 0; k < g.information_types.size(); ++k) {
    const InformationType& type = g.information_types[k];
    const std::string where =
        "information_types[" + std::to_string(k) + "] '" + type.id + "'";
    if (type.population >= g.populations.size()) {
      check.Fail("InformationType.population", where, "unknown population");
      continue;
    }
    typed[type.population] = true;
    if (!std::isfinite(type.demand) || type.demand < 0.0) {
      check.Fail("InformationType.demand", where, "demand must be >= 0");
    }
    type_demand[type.population] += type.demand;
    if (type.known_paths.empty()) {
      check.Fail("InformationType.known_paths", where, "no known paths");
    }
    const std::size_t num_paths = g.populations[type.population].paths.size();
    for (std::size_t s : type.known_paths) {
      if (s >= num_paths) {
        check.Fail("InformationType.known_paths", where,
                   "known path " + std::to_string(s) +
                       " is not a path of the population");
      }
    }
  }
  for (std::size_t i = 0; i < g.populations.size(); ++i) {
    if (typed[i] && !SumMatches(type_demand[i], g.populations[i].demand)) {
      std::ostringstream msg;
      msg << "type demands sum to " << type_demand[i] << " but population demand is "
          << g.populations[i].demand;
      check.Fail("InformationType.demand_sum",
                 "populations[" + std::to_string(i) + "] '" + g.populations[i].id + "'",
                 msg.str());
    }
  }
}

void CheckAssignment(const GameInstance& g, Checker& check) {
  const ControlAssignment& a = g.assignment;
  if (a.controllers.empty()) {
    check.Fail("ControlAssignment.controllers", "controllers",
               "at least one controller is required");
    return;
  }
  if (a.shares.size() != a.controllers.size()) {
    check.Fail("ControlAssignment.shape", "controllers",
               "share matrix does not match the controller list");
    return;
  }
  std::set<std::string> ids;
  for (std::size_t r = 0; r < a.size(); ++r) {
    const std::string where = "controllers[" + std::to_string(r) + "] '" +
                              a.controllers[r] + "'";
    if (!ids.insert(a.controllers[r]).second) {
      check.Fail("ControlAssignment.unique_ids", where, "duplicate controller id");
    }
    if (a.shares[r].size() != g.populations.size()) {
      check.Fail("ControlAssignment.shape", where,
                 "shares do not cover every population");
      return;
    }
    for (double share : a.shares[r]) {
      if (!std::isfinite(share) || share < 0.0) {
        check.Fail("ControlAssignment.nonnegative", where, "shares must be >= 0");
      }
    }
  }
  for (std::size_t i = 0; i < g.populations.size(); ++i) {
    double sum = 0.0;
    for (std::size_t r = 0; r < a.size(); ++r) sum += a.shares[r][i];
    if (!SumMatches(sum, g.populations[i].demand)) {
      std::ostringstream msg;
      msg << "controller shares sum to " << sum << " but population demand is "
          << g.populations[i].demand;
      check.Fail("ControlAssignment.sum",
                 "populations[" + std::to_string(i) + "] '" + g.populations[i].id + "'",
                 msg.str());
    }
  }
}

}  // namespace

std::size_t Network::FindNode(const std::string& id) const {
  const auto it = std::find(nodes.begin(), nodes.end(), id);
  return it == nodes.end() ? npos : static_cast<std::size_t>(it - nodes.begin());
}

std::size_t Network::FindEdge(const std::string& id) const {
  for (std::size_t e = 0; e < edges.size(); ++e) {
    if (edges[e].id == id) return e;
  }
  return npos;
}

std::size_t ControlAssignment::FindController(const std::string& id) const {
  const auto it = std::find(controllers.begin(), controllers.end(), id);
  return it == controllers.end() ? Network::npos
                                 : static_cast<std::size_t>(it - controllers.begin());
}

double GameInstance::TotalDemand() const {
  double total = 0.0;
  for (const Population& pop : populations) total += pop.demand;
  return total;
}

std::string ValidationReport::ToString() const {
  if (ok()) return "ok\n";
  std::ostringstream out;
  for (const Violation& v : violations) {
    out << v.invariant << " at " << v.location << ": " << v.message << "\n";
  }
  return out.str();
}

ValidationReport Validate(const GameInstance& instance) {
  Checker check;
  CheckNetwork(instance.network, check);
  CheckPopulations(instance, check);
  CheckInformationTypes(instance, check);
  CheckAssignment(instance, check);
  return check.Take();
}

void RequireValid(const GameInstance& instance) {
  const ValidationReport report = Validate(instance);
  if (!report.ok()) {
    throw Error(ErrorCode::kValidation, "invalid game instance:\n" + report.ToString());
  }
}

double ShareOfControl(const GameInstance& instance, std::size_t r) {
  if (r >= instance.assignment.size()) {
    throw Error(ErrorCode::kUnknownId,
                "unknown controller index " + std::to_string(r));
  }
  double controlled = 0.0;
  for (double share : instance.assignment.shares[r]) controlled += share;
  return controlled / instance.TotalDemand();
}

double ShareOfControl(const GameInstance& instance, const std::string& id) {
  const std::size_t r = instance.assignment.FindController(id);
  if (r == Network::npos) {
    throw Error(ErrorCode::kUnknownId, "unknown controller '" + id + "'");
  }
  return ShareOfControl(instance, r);
}

bool IsProportional(const GameInstance& instance, double tol) {
  const ControlAssignment& a = instance.assignment;
  if (a.size() == 0) return false;
  const double target = 1.0 / static_cast<double>(a.size());
  for (std::size_t r = 0; r < a.size(); ++r) {
    for (std::size_t i = 0; i < instance.populations.size(); ++i) {
      if (!a.Controls(r, i)) return false;
      const double control = a.shares[r][i] / instance.populations[i].demand;
      if (std::abs(control - target) > tol) return false;
    }
  }
  return true;
}

GameInstance WithShares(const GameInstance& instance,
                        const std::vector<std::string>& controllers,
                        std::vector<std::vector<double>> shares) {
  GameInstance copy = instance;
  copy.assignment.controllers = controllers;
  copy.assignment.shares = std::move(shares);
  return copy;
}

GameInstance WithUniformFractions(const GameInstance& instance,
                                  const std::vector<double>& fractions) {
  std::vector<std::string> ids;
  std::vector<std::vector<double>> shares;
  for (std::size_t r = 0; r < fractions.size(); ++r) {
    ids.push_back(std::to_string(r + 1));
    std::vector<double> row;
    for (const Population& pop : instance.populations) {
      row.push_back(fractions[r] * pop.demand);
    }
    shares.push_back(std::move(row));
  }
  return WithShares(instance, ids, std::move(shares));
}

GameInstance WithProportionalControl(const GameInstance& instance,
                                     std::size_t num_controllers) {
  if (num_controllers == 0) {
    throw Error(ErrorCode::kInvalidArgument, "need at least one controller");
  }
  return WithUniformFractions(
      instance, std::vector<double>(num_controllers,
                                    1.0 / static_cast<double>(num_controllers)));
}

GameInstance MarginalCostInstance(const GameInstance& instance) {
  GameInstance copy = instance;
  for (Edge& edge : copy.network.edges) edge.cost = edge.cost.Marginal();
  return copy;
}

}  // namespace netctl
