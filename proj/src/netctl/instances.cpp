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

#include "netctl/instances.hpp"

#include <cmath>

#include "netctl/error.hpp"

namespace netctl {
namespace {

CostPolynomial PowerCost(double p) {
  if (!(p >= 0.0) || !std::isfinite(p)) {
    throw Error(ErrorCode::kInvalidArgument, "degree must be finite and >= 0");
  }
  if (std::floor(p) == p && p <= 64.0) {
    std::vector<double> coefficients(static_cast<std::size_t>(p) + 1, 0.0);
    coefficients.back() = 1.0;
    return CostPolynomial::FromCoefficients(coefficients);
  }
  return CostPolynomial::Monomial(1.0, p);
}

}  // namespace

std::vector<double> ProportionalFractions(std::size_t num_controllers) {
  if (num_controllers == 0) {
    throw Error(ErrorCode::kInvalidArgument, "need at least one controller");
  }
  return std::vector<double>(num_controllers, 1.0 / static_cast<double>(num_controllers));
}

GameInstance PigouInstance(double p, const std::vector<double>& fractions) {
  GameInstance game;
  game.network.nodes = {"O", "D"};
  game.network.edges = {
      {"top", 0, 1, CostPolynomial::FromCoefficients({1.0})},
      {"bottom", 0, 1, PowerCost(p)},
  };
  game.populations = {{"pop", 0, 1, 1.0, {{0}, {1}}}};
  return WithUniformFractions(game, fractions);
}

GameInstance BraessInstance(double p, const std::vector<double>& fractions) {
  GameInstance game;
  game.network.nodes = {"O", "A", "B", "D"};
  game.network.edges = {
      {"OA", 0, 1, PowerCost(p)},
      {"AD", 1, 3, CostPolynomial::FromCoefficients({1.0})},
      {"OB", 0, 2, CostPolynomial::FromCoefficients({1.0})},
      {"BD", 2, 3, PowerCost(p)},
      {"AB", 1, 2, CostPolynomial::FromCoefficients({0.0})},
  };
  game.populations = {{"pop", 0, 3, 1.0, {{0, 1}, {0, 4, 3}, {2, 3}}}};
  return WithUniformFractions(game, fractions);
}

}  // namespace netctl
