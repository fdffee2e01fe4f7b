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

#ifndef NETCTL_ANALYTICS_HPP_
#define NETCTL_ANALYTICS_HPP_

#include <cstddef>
#include <string>
#include <vector>

#include "netctl/control_game.hpp"
#include "netctl/equilibrium.hpp"
#include "netctl/game.hpp"

namespace netctl {

// Degree p > 0 of the worst-case cost polynomial and number of controllers.
struct PoaQuery {
  double p = 1.0;
  long num_controllers = 1;
};

// Closed forms on the Pigou network with proportional control. All throw
// Error(kInvalidArgument) for p <= 0 or fewer than one controller.
// Per-controller flow on the variable-cost edge.
double PigouNceFlow(const PoaQuery& q);
double PigouNceSocialCost(const PoaQuery& q);
double PigouSoSocialCost(double p);
double PoaClosedForm(const PoaQuery& q);
double PoaLimit(double p);
double WorstCaseThreshold(const PoaQuery& q);

// One cell of the check "threshold >= 1/R".
struct ThresholdCheck {
  double p = 0.0;
  long num_controllers = 0;
  double threshold = 0.0;
  double reciprocal = 0.0;
  bool holds = false;
};
std::vector<ThresholdCheck> ScanThresholdInequality(const std::vector<double>& ps,
                                                    const std::vector<long>& rs);

struct EmpiricalPoaOptions {
  NceOptions nce;
  SolveOptions so;
  // The numerator is the worst NCE social cost over seeds 0..num_seeds-1.
  int num_seeds = 3;
};

struct EmpiricalPoa {
  double poa = 0.0;
  double worst_nce_cost = 0.0;
  double so_cost = 0.0;
  bool converged = false;
};

EmpiricalPoa ComputeEmpiricalPoa(const GameInstance& instance,
                                 const EmpiricalPoaOptions& options = {});

// Social cost of the NCE at every grid assignment of a single-population
// template split among 2 or 3 controllers.
struct SweepGrid {
  std::vector<std::string> axes;            // "d1" or "d1","d2"
  std::vector<std::vector<double>> points;  // lexicographic by grid index
  std::vector<double> social_cost;
  bool converged = true;

  std::string ToCsv() const;
};

SweepGrid SocialCostSurface(const GameInstance& tmpl, long num_controllers,
                            double step, const NceOptions& options = {});

struct PoaSweepRow {
  double p = 0.0;
  long num_controllers = 0;
  double closed = 0.0;
  bool has_empirical = false;
  double empirical = 0.0;
  double limit = 0.0;
  bool converged = true;
};

// Rows ordered by p, then R. Empirical values use proportional Pigou and are
// left out for R > 64.
std::vector<PoaSweepRow> PoaSweep(const std::vector<double>& ps,
                                  const std::vector<long>& rs, bool empirical,
                                  const EmpiricalPoaOptions& options = {});
std::string PoaSweepCsv(const std::vector<PoaSweepRow>& rows);

// Shortest decimal text that reads back as the same double.
std::string FormatDouble(double value);

}  // namespace netctl

#endif  // NETCTL_ANALYTICS_HPP_
