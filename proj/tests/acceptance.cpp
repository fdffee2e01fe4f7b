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

// Acceptance checks. Prints one PASS/FAIL line per criterion and exits
// nonzero when any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <string>
#include <vector>

#include "netctl/analytics.hpp"
#include "netctl/control_game.hpp"
#include "netctl/equilibrium.hpp"
#include "netctl/game_io.hpp"
#include "netctl/instances.hpp"
#include "netctl/learning.hpp"
#include "netctl/os_choice.hpp"
#include "oracles.hpp"

namespace netctl {
namespace {

const std::string kDataDir = NETCTL_DATA_DIR;
constexpr std::size_t kBottom = 1;

class Stopwatch {
 public:
  double Seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

int failures = 0;

void Report(int id, bool pass, const std::string& detail) {
  std::printf("criterion %d: %s  %s\n", id, pass ? "PASS" : "FAIL", detail.c_str());
  std::fflush(stdout);
  if (!pass) ++failures;
}

std::string Format(const char* fmt, auto... args) {
  char buffer[512];
  std::snprintf(buffer, sizeof(buffer), fmt, args...);
  return buffer;
}

void PigouBaselines() {
  Stopwatch clock;
  const GameInstance g = LoadGameFile(kDataDir + "/pigou_p1.game");
  const double ue = SolveUe(g).social_cost;
  const double so = SolveSo(g).social_cost;
  const double seconds = clock.Seconds();
  const double ue_oracle =
      oracle::PigouSocialCost(1.0, oracle::GoldenSection(
                                       [](double b) { return oracle::PigouPotential(1.0, b); },
                                       0.0, 1.0));
  const double so_oracle = oracle::PigouSocialCost(
      1.0, oracle::GoldenSection([](double b) { return oracle::PigouSocialCost(1.0, b); }, 0.0,
                                 1.0));
  const bool pass = std::abs(ue - 1.0) <= 1e-6 && std::abs(so - 0.75) <= 1e-6 &&
                    std::abs(ue - ue_oracle) <= 1e-6 && std::abs(so - so_oracle) <= 1e-6 &&
                    seconds < 1.0;
  Report(1, pass, Format("ue=%.9f so=%.9f time=%.3fs", ue, so, seconds));
}

void PoaCrossValidation() {
  Stopwatch clock;
  double worst = 0.0;
  bool converged = true;
  for (double p : {1.0, 2.0, 3.0, 4.0}) {
    for (long r = 1; r <= 6; ++r) {
      const EmpiricalPoa e =
          ComputeEmpiricalPoa(PigouInstance(p, ProportionalFractions(static_cast<std::size_t>(r))));
      converged = converged && e.converged;
      worst = std::max(worst, std::abs(e.poa - PoaClosedForm({p, r})));
    }
  }
  const double seconds = clock.Seconds();
  Report(2, converged && worst <= 1e-5 && seconds < 30.0,
         Format("max |empirical - closed| = %.3g over 24 cells, time=%.2fs", worst, seconds));
}

void ExampleEquilibrium() {
  const GameInstance g = LoadGameFile(kDataDir + "/pigou_p1_r2.game");
  const NceResult nce = SolveNce(g);
  const double x1 = nce.flows.flow[0][0][kBottom];
  const double x2 = nce.flows.flow[1][0][kBottom];
  // Symmetric best response: x minimizes x (x + x*)^1 + (1/2 - x) at x = x*.
  const double fixed = oracle::GoldenSection(
      [](double y) {
        const double br = oracle::GoldenSection(
            [y](double x) { return oracle::PigouControllerCost(1.0, 0.5, x, y); }, 0.0, 0.5);
        return std::abs(br - y);
      },
      0.0, 0.5);
  const double sc_oracle = oracle::PigouSocialCost(1.0, 2.0 * fixed);
  const bool pass = nce.converged && std::abs(x1 - 1.0 / 3.0) <= 1e-6 &&
                    std::abs(x2 - 1.0 / 3.0) <= 1e-6 &&
                    std::abs(nce.social_cost - 7.0 / 9.0) <= 1e-6 &&
                    std::abs(nce.social_cost - sc_oracle) <= 1e-6;
  Report(3, pass,
         Format("x1=%.9f x2=%.9f sc=%.9f oracle_sc=%.9f", x1, x2, nce.social_cost, sc_oracle));
}

void LimitConsistency() {
  double worst = 0.0;
  for (double p : {1.0, 2.0, 3.0}) {
    worst = std::max(worst, std::abs(PoaClosedForm({p, 1000000}) - PoaLimit(p)));
  }
  const double limit1 = PoaLimit(1.0);
  Report(4, worst <= 1e-4 && std::abs(limit1 - 4.0 / 3.0) <= 1e-12,
         Format("max |closed(p, 1e6) - limit(p)| = %.3g, limit(1) = %.15f", worst, limit1));
}

void SurfaceShape() {
  const SweepGrid grid = SocialCostSurface(PigouInstance(1.0), 2, 0.01);
  const double top = *std::max_element(grid.social_cost.begin(), grid.social_cost.end());
  double lo = 2.0, hi = -1.0, at0 = 0.0, at1 = 0.0;
  for (std::size_t k = 0; k < grid.points.size(); ++k) {
    const double d = grid.points[k][0];
    if (grid.social_cost[k] >= top - 1e-6) {
      lo = std::min(lo, d);
      hi = std::max(hi, d);
    }
    if (d == 0.0) at0 = grid.social_cost[k];
    if (d == 1.0) at1 = grid.social_cost[k];
  }
  const bool pass = grid.converged && std::abs(lo - 1.0 / 3.0) <= 0.01 &&
                    std::abs(hi - 2.0 / 3.0) <= 0.01 && std::abs(at0 - 0.75) <= 1e-6 &&
                    std::abs(at1 - 0.75) <= 1e-6;
  Report(5, pass,
         Format("max sc=%.9f on d in [%.2f, %.2f], sc(0)=%.9f sc(1)=%.9f", top, lo, hi, at0, at1));
}

void PotentialDescent() {
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(kDataDir)) {
    if (entry.path().extension() == ".game") files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  int runs = 0, rising = 0;
  double spread = 0.0;
  std::string first_rise;
  for (const auto& file : files) {
    const GameInstance g = LoadGameFile(file.string());
    double lo = 1e300, hi = -1e300;
    for (std::uint64_t seed = 0; seed < 4; ++seed) {
      NceOptions options;
      options.seed = seed;
      const NceResult nce = SolveNce(g, options);
      ++runs;
      if (!VerifyPotentialDescent(nce.potential_trace, 1e-9)) {
        ++rising;
        if (first_rise.empty()) first_rise = file.filename().string();
      }
      lo = std::min(lo, nce.social_cost);
      hi = std::max(hi, nce.social_cost);
    }
    spread = std::max(spread, hi - lo);
  }
  Report(6, rising == 0 && spread <= 1e-5,
         Format("potential trace rises in %d of %d runs%s%s; max multi-seed sc spread = %.3g",
                rising, runs, first_rise.empty() ? "" : ", first on ", first_rise.c_str(),
                spread));
}

void GridOracle() {
  Stopwatch clock;
  constexpr double kStep = 0.001;
  double worst_excess = -1e300;
  int checked = 0;
  const std::vector<std::vector<double>> splits = {
      {1.0}, {0.5, 0.5}, {0.8, 0.2}, {1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0}, {0.6, 0.3, 0.1}};
  for (double p : {1.0, 2.0, 3.0}) {
    for (const std::vector<double>& split : splits) {
      const GameInstance g = PigouInstance(p, split);
      const NceResult nce = SolveNce(g);
      const double total = nce.flows.edge_loads[kBottom];
      for (std::size_t r = 0; r < split.size(); ++r) {
        const double d = split[r];
        const double mine = nce.flows.flow[r][0][kBottom];
        const double others = std::max(0.0, total - mine);
        const double current = oracle::PigouControllerCost(p, d, mine, others);
        double best = current, slope = 0.0;
        const long n = static_cast<long>(std::floor(d / kStep));
        for (long k = 0; k <= n + 1; ++k) {
          const double x = std::min(d, static_cast<double>(k) * kStep);
          best = std::min(best, oracle::PigouControllerCost(p, d, x, others));
          const double y = x + others;
          slope = std::max(slope, std::abs(std::pow(y, p) + p * x * std::pow(y, p - 1.0) - 1.0));
        }
        worst_excess = std::max(worst_excess, (current - best) - kStep * slope);
        ++checked;
      }
    }
  }
  const double seconds = clock.Seconds();
  Report(7, worst_excess <= 0.0 && seconds < 60.0,
         Format("%d controllers checked, max (grid improvement - grid error) = %.3g, time=%.2fs",
                checked, worst_excess, seconds));
}

void LearningReproduction() {
  const double so1 = 100.0 * SolveSo(BraessInstance(1.0)).social_cost;
  const double so2 = 100.0 * SolveSo(BraessInstance(2.0)).social_cost;
  bool pass = std::abs(so1 - 150.0) <= 0.005 * 150.0 && std::abs(so2 - 123.0) <= 0.005 * 123.0;
  double worst = 0.0;
  for (double p : {1.0, 2.0}) {
    for (long r = 1; r <= 3; ++r) {
      const GameInstance g = BraessInstance(p, ProportionalFractions(static_cast<std::size_t>(r)));
      const double target = SolveNce(g).social_cost;
      const EpisodeLog log = RunEpisode(g, 2000, {}, 1);
      worst = std::max(worst, std::abs(log.trailing_mean - target) / target);
    }
  }
  pass = pass && worst <= 0.05;
  Report(8, pass,
         Format("so totals %.4f / %.4f; max learner relative error %.4f", so1, so2, worst));
}

void OsChoiceDynamics() {
  const GameInstance g = PigouInstance(1.0);
  double worst_share = 0.0, worst_sc = 0.0;
  bool converged = true;
  for (const std::vector<double>& start :
       {std::vector<double>{0.9, 0.1}, std::vector<double>{0.6, 0.3, 0.1}}) {
    const long r = static_cast<long>(start.size());
    const OsChoiceTrace trace = SolveOsGame(g, start.size(), OsShareProfile{{start}});
    converged = converged && trace.converged;
    for (double y : trace.steps.back().y.shares[0]) {
      worst_share = std::max(worst_share, std::abs(y - 1.0 / static_cast<double>(r)));
    }
    worst_sc = std::max(worst_sc,
                        std::abs(trace.steps.back().social_cost - PigouNceSocialCost({1.0, r})));
  }
  Report(9, converged && worst_share <= 1e-3 && worst_sc <= 1e-4,
         Format("max share deviation %.3g, max sc deviation %.3g", worst_share, worst_sc));
}

void InformationRestriction() {
  const GameInstance g = LoadGameFile(kDataDir + "/pigou_p1_types.game");
  const EquilibriumResult ue = SolveUe(g);
  // Type A is pinned to the top edge; type B's bottom flow minimizes the potential.
  const double b = oracle::GoldenSection(
      [](double y) { return (1.0 - y) + y * y / 2.0; }, 0.0, 0.6);
  const double oracle_sc = oracle::PigouSocialCost(1.0, b);
  Report(10,
         ue.converged && std::abs(ue.social_cost - 0.76) <= 1e-6 &&
             std::abs(ue.social_cost - oracle_sc) <= 1e-6,
         Format("sc=%.9f oracle=%.9f", ue.social_cost, oracle_sc));
}

}  // namespace
}  // namespace netctl

int main() {
  netctl::PigouBaselines();
  netctl::PoaCrossValidation();
  netctl::ExampleEquilibrium();
  netctl::LimitConsistency();
  netctl::SurfaceShape();
  netctl::PotentialDescent();
  netctl::GridOracle();
  netctl::LearningReproduction();
  netctl::OsChoiceDynamics();
  netctl::InformationRestriction();
  std::printf("%d of 10 criteria failed\n", netctl::failures);
  return netctl::failures == 0 ? 0 : 1;
}
