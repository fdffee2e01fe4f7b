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

#include <cmath>
#include <string>
#include <vector>

#include "doctest.h"
#include "netctl/analytics.hpp"
#include "netctl/error.hpp"
#include "netctl/instances.hpp"
#include "netctl/os_choice.hpp"

namespace netctl {
namespace {

OsShareProfile Shares(std::vector<double> row) { return OsShareProfile{{std::move(row)}}; }

TEST_CASE("passenger cost on pigou") {
  const GameInstance g = PigouInstance(1.0);
  SUBCASE("proportional pair pays the nce average") {
    const std::vector<double> c = PassengerCost(g, Shares({0.5, 0.5}), 2, 0);
    CHECK(c[0] == doctest::Approx(7.0 / 9.0).epsilon(1e-8));
    CHECK(c[1] == doctest::Approx(7.0 / 9.0).epsilon(1e-8));
  }
  SUBCASE("monopoly pays the optimum and an empty controller the cheapest path") {
    const std::vector<double> c = PassengerCost(g, Shares({1.0, 0.0}), 2, 0);
    CHECK(c[0] == doctest::Approx(0.75).epsilon(1e-8));
    CHECK(c[1] == doctest::Approx(0.5).epsilon(1e-6));
  }
  SUBCASE("the small controller is cheaper") {
    const std::vector<double> c = PassengerCost(g, Shares({0.95, 0.05}), 2, 0);
    CHECK(c[1] < c[0]);
  }
}

TEST_CASE("best response step") {
  const GameInstance g = PigouInstance(1.0);
  SUBCASE("mass moves toward the cheaper controller") {
    const OsShareProfile y = OsBestResponseStep(g, Shares({0.9, 0.1}), 2, 0.1);
    CHECK(y.shares[0][0] == doctest::Approx(0.8).epsilon(1e-12));
    CHECK(y.shares[0][1] == doctest::Approx(0.2).epsilon(1e-12));
  }
  SUBCASE("equal costs leave the profile alone") {
    const OsShareProfile y = OsBestResponseStep(g, Shares({0.5, 0.5}), {{0.7, 0.7}}, 0.3);
    CHECK(y.shares[0][0] == 0.5);
    CHECK(y.shares[0][1] == 0.5);
  }
  SUBCASE("full step empties the donor") {
    const OsShareProfile y = OsBestResponseStep(g, Shares({1.0, 0.0}), 2, 1.0);
    CHECK(y.shares[0][0] == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(y.shares[0][1] == doctest::Approx(1.0).epsilon(1e-12));
  }
  SUBCASE("step is capped by the donor share") {
    const OsShareProfile y = OsBestResponseStep(g, Shares({0.95, 0.05}), {{1.0, 0.5}}, 0.5);
    CHECK(y.shares[0][0] == doctest::Approx(0.45).epsilon(1e-12));
    const OsShareProfile z = OsBestResponseStep(g, Shares({0.95, 0.05}), {{0.5, 1.0}}, 0.5);
    CHECK(z.shares[0][0] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(z.shares[0][1] == doctest::Approx(0.0).epsilon(1e-12));
  }
}

void CheckConvergesToProportional(const GameInstance& g, const std::vector<double>& start) {
  const std::size_t r = start.size();
  OsChoiceOptions options;
  const OsChoiceTrace trace = SolveOsGame(g, r, Shares(start), options);
  REQUIRE(trace.converged);
  const std::vector<double>& y = trace.steps.back().y.shares[0];
  for (double v : y) CHECK(std::abs(v - 1.0 / r) <= 10.0 * options.tol);
  for (const OsChoiceStep& step : trace.steps) {
    double mass = 0.0;
    for (double v : step.y.shares[0]) {
      CHECK(v >= 0.0);
      mass += v;
    }
    CHECK(std::abs(mass - 1.0) <= 1e-12);
  }
  CHECK(trace.steps.back().social_cost ==
        doctest::Approx(PigouNceSocialCost({1.0, static_cast<long>(r)})).epsilon(1e-4));
}

TEST_CASE("dynamics reach proportional control") {
  const GameInstance g = PigouInstance(1.0);
  CheckConvergesToProportional(g, {0.9, 0.1});
  CheckConvergesToProportional(g, {0.6, 0.3, 0.1});
  CheckConvergesToProportional(g, {0.4, 0.3, 0.2, 0.1});
}

TEST_CASE("proportional start stops at once") {
  const OsChoiceTrace trace = SolveOsGame(PigouInstance(1.0), 2, Shares({0.5, 0.5}));
  CHECK(trace.converged);
  CHECK(trace.steps.size() == 1);
  CHECK(trace.final_proportionality_deviation == 0.0);
}

TEST_CASE("spread shrinks along accepted steps") {
  const GameInstance g = PigouInstance(2.0);
  const OsChoiceTrace trace = SolveOsGame(g, 3, Shares({0.7, 0.2, 0.1}));
  REQUIRE(trace.steps.size() > 1);
  double previous = 1e300;
  for (const OsChoiceStep& step : trace.steps) {
    double lo = 1e300, hi = -1e300;
    for (double c : step.per_unit_cost[0]) {
      lo = std::min(lo, c);
      hi = std::max(hi, c);
    }
    CHECK(hi - lo < previous);
    previous = hi - lo;
  }
}

TEST_CASE("potential does not rise along the dynamics") {
  const OsChoiceTrace trace = SolveOsGame(PigouInstance(1.0), 2, Shares({1.0, 0.0}));
  REQUIRE(trace.converged);
  for (std::size_t k = 1; k < trace.steps.size(); ++k) {
    CHECK(trace.steps[k].potential <= trace.steps[k - 1].potential + 1e-9);
  }
}

TEST_CASE("os choice input checks") {
  const GameInstance g = PigouInstance(1.0);
  CHECK_THROWS_AS(SolveOsGame(g, 2, Shares({0.6, 0.6})), Error);
  CHECK_THROWS_AS(SolveOsGame(g, 2, Shares({1.2, -0.2})), Error);
  CHECK_THROWS_AS(SolveOsGame(g, 3, Shares({0.5, 0.5})), Error);
  OsChoiceOptions bad;
  bad.eta = 0.0;
  CHECK_THROWS_AS(SolveOsGame(g, 2, Shares({0.5, 0.5}), bad), Error);
}

TEST_CASE("os choice csv") {
  const OsChoiceTrace trace = SolveOsGame(PigouInstance(1.0), 2, Shares({0.9, 0.1}));
  const std::string csv = trace.ToCsv();
  CHECK(csv.rfind("step,population,controller,share,per_unit_cost,social_cost\n", 0) == 0);
  std::size_t lines = 0;
  for (char c : csv) lines += c == '\n';
  CHECK(lines == 1 + 2 * trace.steps.size());
}

}  // namespace
}  // namespace netctl
