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
#include <cstddef>
#include <numeric>
#include <string>
#include <vector>

#include "doctest.h"
#include "netctl/analytics.hpp"
#include "netctl/error.hpp"
#include "netctl/instances.hpp"
#include "netctl/learning.hpp"

namespace netctl {
namespace {

double TrailingSum(const EpisodeLog& log, std::size_t n) {
  double sum = 0.0;
  for (std::size_t t = log.rounds.size() - n; t < log.rounds.size(); ++t) {
    sum += log.rounds[t].social_cost;
  }
  return sum;
}

TEST_CASE("action grids") {
  CHECK(ActionGrid(BraessInstance(1.0), 0, 11).size() == 66);
  CHECK(ActionGrid(PigouInstance(1.0), 0, 11).size() == 11);
  CHECK(ActionGrid(PigouInstance(1.0, {0.5, 0.5}), 1, 3).size() == 3);
  CHECK_THROWS_AS(ActionGrid(PigouInstance(1.0), 0, 1), Error);
  CHECK_THROWS_AS(ActionGrid(PigouInstance(1.0), 1, 11), Error);

  const GameInstance g = PigouInstance(1.0, {0.25, 0.75});
  for (const GridAction& a : ActionGrid(g, 1, 5)) {
    const double mass = std::accumulate(a.flow[0].begin(), a.flow[0].end(), 0.0);
    CHECK(mass == doctest::Approx(0.75).epsilon(1e-12));
    CHECK(a.edge_loads[0] + a.edge_loads[1] == doctest::Approx(0.75).epsilon(1e-12));
  }
}

TEST_CASE("worst feasible social cost") {
  CHECK(WorstFeasibleSocialCost(BraessInstance(1.0)) == doctest::Approx(2.0));
  CHECK(WorstFeasibleSocialCost(PigouInstance(2.0)) == doctest::Approx(1.0));
}

TEST_CASE("episode bookkeeping") {
  const GameInstance g = BraessInstance(1.0, {0.5, 0.5});
  LearnerConfig config;
  config.window = 50;
  const EpisodeLog log = RunEpisode(g, 300, config, 7);
  REQUIRE(log.rounds.size() == 300);
  REQUIRE(log.learners.size() == 2);
  for (const LearnerState& learner : log.learners) {
    CHECK(learner.round == 300);
    CHECK(std::accumulate(learner.weights.begin(), learner.weights.end(), 0.0) ==
          doctest::Approx(1.0).epsilon(1e-12));
    CHECK(learner.learning_rate == doctest::Approx(std::sqrt(std::log(66.0) / 300.0)));
  }
  for (const EpisodeRound& round : log.rounds) {
    CHECK(round.social_cost >= log.so_cost - 1e-9);
    CHECK(round.social_cost <= log.worst_cost + 1e-9);
    CHECK(round.controller_cost[0] + round.controller_cost[1] ==
          doctest::Approx(round.social_cost).epsilon(1e-12));
  }
  CHECK(log.trailing_mean == doctest::Approx(TrailingSum(log, 50) / 50.0).epsilon(1e-12));
  CHECK(log.trailing_mean >= 1.5 - 1e-9);
  CHECK(log.trailing_mean <= 2.0);
}

TEST_CASE("episodes are reproducible by seed") {
  const GameInstance g = BraessInstance(1.0, {0.5, 0.5});
  const EpisodeLog a = RunEpisode(g, 200, {}, 3);
  const EpisodeLog b = RunEpisode(g, 200, {}, 3);
  const EpisodeLog c = RunEpisode(g, 200, {}, 4);
  CHECK(a.ToCsv() == b.ToCsv());
  CHECK(a.ToCsv() != c.ToCsv());
  CHECK(a.ToCsv().rfind("round,controller,cost,social_cost\n", 0) == 0);
}

TEST_CASE("regret vanishes") {
  const double bound = 5.0 * std::sqrt(std::log(66.0) / 2000.0);
  for (double p : {1.0, 2.0}) {
    for (long r = 1; r <= 3; ++r) {
      const EpisodeLog log =
          RunEpisode(BraessInstance(p, ProportionalFractions(r)), 2000, {}, 1);
      for (double regret : log.normalized_regret) CHECK(regret <= bound);
    }
  }
}

TEST_CASE("a lone learner approaches the optimum") {
  const double so2 = 2.0 * std::pow(1.0 / std::sqrt(3.0), 3) + 2.0 - 2.0 / std::sqrt(3.0);
  const EpisodeLog p1 = RunEpisode(BraessInstance(1.0), 2000, {}, 1);
  const EpisodeLog p2 = RunEpisode(BraessInstance(2.0), 2000, {}, 1);
  CHECK(p1.so_cost == doctest::Approx(1.5).epsilon(1e-9));
  CHECK(p2.so_cost == doctest::Approx(so2).epsilon(1e-9));
  CHECK(std::abs(TrailingSum(p1, 100) - 150.0) <= 0.05 * 150.0);
  CHECK(std::abs(TrailingSum(p2, 100) - 100.0 * so2) <= 0.05 * 100.0 * so2);
}

TEST_CASE("learning curve") {
  const EpisodeLog log = RunEpisode(BraessInstance(1.0, {0.5, 0.5}), 100, {}, 2);
  const auto raw = LearningCurve(log, 1);
  REQUIRE(raw.size() == 100);
  for (std::size_t t = 0; t < raw.size(); ++t) {
    CHECK(raw[t].first == static_cast<long>(t + 1));
    CHECK(raw[t].second == log.rounds[t].social_cost);
  }
  const auto smooth = LearningCurve(log, 10);
  REQUIRE(smooth.size() == 100);
  CHECK(smooth[0].second == log.rounds[0].social_cost);
  CHECK(smooth[4].second == doctest::Approx((raw[0].second + raw[1].second + raw[2].second +
                                             raw[3].second + raw[4].second) / 5.0));
  CHECK(smooth.back().second == doctest::Approx(TrailingSum(log, 10) / 10.0).epsilon(1e-12));
  CHECK_THROWS_AS(LearningCurve(log, 0), Error);
  CHECK_THROWS_AS(LearningCurve(log, 101), Error);
}

TEST_CASE("episode input checks") {
  CHECK_THROWS_AS(RunEpisode(BraessInstance(1.0), 0), Error);
  LearnerConfig config;
  config.window = 0;
  CHECK_THROWS_AS(RunEpisode(BraessInstance(1.0), 100, config), Error);
  config.window = 500;
  const EpisodeLog log = RunEpisode(BraessInstance(1.0), 100, config);
  CHECK(log.trailing_mean == doctest::Approx(TrailingSum(log, 100) / 100.0).epsilon(1e-12));
}

}  // namespace
}  // namespace netctl
