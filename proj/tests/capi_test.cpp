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
#include <cstring>
#include <string>

#include "doctest.h"
#include "netctl/netctl.h"

namespace {

const std::string kDataDir = NETCTL_DATA_DIR;

// Owns a game handle for the duration of a test.
struct Game {
  netctl_game* handle = nullptr;
  ~Game() { netctl_game_free(handle); }
};

struct Result {
  netctl_result* handle = nullptr;
  ~Result() { netctl_result_free(handle); }
};

std::string Take(char* s) {
  std::string out = s != nullptr ? s : "";
  netctl_string_free(s);
  return out;
}

TEST_CASE("status names and null arguments") {
  CHECK(std::string(netctl_status_name(NETCTL_OK)) == "ok");
  CHECK(std::strlen(netctl_status_name(NETCTL_E_NOT_CONVERGED)) > 0);
  CHECK(netctl_solve_ue(nullptr, nullptr, nullptr) == NETCTL_E_INVALID_ARGUMENT);
  CHECK(std::strlen(netctl_last_error()) > 0);
  CHECK(netctl_game_load_string(nullptr, 0, nullptr) == NETCTL_E_INVALID_ARGUMENT);
  netctl_game_free(nullptr);
  netctl_result_free(nullptr);
  netctl_string_free(nullptr);
}

TEST_CASE("load errors map to status codes") {
  Game g;
  CHECK(netctl_game_load_string("{ not json", 0, &g.handle) == NETCTL_E_PARSE);
  CHECK(g.handle == nullptr);
  CHECK(std::string(netctl_last_error()).find("line 1") != std::string::npos);
  CHECK(netctl_game_load_file((kDataDir + "/missing.game").c_str(), 0, &g.handle) ==
        NETCTL_E_PARSE);
  const char* no_path = R"({"nodes": ["O", "A", "D"],
    "edges": [{"id": "e", "tail": "O", "head": "A", "coeffs": [1]}],
    "populations": [{"id": "p", "origin": "O", "destination": "D", "demand": 1}]})";
  CHECK(netctl_game_load_string(no_path, 0, &g.handle) == NETCTL_E_NO_PATH);
}

TEST_CASE("validation report") {
  Game g;
  const char* text = R"({"nodes": ["O", "D"],
    "edges": [{"id": "e", "tail": "O", "head": "D", "coeffs": [1]}],
    "populations": [{"id": "p", "origin": "O", "destination": "D", "demand": 1}],
    "controllers": [{"id": "1", "shares": {"p": 0.4}}]})";
  REQUIRE(netctl_game_load_string(text, 0, &g.handle) == NETCTL_OK);
  char* report = nullptr;
  CHECK(netctl_game_validate(g.handle, &report) == NETCTL_E_VALIDATION);
  CHECK(Take(report).find("line ") != std::string::npos);
  Result r;
  CHECK(netctl_solve_nce(g.handle, nullptr, &r.handle) == NETCTL_E_VALIDATION);
}

TEST_CASE("solves braess") {
  Game g;
  REQUIRE(netctl_game_load_file((kDataDir + "/braess_p1_r1.game").c_str(), 0, &g.handle) ==
          NETCTL_OK);
  CHECK(netctl_game_num_controllers(g.handle) == 1);
  CHECK(netctl_game_num_populations(g.handle) == 1);
  CHECK(netctl_game_num_edges(g.handle) == 5);

  Result ue, so, nce;
  REQUIRE(netctl_solve_ue(g.handle, nullptr, &ue.handle) == NETCTL_OK);
  REQUIRE(netctl_solve_so(g.handle, nullptr, &so.handle) == NETCTL_OK);
  REQUIRE(netctl_solve_nce(g.handle, nullptr, &nce.handle) == NETCTL_OK);
  CHECK(netctl_result_get_kind(ue.handle) == NETCTL_RESULT_UE);
  CHECK(netctl_result_social_cost(ue.handle) == doctest::Approx(2.0).epsilon(1e-6));
  CHECK(netctl_result_social_cost(so.handle) == doctest::Approx(1.5).epsilon(1e-6));
  CHECK(netctl_result_social_cost(nce.handle) == doctest::Approx(1.5).epsilon(1e-6));
  CHECK(netctl_result_converged(nce.handle) == 1);

  double flow = 0.0;
  REQUIRE(netctl_result_path_flow(ue.handle, 0, 0, 1, &flow) == NETCTL_OK);
  CHECK(flow == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(netctl_result_path_flow(ue.handle, 0, 0, 7, &flow) == NETCTL_E_INVALID_ARGUMENT);
  double load = 0.0;
  REQUIRE(netctl_result_edge_load(so.handle, 0, &load) == NETCTL_OK);
  CHECK(load == doctest::Approx(0.5).epsilon(1e-6));
  double cost = 0.0;
  REQUIRE(netctl_result_controller_cost(nce.handle, 0, &cost) == NETCTL_OK);
  CHECK(cost == doctest::Approx(1.5).epsilon(1e-6));

  const double* trace = nullptr;
  const std::size_t n = netctl_result_potential_trace(nce.handle, &trace);
  CHECK(n > 0);
  CHECK(trace != nullptr);
}

TEST_CASE("non-convergence still returns a result") {
  Game g;
  REQUIRE(netctl_game_braess(1.0, nullptr, 0, &g.handle) == NETCTL_OK);
  netctl_solve_options options;
  netctl_solve_options_init(NETCTL_RESULT_UE, &options);
  options.max_iters = 1;
  Result r;
  CHECK(netctl_solve_ue(g.handle, &options, &r.handle) == NETCTL_E_NOT_CONVERGED);
  REQUIRE(r.handle != nullptr);
  CHECK(netctl_result_converged(r.handle) == 0);
  CHECK(netctl_result_social_cost(r.handle) > 0.0);
}

TEST_CASE("builders and control queries") {
  Game base, prop, split;
  REQUIRE(netctl_game_pigou(2.0, nullptr, 0, &base.handle) == NETCTL_OK);
  REQUIRE(netctl_game_with_proportional(base.handle, 4, &prop.handle) == NETCTL_OK);
  int is_prop = 0;
  REQUIRE(netctl_game_is_proportional(prop.handle, 1e-12, &is_prop) == NETCTL_OK);
  CHECK(is_prop == 1);
  const double fractions[] = {0.7, 0.3};
  REQUIRE(netctl_game_with_fractions(base.handle, fractions, 2, &split.handle) == NETCTL_OK);
  double share = 0.0;
  REQUIRE(netctl_game_share_of_control(split.handle, "2", &share) == NETCTL_OK);
  CHECK(share == doctest::Approx(0.3));
  CHECK(netctl_game_share_of_control(split.handle, "9", &share) == NETCTL_E_UNKNOWN_ID);
  const double bad[] = {0.7, 0.7};
  Game invalid;
  REQUIRE(netctl_game_with_fractions(base.handle, bad, 2, &invalid.handle) == NETCTL_OK);
  char* report = nullptr;
  CHECK(netctl_game_validate(invalid.handle, &report) == NETCTL_E_VALIDATION);
  netctl_string_free(report);

  Result nce;
  REQUIRE(netctl_solve_nce(prop.handle, nullptr, &nce.handle) == NETCTL_OK);
  CHECK(netctl_result_social_cost(nce.handle) ==
        doctest::Approx(netctl_pigou_nce_social_cost(2.0, 4)).epsilon(1e-6));
}

TEST_CASE("json round trip") {
  Game g;
  REQUIRE(netctl_game_load_file((kDataDir + "/braess_p2_r3.game").c_str(), 0, &g.handle) ==
          NETCTL_OK);
  Result nce;
  REQUIRE(netctl_solve_nce(g.handle, nullptr, &nce.handle) == NETCTL_OK);
  char* json = nullptr;
  REQUIRE(netctl_result_to_json(nce.handle, &json) == NETCTL_OK);
  const std::string text = Take(json);
  Result back;
  REQUIRE(netctl_result_from_json(g.handle, text.c_str(), &back.handle) == NETCTL_OK);
  CHECK(std::abs(netctl_result_social_cost(back.handle) -
                 netctl_result_social_cost(nce.handle)) <= 1e-12);
  CHECK(netctl_result_get_kind(back.handle) == NETCTL_RESULT_NCE);
  for (std::size_t r = 0; r < 3; ++r) {
    double a = 0.0, b = 0.0;
    netctl_result_controller_cost(nce.handle, r, &a);
    netctl_result_controller_cost(back.handle, r, &b);
    CHECK(std::abs(a - b) <= 1e-12);
  }

  char* game_json = nullptr;
  REQUIRE(netctl_game_to_json(g.handle, &game_json) == NETCTL_OK);
  Game reloaded;
  CHECK(netctl_game_load_string(game_json, 0, &reloaded.handle) == NETCTL_OK);
  netctl_string_free(game_json);

  Result junk;
  CHECK(netctl_result_from_json(g.handle, "[1,2", &junk.handle) == NETCTL_E_PARSE);
}

TEST_CASE("closed forms") {
  CHECK(netctl_pigou_nce_flow(1.0, 2) == doctest::Approx(1.0 / 3.0));
  CHECK(netctl_pigou_nce_social_cost(1.0, 2) == doctest::Approx(7.0 / 9.0));
  CHECK(netctl_pigou_so_social_cost(1.0) == doctest::Approx(0.75));
  CHECK(netctl_poa_closed_form(1.0, 2) == doctest::Approx(28.0 / 27.0));
  CHECK(netctl_poa_limit(1.0) == doctest::Approx(4.0 / 3.0));
  CHECK(std::isnan(netctl_pigou_nce_flow(-1.0, 2)));
  CHECK(std::strlen(netctl_last_error()) > 0);
  CHECK(std::isnan(netctl_poa_closed_form(1.0, 0)));
  const double down[] = {3.0, 2.0, 2.0};
  const double up[] = {3.0, 2.0, 2.5};
  CHECK(netctl_verify_potential_descent(down, 3, 1e-9) == 1);
  CHECK(netctl_verify_potential_descent(up, 3, 1e-9) == 0);
}

TEST_CASE("sweeps") {
  const double ps[] = {1.0};
  const long rs[] = {1, 2};
  char* csv = nullptr;
  REQUIRE(netctl_poa_sweep_csv(ps, 1, rs, 2, 1, nullptr, &csv) == NETCTL_OK);
  const std::string sweep = Take(csv);
  CHECK(sweep.find('\n') != std::string::npos);

  Game g;
  REQUIRE(netctl_game_pigou(1.0, nullptr, 0, &g.handle) == NETCTL_OK);
  REQUIRE(netctl_surface_csv(g.handle, 2, 0.25, nullptr, &csv) == NETCTL_OK);
  CHECK(Take(csv).find('\n') != std::string::npos);
  CHECK(netctl_surface_csv(g.handle, 4, 0.25, nullptr, &csv) == NETCTL_E_INVALID_ARGUMENT);
}

TEST_CASE("learning and share dynamics") {
  Game braess;
  REQUIRE(netctl_game_braess(1.0, nullptr, 0, &braess.handle) == NETCTL_OK);
  netctl_learn_summary learn{};
  REQUIRE(netctl_learn(braess.handle, 300, 100, 0, 5, nullptr, &learn) == NETCTL_OK);
  CHECK(learn.num_actions == 66);
  CHECK(learn.so_social_cost == doctest::Approx(1.5).epsilon(1e-9));
  CHECK(learn.trailing_mean >= 1.5 - 1e-9);

  Game pigou;
  REQUIRE(netctl_game_pigou(1.0, nullptr, 0, &pigou.handle) == NETCTL_OK);
  netctl_os_choice_summary os{};
  char* csv = nullptr;
  REQUIRE(netctl_os_choice(pigou.handle, 2, nullptr, 0.0, 0.0, 0, &csv, &os) == NETCTL_OK);
  CHECK(Take(csv).rfind("step,", 0) == 0);
  CHECK(os.converged == 1);
  CHECK(os.proportionality_deviation < 1e-5);
  CHECK(os.social_cost == doctest::Approx(7.0 / 9.0).epsilon(1e-4));
  CHECK(os.nce_social_cost == doctest::Approx(7.0 / 9.0).epsilon(1e-6));

  const double start[] = {0.9, 0.3};
  CHECK(netctl_os_choice(pigou.handle, 2, start, 0.0, 0.0, 0, nullptr, &os) ==
        NETCTL_E_INFEASIBLE_FLOWS);
}

}  // namespace
