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

#include <sys/wait.h>

#include <array>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <sstream>
#include <string>

#include "doctest.h"
#include "json.hpp"
#include "netctl/netctl.h"

namespace {

const std::string kCli = NETCTL_CLI;
const std::string kDataDir = NETCTL_DATA_DIR;

struct Run {
  int status = -1;
  std::string out;
};

// Runs the CLI with `args`, capturing stdout; stderr is discarded.
Run Cli(const std::string& args) {
  Run run;
  const std::string command = kCli + " " + args + " 2>/dev/null";
  FILE* pipe = popen(command.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::array<char, 4096> buffer;
  std::size_t n = 0;
  while ((n = std::fread(buffer.data(), 1, buffer.size(), pipe)) > 0) run.out.append(buffer.data(), n);
  const int raw = pclose(pipe);
  run.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  return run;
}

std::string Data(const std::string& name) { return kDataDir + "/" + name; }

double SocialCost(const Run& run) {
  return nlohmann::json::parse(run.out).at("social_cost").get<double>();
}

int CountLines(const std::string& s) {
  int lines = 0;
  for (char c : s) lines += c == '\n';
  return lines;
}

TEST_CASE("equilibrium subcommands") {
  const Run ue = Cli("ue " + Data("pigou_p1.game"));
  CHECK(ue.status == 0);
  CHECK(SocialCost(ue) == doctest::Approx(1.0).epsilon(1e-6));
  const Run so = Cli("so " + Data("pigou_p1.game"));
  CHECK(so.status == 0);
  CHECK(SocialCost(so) == doctest::Approx(0.75).epsilon(1e-6));
  const Run braess = Cli("so " + Data("braess_p2.game"));
  CHECK(std::abs(SocialCost(braess) - 1.23) <= 0.005);
}

TEST_CASE("nce subcommand") {
  const Run two = Cli("nce " + Data("pigou_p1_r2.game"));
  CHECK(two.status == 0);
  CHECK(std::abs(SocialCost(two) - 7.0 / 9.0) <= 1e-6);
  const nlohmann::json doc = nlohmann::json::parse(two.out);
  CHECK(doc.at("kind") == "nce");
  CHECK(doc.at("potential_trace").size() > 0);

  CHECK(SocialCost(Cli("nce " + Data("pigou_p1_r1.game"))) == doctest::Approx(0.75).epsilon(1e-6));
  const double seed1 = SocialCost(Cli("nce " + Data("braess_p1_r2.game") + " --seed 1"));
  const double seed3 = SocialCost(Cli("nce " + Data("braess_p1_r2.game") + " --seed 3"));
  CHECK(std::abs(seed1 - seed3) <= 1e-5);
}

TEST_CASE("exit codes") {
  CHECK(Cli("validate " + Data("braess_p1_r3.game")).status == 0);
  CHECK(Cli("ue " + Data("missing.game")).status == 1);
  CHECK(Cli("frobnicate").status == 1);
  CHECK(Cli("ue " + Data("pigou_p1.game") + " --tol -1").status == 1);
  const Run stopped = Cli("ue " + Data("braess_p1.game") + " --max-iters 1");
  CHECK(stopped.status == 2);
  CHECK(nlohmann::json::parse(stopped.out).at("converged") == false);
}

TEST_CASE("writes to --out") {
  const std::string path = "cli_test_out.json";
  std::remove(path.c_str());
  const Run run = Cli("so " + Data("pigou_p1.game") + " --out " + path);
  CHECK(run.status == 0);
  CHECK(run.out.empty());
  FILE* f = std::fopen(path.c_str(), "r");
  REQUIRE(f != nullptr);
  std::fclose(f);
  std::remove(path.c_str());
}

TEST_CASE("poa sweep rows") {
  const Run run = Cli("poa-sweep --p 1,2 --R 1,2,1000000");
  REQUIRE(run.status == 0);
  std::istringstream in(run.out);
  std::string line;
  std::getline(in, line);
  CHECK(line.rfind("p,R,poa_closed", 0) == 0);
  int rows = 0;
  while (std::getline(in, line)) {
    ++rows;
    double p = 0.0, r = 0.0, closed = 0.0;
    REQUIRE(std::sscanf(line.c_str(), "%lf,%lf,%lf", &p, &r, &closed) == 3);
    if (p == 1.0 && r == 1.0) CHECK(closed == doctest::Approx(1.0).epsilon(1e-12));
    if (p == 1.0 && r == 2.0) CHECK(std::abs(closed - 1.037037) <= 1e-6);
    if (p == 2.0 && r == 1e6) CHECK(std::abs(closed - 1.6258) <= 1e-4);
  }
  CHECK(rows == 6);
  CHECK(Cli("poa-sweep --p 0 --R 1").status == 1);
  CHECK(Cli("poa-sweep --p 1 --R 3:1").status == 1);
}

TEST_CASE("surface csv") {
  const Run run = Cli("surface " + Data("pigou_p1.game") + " --R 2 --step 0.05");
  REQUIRE(run.status == 0);
  CHECK(CountLines(run.out) == 22);
  std::istringstream in(run.out);
  std::string line;
  std::getline(in, line);
  double best = -1.0, best_d = -1.0;
  while (std::getline(in, line)) {
    double d = 0.0, sc = 0.0;
    REQUIRE(std::sscanf(line.c_str(), "%lf,%lf", &d, &sc) == 2);
    if (sc > best) {
      best = sc;
      best_d = d;
    }
  }
  CHECK(best_d >= 1.0 / 3.0 - 1e-9);
  CHECK(best_d <= 2.0 / 3.0 + 1e-9);
}

TEST_CASE("os choice reaches proportional shares") {
  const Run run = Cli("os-choice " + Data("pigou_p1.game") + " --R 2 --start 0.9,0.1");
  REQUIRE(run.status == 0);
  std::istringstream in(run.out);
  std::string line, last1, last2;
  while (std::getline(in, line)) {
    last1 = last2;
    last2 = line;
  }
  for (const std::string& row : {last1, last2}) {
    int step = 0, controller = 0;
    double share = 0.0;
    char pop[16];
    REQUIRE(std::sscanf(row.c_str(), "%d,%15[^,],%d,%lf", &step, pop, &controller, &share) == 4);
    CHECK(std::abs(share - 0.5) <= 1e-3);
  }
}

TEST_CASE("learn summary") {
  const Run run = Cli("learn " + Data("braess_p1_r3.game") + " --rounds 2000");
  CHECK(run.status == 0);
  CHECK(run.out.rfind("round,controller,cost,social_cost\n", 0) == 0);
  CHECK(CountLines(run.out) == 1 + 3 * 2000);
}

TEST_CASE("csv outputs are reproducible") {
  for (const std::string& args :
       {std::string("poa-sweep --p 1:2 --R 1:3 --empirical"), "surface " + Data("pigou_p1.game") + " --R 3 --step 0.1",
        "learn " + Data("braess_p1_r2.game") + " --rounds 300 --seed 9",
        "os-choice " + Data("pigou_p2_r1.game") + " --R 3"}) {
    const Run a = Cli(args);
    const Run b = Cli(args);
    CHECK(a.status == b.status);
    CHECK(!a.out.empty());
    CHECK(a.out == b.out);
  }
}

TEST_CASE("serialized results re-evaluate to the same social cost") {
  netctl_game* game = nullptr;
  for (const char* name : {"braess_p2_r3.game", "pigou_p3_r2.game"}) {
    REQUIRE(netctl_game_load_file(Data(name).c_str(), 0, &game) == NETCTL_OK);
    for (const char* cmd : {"ue", "so", "nce"}) {
      const Run run = Cli(std::string(cmd) + " " + Data(name));
      REQUIRE(run.status == 0);
      netctl_result* back = nullptr;
      REQUIRE(netctl_result_from_json(game, run.out.c_str(), &back) == NETCTL_OK);
      CHECK(std::abs(netctl_result_social_cost(back) - SocialCost(run)) <= 1e-12);
      netctl_result_free(back);
    }
    netctl_game_free(game);
  }
}

}  // namespace
