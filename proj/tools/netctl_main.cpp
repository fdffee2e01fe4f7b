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

// Command-line front end over the netctl C API.

#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "netctl/netctl.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInput = 1;
constexpr int kExitNotConverged = 2;

struct GlobalFlags {
  std::optional<double> tol;
  std::optional<long> max_iters;
  std::optional<std::uint64_t> seed;
  std::string out;
  std::size_t max_paths = 64;
};

struct GameDeleter {
  void operator()(netctl_game* g) const { netctl_game_free(g); }
};
struct ResultDeleter {
  void operator()(netctl_result* r) const { netctl_result_free(r); }
};
struct StringDeleter {
  void operator()(char* s) const { netctl_string_free(s); }
};
using GamePtr = std::unique_ptr<netctl_game, GameDeleter>;
using ResultPtr = std::unique_ptr<netctl_result, ResultDeleter>;
using StringPtr = std::unique_ptr<char, StringDeleter>;

class CliError : public std::runtime_error {
 public:
  CliError(int exit_code, const std::string& message)
      : std::runtime_error(message), exit_code_(exit_code) {}
  int exit_code() const { return exit_code_; }

 private:
  int exit_code_;
};

int ExitCodeFor(netctl_status status) {
  if (status == NETCTL_OK) return kExitOk;
  if (status == NETCTL_E_NOT_CONVERGED) return kExitNotConverged;
  return kExitInput;
}

// Throws unless `status` is OK or, when `allow_not_converged`, a
// non-convergence that still produced output.
void Check(netctl_status status, bool allow_not_converged = false) {
  if (status == NETCTL_OK) return;
  if (allow_not_converged && status == NETCTL_E_NOT_CONVERGED) return;
  std::string message = netctl_last_error();
  if (message.empty()) message = netctl_status_name(status);
  throw CliError(ExitCodeFor(status), message);
}

void WriteOutput(const GlobalFlags& flags, const std::string& text) {
  if (flags.out.empty() || flags.out == "-") {
    std::cout << text;
    std::cout.flush();
    return;
  }
  std::ofstream file(flags.out, std::ios::binary);
  if (!file) throw CliError(kExitInput, "cannot write '" + flags.out + "'");
  file << text;
}

GamePtr Load(const std::string& path, const GlobalFlags& flags) {
  netctl_game* game = nullptr;
  Check(netctl_game_load_file(path.c_str(), flags.max_paths, &game));
  GamePtr owned(game);
  char* report = nullptr;
  const netctl_status status = netctl_game_validate(owned.get(), &report);
  StringPtr owned_report(report);
  if (status == NETCTL_E_VALIDATION) {
    throw CliError(kExitInput, path + ": invalid game\n" + report);
  }
  Check(status);
  return owned;
}

netctl_solve_options Options(netctl_result_kind kind, const GlobalFlags& flags) {
  netctl_solve_options options;
  netctl_solve_options_init(kind, &options);
  if (flags.tol) options.tol = *flags.tol;
  if (flags.max_iters) options.max_iters = *flags.max_iters;
  if (flags.seed) options.seed = *flags.seed;
  return options;
}

std::vector<double> ParseNumberList(const std::string& text, const std::string& flag) {
  std::vector<double> values;
  const auto parse = [&](const std::string& token) {
    char* end = nullptr;
    errno = 0;
    const double v = std::strtod(token.c_str(), &end);
    if (token.empty() || *end != '\0' || errno != 0 || !std::isfinite(v)) {
      throw CliError(kExitInput, flag + ": bad number '" + token + "'");
    }
    return v;
  };
  if (text.find(':') != std::string::npos) {
    std::vector<double> parts;
    std::stringstream in(text);
    for (std::string token; std::getline(in, token, ':');) parts.push_back(parse(token));
    if (parts.size() < 2 || parts.size() > 3) {
      throw CliError(kExitInput, flag + ": range must be a:b or a:b:step");
    }
    const double step = parts.size() == 3 ? parts[2] : 1.0;
    if (!(step > 0.0) || parts[1] < parts[0]) {
      throw CliError(kExitInput, flag + ": empty range '" + text + "'");
    }
    const long n = static_cast<long>(std::floor((parts[1] - parts[0]) / step + 1e-9));
    for (long k = 0; k <= n; ++k) values.push_back(parts[0] + static_cast<double>(k) * step);
  } else {
    std::stringstream in(text);
    for (std::string token; std::getline(in, token, ',');) values.push_back(parse(token));
  }
  if (values.empty()) throw CliError(kExitInput, flag + ": empty list");
  return values;
}

std::vector<long> ParseCountList(const std::string& text, const std::string& flag) {
  std::vector<long> out;
  for (double v : ParseNumberList(text, flag)) {
    if (v < 1.0 || std::floor(v) != v) {
      throw CliError(kExitInput, flag + ": expected integers >= 1");
    }
    out.push_back(static_cast<long>(v));
  }
  return out;
}

void ReportSolve(const char* kind, const netctl_result* result) {
  std::fprintf(stderr, "%s social_cost=%.9f potential=%.9f iterations=%ld converged=%s\n",
               kind, netctl_result_social_cost(result), netctl_result_potential(result),
               netctl_result_iterations(result),
               netctl_result_converged(result) ? "true" : "false");
}

int RunSolve(const std::string& input, netctl_result_kind kind, const GlobalFlags& flags) {
  GamePtr game = Load(input, flags);
  const netctl_solve_options options = Options(kind, flags);
  netctl_result* raw = nullptr;
  netctl_status status;
  const char* name;
  switch (kind) {
    case NETCTL_RESULT_UE:
      status = netctl_solve_ue(game.get(), &options, &raw);
      name = "ue";
      break;
    case NETCTL_RESULT_SO:
      status = netctl_solve_so(game.get(), &options, &raw);
      name = "so";
      break;
    default:
      status = netctl_solve_nce(game.get(), &options, &raw);
      name = "nce";
      break;
  }
  ResultPtr result(raw);
  const std::string failure = netctl_last_error();
  Check(status, /*allow_not_converged=*/true);
  char* json = nullptr;
  Check(netctl_result_to_json(result.get(), &json));
  StringPtr owned(json);
  WriteOutput(flags, std::string(json) + "\n");
  ReportSolve(name, result.get());
  if (status == NETCTL_E_NOT_CONVERGED) {
    std::cerr << "netctl: " << failure << "\n";
    return kExitNotConverged;
  }
  return kExitOk;
}

int RunValidate(const std::string& input, const GlobalFlags& flags) {
  netctl_game* raw = nullptr;
  Check(netctl_game_load_file(input.c_str(), flags.max_paths, &raw));
  GamePtr game(raw);
  char* report = nullptr;
  const netctl_status status = netctl_game_validate(game.get(), &report);
  StringPtr owned(report);
  if (status == NETCTL_OK) {
    WriteOutput(flags, "ok: " + std::to_string(netctl_game_num_populations(game.get())) +
                           " populations, " +
                           std::to_string(netctl_game_num_edges(game.get())) + " edges, " +
                           std::to_string(netctl_game_num_controllers(game.get())) +
                           " controllers\n");
    return kExitOk;
  }
  std::cerr << input << ": invalid game\n" << report;
  return ExitCodeFor(status);
}

int RunCsv(netctl_status status, char* csv, const GlobalFlags& flags) {
  StringPtr owned(csv);
  const std::string failure = netctl_last_error();
  Check(status, /*allow_not_converged=*/true);
  WriteOutput(flags, csv);
  if (status == NETCTL_E_NOT_CONVERGED) {
    std::cerr << "netctl: " << failure << "\n";
    return kExitNotConverged;
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"netctl: routing games under operating-system control"};
  app.require_subcommand(1);
  app.fallthrough();
  GlobalFlags flags;
  app.add_option("--tol", flags.tol, "Convergence tolerance")
      ->check(CLI::PositiveNumber);
  app.add_option("--max-iters", flags.max_iters, "Iteration or round budget")
      ->check(CLI::PositiveNumber);
  app.add_option("--seed", flags.seed, "Random seed");
  app.add_option("--out", flags.out, "Output file (default: stdout)");
  app.add_option("--max-paths", flags.max_paths, "Path enumeration limit")
      ->check(CLI::PositiveNumber);

  std::string input;
  const auto add_input = [&](CLI::App* sub) {
    sub->add_option("game", input, "Game file")->required();
  };

  CLI::App* validate = app.add_subcommand("validate", "Check a game file");
  add_input(validate);
  CLI::App* ue = app.add_subcommand("ue", "User equilibrium");
  add_input(ue);
  CLI::App* so = app.add_subcommand("so", "Social optimum");
  add_input(so);
  CLI::App* nce = app.add_subcommand("nce", "Equilibrium of the control game");
  add_input(nce);

  CLI::App* sweep = app.add_subcommand("poa-sweep", "Price of anarchy table");
  std::string p_list = "1:4";
  std::string r_list = "1:6";
  bool empirical = false;
  sweep->add_option("--p", p_list, "Degrees: list a,b,c or range a:b[:step]");
  sweep->add_option("--R", r_list, "Controller counts: list or range");
  sweep->add_flag("--empirical", empirical, "Add solver-based values (Pigou)");

  CLI::App* surface = app.add_subcommand("surface", "Social cost over control fractions");
  add_input(surface);
  long surface_r = 2;
  double step = 0.05;
  surface->add_option("--R", surface_r, "Number of controllers (2 or 3)");
  surface->add_option("--step", step, "Grid step")->check(CLI::PositiveNumber);

  CLI::App* learn = app.add_subcommand("learn", "Repeated play with learning controllers");
  add_input(learn);
  long rounds = 2000;
  long window = 200;
  int grid_points = 11;
  learn->add_option("--rounds", rounds, "Rounds")->check(CLI::PositiveNumber);
  learn->add_option("--window", window, "Trailing window")->check(CLI::PositiveNumber);
  learn->add_option("--grid-points", grid_points, "Grid points per path")
      ->check(CLI::Range(2, 1000));

  CLI::App* os = app.add_subcommand("os-choice", "Populations choosing controllers");
  add_input(os);
  std::size_t os_r = 2;
  std::string start;
  double eta = 0.05;
  long max_steps = 10000;
  os->add_option("--R", os_r, "Number of controllers")->check(CLI::PositiveNumber);
  os->add_option("--start", start, "Initial shares a,b,... per population, concatenated");
  os->add_option("--eta", eta, "Step as a fraction of demand")->check(CLI::Range(0.0, 1.0));
  os->add_option("--max-steps", max_steps, "Step budget")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInput;
  }

  try {
    if (*validate) return RunValidate(input, flags);
    if (*ue) return RunSolve(input, NETCTL_RESULT_UE, flags);
    if (*so) return RunSolve(input, NETCTL_RESULT_SO, flags);
    if (*nce) return RunSolve(input, NETCTL_RESULT_NCE, flags);
    if (*sweep) {
      const std::vector<double> ps = ParseNumberList(p_list, "--p");
      const std::vector<long> rs = ParseCountList(r_list, "--R");
      const netctl_solve_options options = Options(NETCTL_RESULT_NCE, flags);
      char* csv = nullptr;
      const netctl_status status = netctl_poa_sweep_csv(
          ps.data(), ps.size(), rs.data(), rs.size(), empirical ? 1 : 0, &options, &csv);
      return RunCsv(status, csv, flags);
    }
    if (*surface) {
      GamePtr game = Load(input, flags);
      const netctl_solve_options options = Options(NETCTL_RESULT_NCE, flags);
      char* csv = nullptr;
      const netctl_status status =
          netctl_surface_csv(game.get(), surface_r, step, &options, &csv);
      return RunCsv(status, csv, flags);
    }
    if (*learn) {
      GamePtr game = Load(input, flags);
      netctl_learn_summary summary{};
      char* csv = nullptr;
      const netctl_status status = netctl_learn(game.get(), rounds, window, grid_points,
                                                flags.seed.value_or(1), &csv, &summary);
      const int code = RunCsv(status, csv, flags);
      std::fprintf(stderr,
                   "learn trailing_mean=%.6f nce_social_cost=%.6f so_social_cost=%.6f "
                   "relative_error=%.6f max_normalized_regret=%.6f actions=%zu\n",
                   summary.trailing_mean, summary.nce_social_cost, summary.so_social_cost,
                   std::abs(summary.trailing_mean - summary.nce_social_cost) /
                       summary.nce_social_cost,
                   summary.max_normalized_regret, summary.num_actions);
      return code;
    }
    if (*os) {
      GamePtr game = Load(input, flags);
      std::vector<double> shares;
      if (!start.empty()) {
        shares = ParseNumberList(start, "--start");
        if (shares.size() != os_r * netctl_game_num_populations(game.get())) {
          throw CliError(kExitInput, "--start needs R values per population");
        }
      }
      netctl_os_choice_summary summary{};
      char* csv = nullptr;
      const netctl_status status = netctl_os_choice(
          game.get(), os_r, shares.empty() ? nullptr : shares.data(), eta,
          flags.tol.value_or(0.0), flags.max_iters.value_or(max_steps), &csv, &summary);
      const int code = RunCsv(status, csv, flags);
      std::fprintf(stderr,
                   "os-choice converged=%s steps=%zu proportionality_deviation=%.3g "
                   "cost_spread=%.3g social_cost=%.9f proportional_nce_social_cost=%.9f\n",
                   summary.converged ? "true" : "false", summary.steps,
                   summary.proportionality_deviation, summary.cost_spread,
                   summary.social_cost, summary.nce_social_cost);
      return code;
    }
  } catch (const CliError& e) {
    std::cerr << "netctl: " << e.what() << "\n";
    return e.exit_code();
  }
  return kExitInput;
}
