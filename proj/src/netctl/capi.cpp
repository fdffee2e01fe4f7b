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

#include "netctl/netctl.h"

#include <algorithm>
#include <cstdlib>
#include <cstring>
#include <exception>
#include <limits>
#include <memory>
#include <new>
#include <optional>
#include <string>
#include <vector>

#include "netctl/analytics.hpp"
#include "netctl/control_game.hpp"
#include "netctl/equilibrium.hpp"
#include "netctl/error.hpp"
#include "netctl/game_io.hpp"
#include "netctl/instances.hpp"
#include "netctl/learning.hpp"
#include "netctl/os_choice.hpp"

struct netctl_game {
  netctl::GameInstance instance;
  std::string source;  // JSON text the game was parsed from, if any
};

struct netctl_result {
  netctl::GameInstance instance;
  netctl_result_kind kind = NETCTL_RESULT_UE;
  std::optional<netctl::EquilibriumResult> equilibrium;
  std::optional<netctl::NceResult> nce;

  const netctl::FlowProfile& flows() const {
    return nce ? nce->flows : equilibrium->flows;
  }
};

namespace {

using netctl::Error;
using netctl::ErrorCode;

thread_local std::string last_error;

netctl_status ToStatus(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return NETCTL_E_INVALID_ARGUMENT;
    case ErrorCode::kParse: return NETCTL_E_PARSE;
    case ErrorCode::kValidation: return NETCTL_E_VALIDATION;
    case ErrorCode::kNoPath: return NETCTL_E_NO_PATH;
    case ErrorCode::kTooManyPaths: return NETCTL_E_TOO_MANY_PATHS;
    case ErrorCode::kInfeasibleFlows: return NETCTL_E_INFEASIBLE_FLOWS;
    case ErrorCode::kNotConverged: return NETCTL_E_NOT_CONVERGED;
    case ErrorCode::kUnknownId: return NETCTL_E_UNKNOWN_ID;
  }
  return NETCTL_E_INTERNAL;
}

netctl_status Fail(netctl_status status, std::string message) {
  last_error = std::move(message);
  return status;
}

// Runs `body`, mapping exceptions to status codes.
template <typename Body>
netctl_status Guard(Body&& body) {
  last_error.clear();
  try {
    return body();
  } catch (const Error& e) {
    return Fail(ToStatus(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return Fail(NETCTL_E_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return Fail(NETCTL_E_INTERNAL, e.what());
  }
}

// For value-returning entry points: NaN with last_error set on failure.
template <typename Body>
double GuardValue(Body&& body) {
  double value = std::numeric_limits<double>::quiet_NaN();
  Guard([&] {
    value = body();
    return NETCTL_OK;
  });
  return value;
}

char* CopyString(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out == nullptr) throw std::bad_alloc();
  std::memcpy(out, s.data(), s.size() + 1);
  return out;
}

void RequireNonNull(const void* p, const char* name) {
  if (p == nullptr) {
    throw Error(ErrorCode::kInvalidArgument, std::string(name) + " must not be null");
  }
}

netctl_solve_options Defaults(netctl_result_kind kind, const netctl_solve_options* options) {
  if (options != nullptr) return *options;
  netctl_solve_options out;
  netctl_solve_options_init(kind, &out);
  return out;
}

netctl::SolveOptions ToSolveOptions(const netctl_solve_options& o) {
  netctl::SolveOptions out;
  out.tol = o.tol;
  out.flow_tol = o.flow_tol;
  out.max_iters = o.max_iters;
  out.seed = o.seed;
  return out;
}

netctl::NceOptions ToNceOptions(const netctl_solve_options& o) {
  netctl::NceOptions out;
  out.tol = o.tol;
  out.flow_tol = o.flow_tol;
  out.max_rounds = o.max_iters;
  out.seed = o.seed;
  return out;
}

std::vector<double> Fractions(const double* fractions, std::size_t n) {
  if (n == 0) return {1.0};
  RequireNonNull(fractions, "fractions");
  return std::vector<double>(fractions, fractions + n);
}

netctl_status Emit(netctl::GameInstance instance, netctl_game** out) {
  RequireNonNull(out, "out");
  *out = new netctl_game{std::move(instance), {}};
  return NETCTL_OK;
}

netctl_status Emit(std::unique_ptr<netctl_result> result, bool converged,
                   netctl_result** out) {
  *out = result.release();
  if (!converged) return Fail(NETCTL_E_NOT_CONVERGED, "solver did not converge");
  return NETCTL_OK;
}

}  // namespace

extern "C" {

const char* netctl_last_error(void) { return last_error.c_str(); }

const char* netctl_status_name(netctl_status status) {
  switch (status) {
    case NETCTL_OK: return "ok";
    case NETCTL_E_INVALID_ARGUMENT: return "invalid argument";
    case NETCTL_E_PARSE: return "parse error";
    case NETCTL_E_VALIDATION: return "validation error";
    case NETCTL_E_NO_PATH: return "no path";
    case NETCTL_E_TOO_MANY_PATHS: return "too many paths";
    case NETCTL_E_INFEASIBLE_FLOWS: return "infeasible flows";
    case NETCTL_E_NOT_CONVERGED: return "not converged";
    case NETCTL_E_UNKNOWN_ID: return "unknown id";
    case NETCTL_E_INTERNAL: return "internal error";
  }
  return "unknown status";
}

void netctl_string_free(char* s) { std::free(s); }

void netctl_solve_options_init(netctl_result_kind kind, netctl_solve_options* options) {
  if (options == nullptr) return;
  if (kind == NETCTL_RESULT_NCE) {
    const netctl::NceOptions d;
    *options = {d.tol, d.flow_tol, d.max_rounds, d.seed};
  } else {
    const netctl::SolveOptions d;
    *options = {d.tol, d.flow_tol, d.max_iters, d.seed};
  }
}

netctl_status netctl_game_load_file(const char* path, size_t max_paths, netctl_game** out) {
  return Guard([&] {
    RequireNonNull(path, "path");
    RequireNonNull(out, "out");
    std::string text = netctl::ReadTextFile(path);
    netctl::GameInstance instance;
    try {
      instance = netctl::ParseGame(text, max_paths == 0 ? netctl::kDefaultMaxPaths : max_paths);
    } catch (const Error& e) {
      throw Error(e.code(), std::string(path) + ": " + e.what());
    }
    *out = new netctl_game{std::move(instance), std::move(text)};
    return NETCTL_OK;
  });
}

netctl_status netctl_game_load_string(const char* json, size_t max_paths,
                                      netctl_game** out) {
  return Guard([&] {
    RequireNonNull(json, "json");
    RequireNonNull(out, "out");
    std::string text = json;
    netctl::GameInstance instance =
        netctl::ParseGame(text, max_paths == 0 ? netctl::kDefaultMaxPaths : max_paths);
    *out = new netctl_game{std::move(instance), std::move(text)};
    return NETCTL_OK;
  });
}

netctl_status netctl_game_pigou(double p, const double* fractions, size_t num_controllers,
                                netctl_game** out) {
  return Guard([&] {
    return Emit(netctl::PigouInstance(p, Fractions(fractions, num_controllers)), out);
  });
}

netctl_status netctl_game_braess(double p, const double* fractions, size_t num_controllers,
                                 netctl_game** out) {
  return Guard([&] {
    return Emit(netctl::BraessInstance(p, Fractions(fractions, num_controllers)), out);
  });
}

netctl_status netctl_game_with_proportional(const netctl_game* game, size_t R,
                                            netctl_game** out) {
  return Guard([&] {
    RequireNonNull(game, "game");
    return Emit(netctl::WithProportionalControl(game->instance, R), out);
  });
}

netctl_status netctl_game_with_fractions(const netctl_game* game, const double* fractions,
                                         size_t R, netctl_game** out) {
  return Guard([&] {
    RequireNonNull(game, "game");
    RequireNonNull(fractions, "fractions");
    return Emit(netctl::WithUniformFractions(game->instance,
                                             std::vector<double>(fractions, fractions + R)),
                out);
  });
}

void netctl_game_free(netctl_game* game) { delete game; }

netctl_status netctl_game_to_json(const netctl_game* game, char** out) {
  return Guard([&] {
    RequireNonNull(game, "game");
    RequireNonNull(out, "out");
    *out = CopyString(netctl::GameToJson(game->instance).dump(2));
    return NETCTL_OK;
  });
}

netctl_status netctl_game_validate(const netctl_game* game, char** report) {
  return Guard([&] {
    RequireNonNull(game, "game");
    const netctl::ValidationReport r = netctl::Validate(game->instance);
    const std::string text = game->source.empty()
                                 ? r.ToString()
                                 : netctl::AnnotateReport(r, game->source);
    if (report != nullptr) *report = CopyString(text);
    if (r.ok()) return NETCTL_OK;
    return Fail(NETCTL_E_VALIDATION, text);
  });
}

size_t netctl_game_num_controllers(const netctl_game* game) {
  return game == nullptr ? 0 : game->instance.assignment.size();
}

size_t netctl_game_num_populations(const netctl_game* game) {
  return game == nullptr ? 0 : game->instance.populations.size();
}

size_t netctl_game_num_edges(const netctl_game* game) {
  return game == nullptr ? 0 : game->instance.network.edges.size();
}

netctl_status netctl_game_share_of_control(const netctl_game* game, const char* controller,
                                           double* out) {
  return Guard([&] {
    RequireNonNull(game, "game");
    RequireNonNull(controller, "controller");
    RequireNonNull(out, "out");
    *out = netctl::ShareOfControl(game->instance, std::string(controller));
    return NETCTL_OK;
  });
}

netctl_status netctl_game_is_proportional(const netctl_game* game, double tol, int* out) {
  return Guard([&] {
    RequireNonNull(game, "game");
    RequireNonNull(out, "out");
    *out = netctl::IsProportional(game->instance, tol) ? 1 : 0;
    return NETCTL_OK;
  });
}

netctl_status netctl_solve_ue(const netctl_game* game, const netctl_solve_options* options,
                              netctl_result** out) {
  return Guard([&] {
    RequireNonNull(game, "game");
    RequireNonNull(out, "out");
    auto result = std::make_unique<netctl_result>();
    result->instance = game->instance;
    result->kind = NETCTL_RESULT_UE;
    result->equilibrium = netctl::SolveUe(
        game->instance, ToSolveOptions(Defaults(NETCTL_RESULT_UE, options)));
    const bool converged = result->equilibrium->converged;
    return Emit(std::move(result), converged, out);
  });
}

netctl_status netctl_solve_so(const netctl_game* game, const netctl_solve_options* options,
                              netctl_result** out) {
  return Guard([&] {
    RequireNonNull(game, "game");
    RequireNonNull(out, "out");
    auto result = std::make_unique<netctl_result>();
    result->instance = game->instance;
    result->kind = NETCTL_RESULT_SO;
    result->equilibrium = netctl::SolveSo(
        game->instance, ToSolveOptions(Defaults(NETCTL_RESULT_SO, options)));
    const bool converged = result->equilibrium->converged;
    return Emit(std::move(result), converged, out);
  });
}

netctl_status netctl_solve_nce(const netctl_game* game, const netctl_solve_options* options,
                               netctl_result** out) {
  return Guard([&] {
    RequireNonNull(game, "game");
    RequireNonNull(out, "out");
    auto result = std::make_unique<netctl_result>();
    result->instance = game->instance;
    result->kind = NETCTL_RESULT_NCE;
    result->nce = netctl::SolveNce(game->instance,
                                   ToNceOptions(Defaults(NETCTL_RESULT_NCE, options)));
    const bool converged = result->nce->converged;
    return Emit(std::move(result), converged, out);
  });
}

void netctl_result_free(netctl_result* result) { delete result; }

netctl_result_kind netctl_result_get_kind(const netctl_result* result) {
  return result == nullptr ? NETCTL_RESULT_UE : result->kind;
}

double netctl_result_social_cost(const netctl_result* result) {
  if (result == nullptr) return 0.0;
  return result->nce ? result->nce->social_cost : result->equilibrium->social_cost;
}

double netctl_result_potential(const netctl_result* result) {
  if (result == nullptr) return 0.0;
  return result->nce ? result->nce->potential : result->equilibrium->potential;
}

int netctl_result_converged(const netctl_result* result) {
  if (result == nullptr) return 0;
  return (result->nce ? result->nce->converged : result->equilibrium->converged) ? 1 : 0;
}

long netctl_result_iterations(const netctl_result* result) {
  if (result == nullptr) return 0;
  return result->nce ? result->nce->rounds : result->equilibrium->iterations;
}

netctl_status netctl_result_path_flow(const netctl_result* result, size_t r, size_t i,
                                      size_t s, double* out) {
  return Guard([&] {
    RequireNonNull(result, "result");
    RequireNonNull(out, "out");
    const auto& flow = result->flows().flow;
    if (r >= flow.size() || i >= flow[r].size() || s >= flow[r][i].size()) {
      throw Error(ErrorCode::kInvalidArgument, "flow index out of range");
    }
    *out = flow[r][i][s];
    return NETCTL_OK;
  });
}

netctl_status netctl_result_edge_load(const netctl_result* result, size_t e, double* out) {
  return Guard([&] {
    RequireNonNull(result, "result");
    RequireNonNull(out, "out");
    const auto& loads = result->flows().edge_loads;
    if (e >= loads.size()) throw Error(ErrorCode::kInvalidArgument, "edge out of range");
    *out = loads[e];
    return NETCTL_OK;
  });
}

netctl_status netctl_result_controller_cost(const netctl_result* result, size_t r,
                                            double* out) {
  return Guard([&] {
    RequireNonNull(result, "result");
    RequireNonNull(out, "out");
    if (r >= result->instance.assignment.size()) {
      throw Error(ErrorCode::kInvalidArgument, "controller out of range");
    }
    *out = result->nce ? result->nce->controller_costs[r].cost
                       : netctl::ControllerCost(result->instance, result->flows(), r).cost;
    return NETCTL_OK;
  });
}

size_t netctl_result_potential_trace(const netctl_result* result, const double** values) {
  if (result == nullptr || !result->nce) {
    if (values != nullptr) *values = nullptr;
    return 0;
  }
  if (values != nullptr) *values = result->nce->potential_trace.data();
  return result->nce->potential_trace.size();
}

netctl_status netctl_result_to_json(const netctl_result* result, char** out) {
  return Guard([&] {
    RequireNonNull(result, "result");
    RequireNonNull(out, "out");
    const nlohmann::json doc =
        result->nce ? netctl::ResultToJson(result->instance, *result->nce)
                    : netctl::ResultToJson(result->instance, *result->equilibrium,
                                           result->kind == NETCTL_RESULT_SO ? "so" : "ue");
    *out = CopyString(doc.dump(2));
    return NETCTL_OK;
  });
}

netctl_status netctl_result_from_json(const netctl_game* game, const char* json,
                                      netctl_result** out) {
  return Guard([&] {
    RequireNonNull(game, "game");
    RequireNonNull(json, "json");
    RequireNonNull(out, "out");
    nlohmann::json doc;
    try {
      doc = nlohmann::json::parse(json);
    } catch (const nlohmann::json::exception& e) {
      throw Error(ErrorCode::kParse, e.what());
    }
    if (!doc.is_object()) throw Error(ErrorCode::kParse, "result must be an object");
    const std::string kind = doc.value("kind", std::string("ue"));
    const bool converged = doc.value("converged", false);
    const netctl::GameInstance& instance = game->instance;
    const netctl::FlowProfile flows = netctl::FlowsFromJson(instance, doc);

    auto result = std::make_unique<netctl_result>();
    result->instance = instance;
    netctl::EquilibriumResult evaluated = netctl::EvaluateFlows(instance, flows);
    if (kind == "nce") {
      result->kind = NETCTL_RESULT_NCE;
      netctl::NceResult nce;
      nce.flows = flows;
      nce.social_cost = evaluated.social_cost;
      nce.potential = evaluated.potential;
      for (std::size_t r = 0; r < instance.assignment.size(); ++r) {
        nce.controller_costs.push_back(netctl::ControllerCost(instance, flows, r));
      }
      nce.rounds = doc.value("rounds", 0L);
      nce.potential_trace = doc.value("potential_trace", std::vector<double>{});
      nce.converged = converged;
      result->nce = std::move(nce);
    } else if (kind == "ue" || kind == "so") {
      result->kind = kind == "so" ? NETCTL_RESULT_SO : NETCTL_RESULT_UE;
      evaluated.iterations = doc.value("iterations", 0L);
      evaluated.relative_gap = doc.value("relative_gap", 0.0);
      evaluated.converged = converged;
      result->equilibrium = std::move(evaluated);
    } else {
      throw Error(ErrorCode::kParse, "unknown result kind '" + kind + "'");
    }
    *out = result.release();
    return NETCTL_OK;
  });
}

int netctl_verify_potential_descent(const double* trace, size_t n, double slack) {
  if (trace == nullptr && n > 0) return 0;
  return netctl::VerifyPotentialDescent(std::span<const double>(trace, n), slack) ? 1 : 0;
}

double netctl_pigou_nce_flow(double p, long R) {
  return GuardValue([&] { return netctl::PigouNceFlow({p, R}); });
}

double netctl_pigou_nce_social_cost(double p, long R) {
  return GuardValue([&] { return netctl::PigouNceSocialCost({p, R}); });
}

double netctl_pigou_so_social_cost(double p) {
  return GuardValue([&] { return netctl::PigouSoSocialCost(p); });
}

double netctl_poa_closed_form(double p, long R) {
  return GuardValue([&] { return netctl::PoaClosedForm({p, R}); });
}

double netctl_poa_limit(double p) {
  return GuardValue([&] { return netctl::PoaLimit(p); });
}

netctl_status netctl_poa_sweep_csv(const double* ps, size_t num_ps, const long* rs,
                                   size_t num_rs, int empirical,
                                   const netctl_solve_options* options, char** csv) {
  return Guard([&] {
    RequireNonNull(ps, "ps");
    RequireNonNull(rs, "rs");
    RequireNonNull(csv, "csv");
    netctl::EmpiricalPoaOptions opts;
    if (options != nullptr) {
      opts.nce = ToNceOptions(*options);
      opts.so.seed = options->seed;
    }
    const auto rows = netctl::PoaSweep(std::vector<double>(ps, ps + num_ps),
                                       std::vector<long>(rs, rs + num_rs), empirical != 0,
                                       opts);
    *csv = CopyString(netctl::PoaSweepCsv(rows));
    for (const auto& row : rows) {
      if (!row.converged) return Fail(NETCTL_E_NOT_CONVERGED, "a sweep point did not converge");
    }
    return NETCTL_OK;
  });
}

netctl_status netctl_surface_csv(const netctl_game* game, long R, double step,
                                 const netctl_solve_options* options, char** csv) {
  return Guard([&] {
    RequireNonNull(game, "game");
    RequireNonNull(csv, "csv");
    const netctl::SweepGrid grid = netctl::SocialCostSurface(
        game->instance, R, step, ToNceOptions(Defaults(NETCTL_RESULT_NCE, options)));
    *csv = CopyString(grid.ToCsv());
    if (!grid.converged) return Fail(NETCTL_E_NOT_CONVERGED, "a grid point did not converge");
    return NETCTL_OK;
  });
}

netctl_status netctl_learn(const netctl_game* game, long rounds, long window,
                           int grid_points, uint64_t seed, char** csv,
                           netctl_learn_summary* summary) {
  return Guard([&] {
    RequireNonNull(game, "game");
    netctl::LearnerConfig config;
    if (window > 0) config.window = window;
    if (grid_points > 0) config.grid_points = grid_points;
    const netctl::EpisodeLog log = netctl::RunEpisode(game->instance, rounds, config, seed);
    if (csv != nullptr) *csv = CopyString(log.ToCsv());
    if (summary != nullptr) {
      const netctl::NceResult nce = netctl::SolveNce(game->instance);
      summary->trailing_mean = log.trailing_mean;
      summary->nce_social_cost = nce.social_cost;
      summary->so_social_cost = log.so_cost;
      summary->max_normalized_regret =
          log.normalized_regret.empty()
              ? 0.0
              : *std::max_element(log.normalized_regret.begin(),
                                  log.normalized_regret.end());
      summary->num_actions =
          log.num_actions.empty()
              ? 0
              : *std::max_element(log.num_actions.begin(), log.num_actions.end());
      if (!nce.converged) return Fail(NETCTL_E_NOT_CONVERGED, "target NCE did not converge");
    }
    return NETCTL_OK;
  });
}

netctl_status netctl_os_choice(const netctl_game* game, size_t R, const double* start,
                               double eta, double tol, long max_steps, char** csv,
                               netctl_os_choice_summary* summary) {
  return Guard([&] {
    RequireNonNull(game, "game");
    const netctl::GameInstance& instance = game->instance;
    if (R == 0) throw Error(ErrorCode::kInvalidArgument, "R must be >= 1");
    const double weight_sum = static_cast<double>(R * (R + 1)) / 2.0;
    netctl::OsShareProfile y;
    for (std::size_t i = 0; i < instance.populations.size(); ++i) {
      std::vector<double> row(R);
      for (std::size_t r = 0; r < R; ++r) {
        row[r] = start != nullptr ? start[i * R + r]
                                  : instance.populations[i].demand *
                                        static_cast<double>(R - r) / weight_sum;
      }
      y.shares.push_back(std::move(row));
    }
    netctl::OsChoiceOptions opts;
    if (eta > 0.0) opts.eta = eta;
    if (tol > 0.0) opts.tol = tol;
    if (max_steps > 0) opts.max_steps = max_steps;
    const netctl::OsChoiceTrace trace = netctl::SolveOsGame(instance, R, y, opts);
    if (csv != nullptr) *csv = CopyString(trace.ToCsv());
    if (summary != nullptr) {
      summary->converged = trace.converged ? 1 : 0;
      summary->steps = trace.steps.empty() ? 0 : trace.steps.size() - 1;
      summary->proportionality_deviation = trace.final_proportionality_deviation;
      summary->cost_spread = trace.final_cost_spread;
      summary->social_cost = trace.steps.empty() ? 0.0 : trace.steps.back().social_cost;
      summary->nce_social_cost =
          netctl::SolveNce(netctl::WithProportionalControl(instance, R)).social_cost;
    }
    if (!trace.converged) return Fail(NETCTL_E_NOT_CONVERGED, "share dynamics did not converge");
    return NETCTL_OK;
  });
}

}  // extern "C"
