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

#ifndef NETCTL_NETCTL_H_
#define NETCTL_NETCTL_H_

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#if defined(NETCTL_BUILDING_LIBRARY)
#define NETCTL_API __declspec(dllexport)
#else
#define NETCTL_API __declspec(dllimport)
#endif
#else
#define NETCTL_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum netctl_status {
  NETCTL_OK = 0,
  NETCTL_E_INVALID_ARGUMENT = 1,
  NETCTL_E_PARSE = 2,
  NETCTL_E_VALIDATION = 3,
  NETCTL_E_NO_PATH = 4,
  NETCTL_E_TOO_MANY_PATHS = 5,
  NETCTL_E_INFEASIBLE_FLOWS = 6,
  // The call produced a result, but the solver stopped before converging.
  NETCTL_E_NOT_CONVERGED = 7,
  NETCTL_E_UNKNOWN_ID = 8,
  NETCTL_E_INTERNAL = 9,
} netctl_status;

typedef struct netctl_game netctl_game;
typedef struct netctl_result netctl_result;

typedef enum netctl_result_kind {
  NETCTL_RESULT_UE = 0,
  NETCTL_RESULT_SO = 1,
  NETCTL_RESULT_NCE = 2,
} netctl_result_kind;

// Solver settings. Zero-initialize and call netctl_solve_options_init to get
// the defaults for the chosen solver.
typedef struct netctl_solve_options {
  double tol;
  double flow_tol;
  long max_iters;
  uint64_t seed;
} netctl_solve_options;

// Message of the last failed call on this thread, "" if none.
NETCTL_API const char* netctl_last_error(void);
NETCTL_API const char* netctl_status_name(netctl_status status);
// Frees strings returned through char** out-parameters.
NETCTL_API void netctl_string_free(char* s);

NETCTL_API void netctl_solve_options_init(netctl_result_kind kind,
                                          netctl_solve_options* options);

// Games.
NETCTL_API netctl_status netctl_game_load_file(const char* path, size_t max_paths,
                                               netctl_game** out);
NETCTL_API netctl_status netctl_game_load_string(const char* json, size_t max_paths,
                                                 netctl_game** out);
NETCTL_API netctl_status netctl_game_pigou(double p, const double* fractions,
                                           size_t num_controllers, netctl_game** out);
NETCTL_API netctl_status netctl_game_braess(double p, const double* fractions,
                                            size_t num_controllers, netctl_game** out);
// Replaces the controllers of `game` by R proportional ones.
NETCTL_API netctl_status netctl_game_with_proportional(const netctl_game* game, size_t R,
                                                       netctl_game** out);
// Replaces the controllers by ones owning fractions[r] of every population.
NETCTL_API netctl_status netctl_game_with_fractions(const netctl_game* game,
                                                    const double* fractions, size_t R,
                                                    netctl_game** out);
NETCTL_API void netctl_game_free(netctl_game* game);

NETCTL_API netctl_status netctl_game_to_json(const netctl_game* game, char** out);
// NETCTL_OK when valid; NETCTL_E_VALIDATION otherwise. The report lists
// every violated invariant, one per line.
NETCTL_API netctl_status netctl_game_validate(const netctl_game* game, char** report);
NETCTL_API size_t netctl_game_num_controllers(const netctl_game* game);
NETCTL_API size_t netctl_game_num_populations(const netctl_game* game);
NETCTL_API size_t netctl_game_num_edges(const netctl_game* game);
NETCTL_API netctl_status netctl_game_share_of_control(const netctl_game* game,
                                                      const char* controller, double* out);
NETCTL_API netctl_status netctl_game_is_proportional(const netctl_game* game, double tol,
                                                     int* out);

// Solvers. On NETCTL_E_NOT_CONVERGED `*out` still holds the last iterate.
NETCTL_API netctl_status netctl_solve_ue(const netctl_game* game,
                                         const netctl_solve_options* options,
                                         netctl_result** out);
NETCTL_API netctl_status netctl_solve_so(const netctl_game* game,
                                         const netctl_solve_options* options,
                                         netctl_result** out);
NETCTL_API netctl_status netctl_solve_nce(const netctl_game* game,
                                          const netctl_solve_options* options,
                                          netctl_result** out);
NETCTL_API void netctl_result_free(netctl_result* result);

NETCTL_API netctl_result_kind netctl_result_get_kind(const netctl_result* result);
NETCTL_API double netctl_result_social_cost(const netctl_result* result);
NETCTL_API double netctl_result_potential(const netctl_result* result);
NETCTL_API int netctl_result_converged(const netctl_result* result);
// Iterations for UE/SO, best-response rounds for NCE.
NETCTL_API long netctl_result_iterations(const netctl_result* result);
// Flow of controller r, population i on path s.
NETCTL_API netctl_status netctl_result_path_flow(const netctl_result* result, size_t r,
                                                 size_t i, size_t s, double* out);
NETCTL_API netctl_status netctl_result_edge_load(const netctl_result* result, size_t e,
                                                 double* out);
// Cost of controller r at the result.
NETCTL_API netctl_status netctl_result_controller_cost(const netctl_result* result,
                                                       size_t r, double* out);
// Beckmann potential after each best response (NCE only).
NETCTL_API size_t netctl_result_potential_trace(const netctl_result* result,
                                                const double** values);
NETCTL_API netctl_status netctl_result_to_json(const netctl_result* result, char** out);
// Rebuilds a result for `game` from the flows of a serialized result,
// re-evaluating costs from scratch.
NETCTL_API netctl_status netctl_result_from_json(const netctl_game* game, const char* json,
                                                 netctl_result** out);

NETCTL_API int netctl_verify_potential_descent(const double* trace, size_t n, double slack);

// Closed forms on the proportional Pigou game with R controllers. The flow is
// what each controller routes on the variable-cost edge. Invalid arguments
// give NaN and set netctl_last_error().
NETCTL_API double netctl_pigou_nce_flow(double p, long R);
NETCTL_API double netctl_pigou_nce_social_cost(double p, long R);
NETCTL_API double netctl_pigou_so_social_cost(double p);
NETCTL_API double netctl_poa_closed_form(double p, long R);
NETCTL_API double netctl_poa_limit(double p);

// Sweeps and experiments, rendered as CSV.
NETCTL_API netctl_status netctl_poa_sweep_csv(const double* ps, size_t num_ps,
                                              const long* rs, size_t num_rs, int empirical,
                                              const netctl_solve_options* options,
                                              char** csv);
NETCTL_API netctl_status netctl_surface_csv(const netctl_game* game, long R, double step,
                                            const netctl_solve_options* options,
                                            char** csv);

typedef struct netctl_learn_summary {
  double trailing_mean;
  double nce_social_cost;
  double so_social_cost;
  double max_normalized_regret;
  size_t num_actions;
} netctl_learn_summary;

NETCTL_API netctl_status netctl_learn(const netctl_game* game, long rounds, long window,
                                      int grid_points, uint64_t seed, char** csv,
                                      netctl_learn_summary* summary);

typedef struct netctl_os_choice_summary {
  int converged;
  size_t steps;
  double proportionality_deviation;
  double cost_spread;
  double social_cost;
  double nce_social_cost;
} netctl_os_choice_summary;

// Shares start at start[i * R + r] for population i; a null `start` splits
// every population in the ratio R : R-1 : ... : 1. `nce_social_cost` is
// the social cost of the proportional game with R controllers.
NETCTL_API netctl_status netctl_os_choice(const netctl_game* game, size_t R,
                                          const double* start, double eta, double tol,
                                          long max_steps, char** csv,
                                          netctl_os_choice_summary* summary);

#ifdef __cplusplus
}  // extern "C"
#endif

#endif  // NETCTL_NETCTL_H_
