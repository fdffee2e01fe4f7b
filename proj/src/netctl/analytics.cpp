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

#include "netctl/analytics.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <sstream>

#include "netctl/error.hpp"
#include "netctl/instances.hpp"
#include "netctl/parallel.hpp"

namespace netctl {
namespace {

void CheckDegree(double p) {
  if (!(p > 0.0) || !std::isfinite(p)) {
    throw Error(ErrorCode::kInvalidArgument, "degree p must be a finite value > 0");
  }
}

void CheckQuery(const PoaQuery& q) {
  CheckDegree(q.p);
  if (q.num_controllers < 1) {
    throw Error(ErrorCode::kInvalidArgument, "need at least one controller");
  }
}

}  // namespace

std::string FormatDouble(double value) {
  char buffer[64];
  const auto [end, ec] = std::to_chars(buffer, buffer + sizeof(buffer), value);
  return ec == std::errc() ? std::string(buffer, end) : std::string("nan");
}

double PigouNceFlow(const PoaQuery& q) {
  CheckQuery(q);
  const double p = q.p;
  const double r = static_cast<double>(q.num_controllers);
  return std::pow(p * std::pow(r, p - 1.0) + std::pow(r, p), -1.0 / p);
}

double PigouNceSocialCost(const PoaQuery& q) {
  CheckQuery(q);
  const double p = q.p;
  const double r = static_cast<double>(q.num_controllers);
  const double base = p * std::pow(r, p - 1.0) + std::pow(r, p);
  return std::pow(r, p + 1.0) * std::pow(base, -1.0 - 1.0 / p) + 1.0 -
         r * std::pow(base, -1.0 / p);
}

double PigouSoSocialCost(double p) {
  CheckDegree(p);
  return std::pow(p + 1.0, -1.0 - 1.0 / p) + 1.0 - std::pow(p + 1.0, -1.0 / p);
}

double PoaClosedForm(const PoaQuery& q) {
  return PigouNceSocialCost(q) / PigouSoSocialCost(q.p);
}

double PoaLimit(double p) {
  CheckDegree(p);
  const double lead = std::pow(p + 1.0, 1.0 / p + 1.0);
  return lead / (lead - p);
}

double WorstCaseThreshold(const PoaQuery& q) { return PigouNceFlow(q); }

std::vector<ThresholdCheck> ScanThresholdInequality(const std::vector<double>& ps,
                                                    const std::vector<long>& rs) {
  std::vector<ThresholdCheck> cells;
  for (double p : ps) {
    for (long r : rs) {
      ThresholdCheck cell;
      cell.p = p;
      cell.num_controllers = r;
      cell.threshold = WorstCaseThreshold({p, r});
      cell.reciprocal = 1.0 / static_cast<double>(r);
      cell.holds = cell.threshold >= cell.reciprocal;
      cells.push_back(cell);
    }
  }
  return cells;
}

EmpiricalPoa ComputeEmpiricalPoa(const GameInstance& instance,
                                 const EmpiricalPoaOptions& options) {
  if (options.num_seeds < 1) {
    throw Error(ErrorCode::kInvalidArgument, "need at least one seed");
  }
  EmpiricalPoa out;
  out.converged = true;
  for (int seed = 0; seed < options.num_seeds; ++seed) {
    NceOptions nce = options.nce;
    nce.seed = static_cast<std::uint64_t>(seed);
    const NceResult result = SolveNce(instance, nce);
    out.converged = out.converged && result.converged;
    out.worst_nce_cost = seed == 0 ? result.social_cost
                                   : std::max(out.worst_nce_cost, result.social_cost);
  }
  const EquilibriumResult so = SolveSo(instance, options.so);
  out.converged = out.converged && so.converged;
  out.so_cost = so.social_cost;
  out.poa = out.worst_nce_cost / out.so_cost;
  return out;
}

std::string SweepGrid::ToCsv() const {
  std::ostringstream out;
  for (const std::string& axis : axes) out << axis << ",";
  out << "social_cost\n";
  for (std::size_t k = 0; k < points.size(); ++k) {
    for (double coordinate : points[k]) out << FormatDouble(coordinate) << ",";
    out << FormatDouble(social_cost[k]) << "\n";
  }
  return out.str();
}

SweepGrid SocialCostSurface(const GameInstance& tmpl, long num_controllers,
                            double step, const NceOptions& options) {
  if (!(step > 0.0) || !std::isfinite(step)) {
    throw Error(ErrorCode::kInvalidArgument, "grid step must be > 0");
  }
  if (num_controllers != 2 && num_controllers != 3) {
    throw Error(ErrorCode::kInvalidArgument, "surfaces support 2 or 3 controllers");
  }
  const double cells = std::round(1.0 / step);
  if (cells < 1.0 || std::abs(cells * step - 1.0) > 1e-9) {
    throw Error(ErrorCode::kInvalidArgument, "grid step must divide 1");
  }
  const long n = static_cast<long>(cells);

  SweepGrid grid;
  std::vector<std::vector<double>> fractions;
  if (num_controllers == 2) {
    grid.axes = {"d1"};
    for (long k = 0; k <= n; ++k) {
      const double d1 = static_cast<double>(k) / cells;
      grid.points.push_back({d1});
      fractions.push_back({d1, static_cast<double>(n - k) / cells});
    }
  } else {
    grid.axes = {"d1", "d2"};
    for (long k1 = 0; k1 <= n; ++k1) {
      for (long k2 = 0; k1 + k2 <= n; ++k2) {
        const double d1 = static_cast<double>(k1) / cells;
        const double d2 = static_cast<double>(k2) / cells;
        grid.points.push_back({d1, d2});
        fractions.push_back({d1, d2, static_cast<double>(n - k1 - k2) / cells});
      }
    }
  }
  grid.social_cost.assign(grid.points.size(), 0.0);
  std::vector<char> converged(grid.points.size(), 1);
  ParallelFor(grid.points.size(), [&](std::size_t k) {
    const NceResult result = SolveNce(WithUniformFractions(tmpl, fractions[k]), options);
    grid.social_cost[k] = result.social_cost;
    converged[k] = result.converged ? 1 : 0;
  });
  grid.converged = std::all_of(converged.begin(), converged.end(),
                               [](char c) { return c != 0; });
  return grid;
}

constexpr long kMaxEmpiricalControllers = 64;

std::vector<PoaSweepRow> PoaSweep(const std::vector<double>& ps,
                                  const std::vector<long>& rs, bool empirical,
                                  const EmpiricalPoaOptions& options) {
  if (ps.empty() || rs.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "p and R ranges must be non-empty");
  }
  std::vector<PoaSweepRow> rows;
  for (double p : ps) {
    for (long r : rs) {
      PoaSweepRow row;
      row.p = p;
      row.num_controllers = r;
      row.closed = PoaClosedForm({p, r});
      row.limit = PoaLimit(p);
      row.has_empirical = empirical && r <= kMaxEmpiricalControllers;
      rows.push_back(row);
    }
  }
  if (!empirical) return rows;
  ParallelFor(rows.size(), [&](std::size_t k) {
    PoaSweepRow& row = rows[k];
    if (!row.has_empirical) return;
    const GameInstance pigou = PigouInstance(
        row.p, ProportionalFractions(static_cast<std::size_t>(row.num_controllers)));
    const EmpiricalPoa poa = ComputeEmpiricalPoa(pigou, options);
    row.empirical = poa.poa;
    row.converged = poa.converged;
  });
  return rows;
}

std::string PoaSweepCsv(const std::vector<PoaSweepRow>& rows) {
  std::ostringstream out;
  out << "p,R,poa_closed,poa_empirical,poa_limit\n";
  for (const PoaSweepRow& row : rows) {
    out << FormatDouble(row.p) << "," << row.num_controllers << ","
        << FormatDouble(row.closed) << ","
        << (row.has_empirical ? FormatDouble(row.empirical) : std::string()) << ","
        << FormatDouble(row.limit) << "\n";
  }
  return out.str();
}

}  // namespace netctl
