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

#ifndef NETCTL_BLOCK_SOLVER_INL_HPP_
#define NETCTL_BLOCK_SOLVER_INL_HPP_

#include <algorithm>
#include <cmath>
#include <limits>

namespace netctl {

template <typename Deriv, typename Curv>
double ConvexLineSearch(Deriv&& derivative, Curv&& curvature, double upper) {
  if (!(upper > 0.0)) return 0.0;
  if (derivative(0.0) >= 0.0) return 0.0;
  if (derivative(upper) <= 0.0) return upper;
  constexpr double kEps = std::numeric_limits<double>::epsilon();
  double lo = 0.0;
  double hi = upper;
  double t = 0.5 * upper;
  for (int iter = 0; iter < 200; ++iter) {
    const double d = derivative(t);
    if (d == 0.0) return t;
    if (d < 0.0) {
      lo = t;
    } else {
      hi = t;
    }
    const double h = curvature(t);
    double next = (std::isfinite(h) && h > 0.0) ? t - d / h : lo - 1.0;
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (hi - lo <= 2.0 * kEps * std::max(hi, kEps) ||
        std::abs(next - t) <= kEps * std::max(std::abs(t), kEps)) {
      return next;
    }
    t = next;
  }
  return t;
}

}  // namespace netctl

#endif  // NETCTL_BLOCK_SOLVER_INL_HPP_
