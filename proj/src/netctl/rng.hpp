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

#ifndef NETCTL_RNG_HPP_
#define NETCTL_RNG_HPP_

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

namespace netctl {

// Seeded generator whose derived draws do not depend on the standard
// library's distribution implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  // Uniform in [0, 1).
  double Uniform() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  // Uniform point of the (n-1)-simplex scaled to `total`.
  std::vector<double> SimplexPoint(std::size_t n, double total) {
    std::vector<double> point(n);
    double sum = 0.0;
    for (double& x : point) {
      x = -std::log1p(-Uniform());
      sum += x;
    }
    for (double& x : point) x = sum > 0.0 ? total * x / sum : total / n;
    return point;
  }

  // Index drawn from the probability vector `weights`.
  std::size_t Categorical(const std::vector<double>& weights) {
    const double u = Uniform();
    double acc = 0.0;
    for (std::size_t k = 0; k < weights.size(); ++k) {
      acc += weights[k];
      if (u < acc) return k;
    }
    for (std::size_t k = weights.size(); k-- > 0;) {
      if (weights[k] > 0.0) return k;
    }
    return 0;
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace netctl

#endif  // NETCTL_RNG_HPP_
