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

#ifndef NETCTL_COST_HPP_
#define NETCTL_COST_HPP_

#include <optional>
#include <vector>

namespace netctl {

// Nonnegative combination of power terms a * f^e. Integer exponents give the
// ordinary polynomial a_0 + a_1 f + ... + a_p f^p; real exponents are allowed
// so that Pigou-type templates can use a monomial x^p with non-integer p.
class CostPolynomial {
 public:
  struct Term {
    double coefficient = 0.0;
    double exponent = 0.0;
  };

  CostPolynomial() = default;

  // coefficients[j] multiplies f^j.
  static CostPolynomial FromCoefficients(const std::vector<double>& coefficients);
  static CostPolynomial Monomial(double coefficient, double exponent);
  static CostPolynomial FromTerms(std::vector<Term> terms);

  const std::vector<Term>& terms() const { return terms_; }

  // Dense a_0..a_p if every exponent is a nonnegative integer.
  std::optional<std::vector<double>> Coefficients() const;

  // Largest exponent carrying a nonzero coefficient (0 for the zero cost).
  double Degree() const;

  // c(f); throws on f < 0.
  double Evaluate(double f) const;
  double Derivative(double f) const;
  double SecondDerivative(double f) const;
  // x * c'(x + g), defined as 0 at x = 0 even where c' is unbounded.
  double ScaledDerivative(double x, double g) const;
  // x * c''(x + g), same convention.
  double ScaledSecondDerivative(double x, double g) const;
  // Closed-form integral of c over [0, f].
  double Integral(double f) const;

  // Marginal cost c(z) + z c'(z): coefficient a_e becomes (e + 1) a_e.
  CostPolynomial Marginal() const;

 private:
  std::vector<Term> terms_;
};

// Cost of an edge carrying flow f; throws Error(kInvalidArgument) if f < 0.
double EdgeCost(const CostPolynomial& poly, double f);

}  // namespace netctl

#endif  // NETCTL_COST_HPP_
