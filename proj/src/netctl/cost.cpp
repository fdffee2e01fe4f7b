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

#include "netctl/cost.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "netctl/error.hpp"

namespace netctl {
namespace {

void CheckLoad(double f) {
  if (!(f >= 0.0)) {
    throw Error(ErrorCode::kInvalidArgument,
                "edge load must be nonnegative, got " + std::to_string(f));
  }
}

bool IsInteger(double e) { return std::floor(e) == e; }

}  // namespace

CostPolynomial CostPolynomial::FromCoefficients(
    const std::vector<double>& coefficients) {
  std::vector<Term> terms;
  terms.reserve(coefficients.size());
  for (std::size_t j = 0; j < coefficients.size(); ++j) {
    terms.push_back({coefficients[j], static_cast<double>(j)});
  }
  return FromTerms(std::move(terms));
}

CostPolynomial CostPolynomial::Monomial(double coefficient, double exponent) {
  return FromTerms({{coefficient, exponent}});
}

CostPolynomial CostPolynomial::FromTerms(std::vector<Term> terms) {
  CostPolynomial poly;
  poly.terms_ = std::move(terms);
  return poly;
}

std::optional<std::vector<double>> CostPolynomial::Coefficients() const {
  std::vector<double> dense;
  for (const Term& t : terms_) {
    if (t.exponent < 0.0 || !IsInteger(t.exponent) || t.exponent > 64.0) {
      return std::nullopt;
    }
    const auto j = static_cast<std::size_t>(t.exponent);
    if (dense.size() <= j) dense.resize(j + 1, 0.0);
    dense[j] += t.coefficient;
  }
  if (dense.empty()) dense.push_back(0.0);
  return dense;
}

double CostPolynomial::Degree() const {
  double degree = 0.0;
  for (const Term& t : terms_) {
    if (t.coefficient != 0.0) degree = std::max(degree, t.exponent);
  }
  return degree;
}

double CostPolynomial::Evaluate(double f) const {
  CheckLoad(f);
  double value = 0.0;
  for (const Term& t : terms_) {
    if (t.coefficient == 0.0) continue;
    value += t.exponent == 0.0 ? t.coefficient
                               : t.coefficient * std::pow(f, t.exponent);
  }
  return value;
}

double CostPolynomial::Derivative(double f) const {
  CheckLoad(f);
  double value = 0.0;
  for (const Term& t : terms_) {
    if (t.coefficient == 0.0 || t.exponent == 0.0) continue;
    value += t.coefficient * t.exponent * std::pow(f, t.exponent - 1.0);
  }
  return value;
}

double CostPolynomial::SecondDerivative(double f) const {
  CheckLoad(f);
  double value = 0.0;
  for (const Term& t : terms_) {
    if (t.coefficient == 0.0 || t.exponent == 0.0 || t.exponent == 1.0) {
      continue;
    }
    value += t.coefficient * t.exponent * (t.exponent - 1.0) *
             std::pow(f, t.exponent - 2.0);
  }
  return value;
}

double CostPolynomial::ScaledDerivative(double x, double g) const {
  CheckLoad(x);
  CheckLoad(g);
  if (x == 0.0) return 0.0;
  return x * Derivative(x + g);
}

double CostPolynomial::ScaledSecondDerivative(double x, double g) const {
  CheckLoad(x);
  CheckLoad(g);
  if (x == 0.0) return 0.0;
  return x * SecondDerivative(x + g);
}

double CostPolynomial::Integral(double f) const {
  CheckLoad(f);
  double value = 0.0;
  for (const Term& t : terms_) {
    if (t.coefficient == 0.0) continue;
    value += t.coefficient * std::pow(f, t.exponent + 1.0) / (t.exponent + 1.0);
  }
  return value;
}

CostPolynomial CostPolynomial::Marginal() const {
  std::vector<Term> terms = terms_;
  for (Term& t : terms) t.coefficient *= t.exponent + 1.0;
  return FromTerms(std::move(terms));
}

double EdgeCost(const CostPolynomial& poly, double f) {
  return poly.Evaluate(f);
}

}  // namespace netctl
