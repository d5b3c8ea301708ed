// Copyright 2026 The cfmimo Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <string>

#include "cfmimo/config.hpp"
#include "cfmimo/laplace.hpp"

namespace cfmimo {

enum class MomentMethod {
  integral_exact,   // quadrature over the exact Laplace transform
  integral_approx,  // quadrature over the approximate Laplace transform
  simplified,       // Wright-series closed form (dispersion only)
};

std::string to_string(MomentMethod m);

/// A closed-form moment with its numerical error bound.
struct MomentValue {
  double value = 0.0;
  double error_estimate = 0.0;
  /// A slightly negative variance (roundoff) was clamped to zero.
  bool clamped = false;
};

/// Laplace evaluator the integral methods use; throws for `simplified`.
LaplaceEvaluator evaluator_for(MomentMethod m, const DerivedParams& p);

/// E[V] = M - M beta^2 int_0^inf s e^(-s beta) L_X(s) ds.
MomentValue expected_dispersion(const DerivedParams& p, const LaplaceEvaluator& lx);

/// Var[V] = (M^2 beta^4 / 6) int s^3 e^(-s beta) L_X ds - M^2 beta^4 (int s e^(-s beta) L_X ds)^2.
MomentValue var_dispersion(const DerivedParams& p, const LaplaceEvaluator& lx);

/// E[C] = (M / ln 2) int_0^inf e^(-s) (1 - L_X(s / beta)) / s ds.
MomentValue expected_capacity(const DerivedParams& p, const LaplaceEvaluator& lx);

/// Var[C] = (M / ln 2)^2 int int e^(-u-v) (L_X((u+v)/beta) - L_X(u/beta) L_X(v/beta)) / (uv) du dv.
MomentValue var_capacity(const DerivedParams& p, const LaplaceEvaluator& lx);

/// E[V] = M - M beta^2 / (beta - c)^2 1psi0[(2, 2/alpha); z],
/// z = (2 pi lambda / alpha) Gamma(-2/alpha) / (beta - c)^(2/alpha).
MomentValue expected_dispersion_simplified(const DerivedParams& p);

/// Var[V] = M^2 (beta / (beta - c))^4 (1psi0[(4, 2/alpha); z] / 6 - 1psi0[(2, 2/alpha); z]^2).
MomentValue var_dispersion_simplified(const DerivedParams& p);

}  // namespace cfmimo
