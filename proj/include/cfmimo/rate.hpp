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

#include "cfmimo/laplace.hpp"
#include "cfmimo/moments.hpp"

namespace cfmimo {

/// Finite-blocklength rate R = E[C] - sqrt(E[V] / tau) Q^-1(eps) / ln 2.
struct RateResult {
  double rate = 0.0;           // bits/s/Hz
  double capacity_term = 0.0;  // E[C]
  double penalty_term = 0.0;   // sqrt(E[V] / tau) Q^-1(eps) / ln 2
  MomentMethod method = MomentMethod::integral_exact;
  /// Negative rates are reported as computed, with this flag set.
  bool below_zero = false;
  double error_estimate = 0.0;
};

RateResult average_rate(const DerivedParams& p, const LaplaceEvaluator& lx, int tau,
                        double epsilon);

/// R / M, whose penalty scales as 1 / sqrt(M tau) per stream.
RateResult normalized_rate(const DerivedParams& p, const LaplaceEvaluator& lx, int tau,
                           double epsilon);

/// eps = Q{(J - r ln 2) sqrt(M tau / (E[V] / M))} with J = E[C] ln 2 / M and
/// r the per-antenna rate.
double block_error_probability(const DerivedParams& p, const LaplaceEvaluator& lx, int tau,
                               double rate_per_antenna);

namespace detail {

/// Rate from given moments. `widen_epsilon` admits eps = 0.5.
RateResult compose_rate(double expected_capacity, double expected_dispersion, int tau,
                        double epsilon, bool widen_epsilon = false);

/// BEP from given moments for M streams.
double compose_bep(double expected_capacity, double expected_dispersion, int M, int tau,
                   double rate_per_antenna);

}  // namespace detail

}  // namespace cfmimo
