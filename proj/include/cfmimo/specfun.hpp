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

#include "cfmimo/error.hpp"

namespace cfmimo {

/// The requested series needs more range or precision than the evaluator
/// is allowed to use.
class OverflowError : public Error {
 public:
  using Error::Error;
};

/// log Gamma(x) for x > 0.
double log_gamma(double x);

/// Gamma(x) for x in (-1, 0), via Gamma(x + 1) / x.
double gamma_neg(double x);

/// psi(m) for integer m >= 1 from psi(1) = -euler_gamma and the recurrence
/// psi(m + 1) = psi(m) + 1/m.
double digamma_int(int m);

/// exp[(1/M) sum_{m=1}^{M} psi(L - m + 1)]: the geometric-mean gain of a
/// complex Wishart(L, I_M) determinant, commonly approximated by L.
double wishart_geometric_gain(int L, int M);

enum class GammaKind { upper, lower };

/// Incomplete gamma functions Gamma(a, x) (upper) and gamma(a, x) (lower).
///
/// Negative non-integer `a` is supported; the lower kind is then defined by
/// analytic continuation of its power series, so upper + lower = Gamma(a)
/// holds for every admissible `a`.
double incomplete_gamma(double a, double x, GammaKind kind);

/// Result of summing an infinite series.
struct SeriesResult {
  double value = 0.0;
  int terms_used = 0;
  /// Absolute bound on the discarded tail.
  double truncation_bound = 0.0;
  /// Working precision used for the summation, in bits.
  int precision_bits = 53;
};

/// Wright function 1psi0[(a, A); z] = sum_n Gamma(a + A n) z^n / n! for
/// A in (0, 1).
///
/// Terms are formed as exp(sum of log-gammas) with sign tracking. For
/// negative z the series alternates with terms far larger than the result,
/// so summation runs in extended precision sized from the observed
/// cancellation.
SeriesResult wright_psi_1_0(double a, double A, double z, double rel_tol = 1e-12);

/// Gaussian tail probability Q(x) = P(N(0,1) > x).
double gaussian_q(double x);

/// Inverse of gaussian_q on (0, 1). Throws DomainError at or outside the
/// endpoints.
double gaussian_q_inv(double epsilon);

}  // namespace cfmimo
