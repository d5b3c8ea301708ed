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

#include <functional>

#include "cfmimo/error.hpp"

namespace cfmimo {

struct QuadratureResult {
  double value = 0.0;
  /// Absolute error estimate.
  double error_estimate = 0.0;
  long evaluations = 0;
};

/// Adaptive refinement ran out of budget. `partial()` holds the best estimate.
class QuadratureError : public ConvergenceError {
 public:
  QuadratureError(const std::string& what, QuadratureResult partial)
      : ConvergenceError(what, partial.value, partial.error_estimate), partial_(partial) {}
  const QuadratureResult& partial() const noexcept { return partial_; }

 private:
  QuadratureResult partial_;
};

using Integrand = std::function<double(double)>;
using Integrand2 = std::function<double(double, double)>;

/// Options for the semi-infinite integrators.
struct SemiInfiniteOptions {
  double rel_tol = 1e-9;
  /// Exponent p in (-1, 0] with f(s) ~ C s^p as s -> 0. Zero means f is
  /// finite at the origin.
  double singularity_exponent = 0.0;
  /// Where the log-axis scan starts looking for the integrand's mass.
  /// Any positive value works; one near the mass saves evaluations.
  double scale_hint = 1.0;
};

/// Integral of f over [a, b] by global adaptive Gauss-Kronrod (10/21).
/// Converges when error <= max(rel_tol |value|, abs_tol). Deterministic.
QuadratureResult integrate_finite(const Integrand& f, double a, double b,
                                  double rel_tol = 1e-9, double abs_tol = 0.0);

/// Integral of f over (0, inf).
///
/// The integrand is scanned on a logarithmic grid (four points per decade)
/// outward from `scale_hint`; the range is cut where |f(s)| s stays below
/// rel_tol times its peak for three consecutive decades. The retained range
/// is integrated in log s, and the piece next to the origin through the
/// substitution s = s0 w^(1/(1+p)), which removes an s^p endpoint
/// singularity. Throws DivergenceError if the integrand does not decay.
QuadratureResult integrate_semi_infinite(const Integrand& f, const SemiInfiniteOptions& opts = {});

/// Integral of f over (0, b], same machinery as integrate_semi_infinite.
QuadratureResult integrate_from_zero(const Integrand& f, double b,
                                     const SemiInfiniteOptions& opts = {});

/// Integral of f(u, v) over the positive quadrant as nested semi-infinite
/// integrals. With `symmetric` set, f(u, v) == f(v, u) is assumed and only
/// the u < v triangle is integrated. The inner integrals run at a tenth of
/// the outer tolerance.
QuadratureResult integrate_double_semi_infinite(const Integrand2& f,
                                                const SemiInfiniteOptions& opts = {.rel_tol = 1e-6},
                                                bool symmetric = false);

}  // namespace cfmimo
