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

#include "cfmimo/rate.hpp"

#include <cmath>
#include <numbers>

#include "cfmimo/error.hpp"
#include "cfmimo/specfun.hpp"

namespace cfmimo {

namespace {

MomentMethod method_of(const LaplaceEvaluator& lx) {
  switch (lx.variant()) {
    case LaplaceVariant::exact:
      return MomentMethod::integral_exact;
    case LaplaceVariant::approx:
      return MomentMethod::integral_approx;
    case LaplaceVariant::empirical:
      break;
  }
  throw DomainError("rates need an exact or approximate Laplace evaluator");
}

void check_tau(int tau) {
  if (tau < 1) throw InvalidConfig("tau", "blocklength must be >= 1");
}

}  // namespace

namespace detail {

RateResult compose_rate(double expected_capacity, double expected_dispersion, int tau,
                        double epsilon, bool widen_epsilon) {
  check_tau(tau);
  const bool ok = widen_epsilon ? (epsilon > 0.0 && epsilon <= 0.5)
                                : (epsilon > 0.0 && epsilon < 0.5);
  if (!ok) throw InvalidConfig("epsilon", "target error probability must lie in (0, 0.5)");
  RateResult r;
  r.capacity_term = expected_capacity;
  const double q = epsilon == 0.5 ? 0.0 : gaussian_q_inv(epsilon);
  r.penalty_term = std::sqrt(std::max(expected_dispersion, 0.0) / tau) * q / std::numbers::ln2;
  r.rate = r.capacity_term - r.penalty_term;
  r.below_zero = r.rate < 0.0;
  return r;
}

double compose_bep(double expected_capacity, double expected_dispersion, int M, int tau,
                   double rate_per_antenna) {
  check_tau(tau);
  const double per_stream = expected_dispersion / M;
  if (!(per_stream >= 1e-12)) {
    throw DomainError("block error probability: dispersion E[V]/M below 1e-12");
  }
  const double j = expected_capacity * std::numbers::ln2 / M;
  const double arg = (j - rate_per_antenna * std::numbers::ln2) *
                     std::sqrt(static_cast<double>(M) * tau / per_stream);
  return gaussian_q(arg);
}

}  // namespace detail

RateResult average_rate(const DerivedParams& p, const LaplaceEvaluator& lx, int tau,
                        double epsilon) {
  const MomentMethod method = method_of(lx);
  const MomentValue ec = expected_capacity(p, lx);
  const MomentValue ev = expected_dispersion(p, lx);
  RateResult r = detail::compose_rate(ec.value, ev.value, tau, epsilon);
  r.method = method;
  const double q = gaussian_q_inv(epsilon);
  const double dpen = ev.value > 0.0
                          ? q / (std::numbers::ln2 * 2.0 * std::sqrt(ev.value * tau)) * ev.error_estimate
                          : 0.0;
  r.error_estimate = ec.error_estimate + dpen;
  return r;
}

RateResult normalized_rate(const DerivedParams& p, const LaplaceEvaluator& lx, int tau,
                           double epsilon) {
  RateResult r = average_rate(p, lx, tau, epsilon);
  const double m = p.M;
  r.rate /= m;
  r.capacity_term /= m;
  r.penalty_term /= m;
  r.error_estimate /= m;
  return r;
}

double block_error_probability(const DerivedParams& p, const LaplaceEvaluator& lx, int tau,
                               double rate_per_antenna) {
  method_of(lx);
  const MomentValue ec = expected_capacity(p, lx);
  const MomentValue ev = expected_dispersion(p, lx);
  return detail::compose_bep(ec.value, ev.value, p.M, tau, rate_per_antenna);
}

}  // namespace cfmimo
