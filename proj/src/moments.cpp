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

#include "cfmimo/moments.hpp"

#include <cmath>
#include <numbers>

#include "cfmimo/error.hpp"
#include "cfmimo/quadrature.hpp"
#include "cfmimo/specfun.hpp"

namespace cfmimo {

namespace {

constexpr double kSingleTol = 1e-9;
constexpr double kDoubleTol = 1e-6;
constexpr double kClampFraction = 1e-9;
constexpr double kLimitBelow = 1e-8;

void prepare(const DerivedParams& p, const LaplaceEvaluator& lx) {
  if (lx.variant() == LaplaceVariant::approx) require_convergence(p);
}

// E[V] <= M holds for every valid input.
void check_dispersion_mean(const DerivedParams& p, double ev) {
  if (!(ev <= p.M * (1.0 + 1e-12))) {
    throw ConsistencyError("expected dispersion " + std::to_string(ev) + " exceeds M");
  }
}

MomentValue clamp_variance(double value, double error, double scale, const char* what) {
  MomentValue out{value, error, false};
  if (value < 0.0) {
    if (value < -kClampFraction * scale - error) {
      throw ConsistencyError(std::string(what) + " is negative: " + std::to_string(value));
    }
    out.value = 0.0;
    out.clamped = true;
  }
  return out;
}

// exp(log_w) (1 - L(s)), kept finite where L(s) overflows but the weight
// underflows.
double weighted_complement(const LaplaceEvaluator& lx, double s, double log_w) {
  const double log_l = lx.log_value(s);
  if (log_l <= 0.0) return std::exp(log_w) * lx.one_minus(s);
  return std::exp(log_w) - std::exp(log_w + log_l);
}

// int_0^inf t^k e^(-t) g(t / beta) dt / k!, g being L or 1 - L.
QuadratureResult weighted(const DerivedParams& p, const LaplaceEvaluator& lx, int k,
                          bool complement) {
  const double beta = p.beta;
  const double log_norm = std::lgamma(k + 1.0);
  const Integrand f = [&, k, complement](double t) {
    const double s = t / beta;
    const double log_w = k * std::log(t) - t - log_norm;
    return complement ? weighted_complement(lx, s, log_w) : std::exp(log_w + lx.log_value(s));
  };
  return integrate_semi_infinite(f, {.rel_tol = kSingleTol});
}

struct WrightPair {
  SeriesResult g1;  // 1psi0[(2, 2/alpha); z]
  SeriesResult g2;  // 1psi0[(4, 2/alpha); z]
  double ratio;     // beta / (beta - c)
};

WrightPair wright_terms(const DerivedParams& p, bool need_g2) {
  require_convergence(p);
  const double c = p.linear_coefficient();
  const double gap = p.beta - c;
  if (!(gap > 0.0)) {
    throw ConstraintViolation("simplified moments need beta > c", gap);
  }
  const double power = 2.0 / p.alpha;
  const double z = p.fractional_coefficient() / std::pow(gap, power);
  WrightPair w;
  w.g1 = wright_psi_1_0(2.0, power, z);
  if (need_g2) w.g2 = wright_psi_1_0(4.0, power, z);
  w.ratio = p.beta / gap;
  return w;
}

}  // namespace

std::string to_string(MomentMethod m) {
  switch (m) {
    case MomentMethod::integral_exact:
      return "integral_exact";
    case MomentMethod::integral_approx:
      return "integral_approx";
    case MomentMethod::simplified:
      return "simplified";
  }
  return "unknown";
}

LaplaceEvaluator evaluator_for(MomentMethod m, const DerivedParams& p) {
  switch (m) {
    case MomentMethod::integral_exact:
      return LaplaceEvaluator::exact(p);
    case MomentMethod::integral_approx:
      return LaplaceEvaluator::approx(p);
    case MomentMethod::simplified:
      break;
  }
  throw DomainError("the simplified method has no Laplace evaluator");
}

MomentValue expected_dispersion(const DerivedParams& p, const LaplaceEvaluator& lx) {
  prepare(p, lx);
  // M (1 - beta^2 int s e^(-s beta) L ds) = M int t e^(-t) (1 - L(t / beta)) dt.
  const QuadratureResult d1 = weighted(p, lx, 1, true);
  const MomentValue out{p.M * d1.value, p.M * d1.error_estimate, false};
  check_dispersion_mean(p, out.value);
  return out;
}

MomentValue var_dispersion(const DerivedParams& p, const LaplaceEvaluator& lx) {
  prepare(p, lx);
  const double m2 = static_cast<double>(p.M) * p.M;
  const QuadratureResult d1 = weighted(p, lx, 1, true);
  double value = 0.0;
  double error = 0.0;
  if (d1.value <= 0.5) {
    // I3 - I1^2 with I_k = 1 - D_k.
    const QuadratureResult d3 = weighted(p, lx, 3, true);
    value = m2 * (d1.value * (2.0 - d1.value) - d3.value);
    error = m2 * (2.0 * std::abs(1.0 - d1.value) * d1.error_estimate + d3.error_estimate);
  } else {
    const QuadratureResult i1 = weighted(p, lx, 1, false);
    const QuadratureResult i3 = weighted(p, lx, 3, false);
    value = m2 * (i3.value - i1.value * i1.value);
    error = m2 * (i3.error_estimate + 2.0 * std::abs(i1.value) * i1.error_estimate);
  }
  check_dispersion_mean(p, p.M * d1.value);
  return clamp_variance(value, error, m2, "dispersion variance");
}

MomentValue expected_capacity(const DerivedParams& p, const LaplaceEvaluator& lx) {
  prepare(p, lx);
  const double beta = p.beta;
  const bool exact = lx.variant() != LaplaceVariant::approx;
  const double slope = exact ? lx.mean() / beta : 0.0;
  const Integrand f = [&](double t) {
    if (exact && t < kLimitBelow) return slope * std::exp(-t);
    return weighted_complement(lx, t / beta, -t - std::log(t));
  };
  SemiInfiniteOptions opts{.rel_tol = kSingleTol};
  if (!exact) opts.singularity_exponent = 2.0 / p.alpha - 1.0;
  const QuadratureResult r = integrate_semi_infinite(f, opts);
  const double k = p.M / std::numbers::ln2;
  return MomentValue{k * r.value, k * r.error_estimate, false};
}

MomentValue var_capacity(const DerivedParams& p, const LaplaceEvaluator& lx) {
  prepare(p, lx);
  const double beta = p.beta;
  const Integrand2 f = [&](double u, double v) {
    const double a = u / beta;
    const double b = v / beta;
    const double delta = lx.joint_log_ratio(a, b);
    if (delta == 0.0) return 0.0;
    return std::exp(-u - v + lx.log_value(a) + lx.log_value(b) - std::log(u) - std::log(v)) *
           std::expm1(delta);
  };
  SemiInfiniteOptions opts{.rel_tol = kDoubleTol};
  if (lx.variant() == LaplaceVariant::approx) opts.singularity_exponent = 2.0 / p.alpha - 1.0;
  const QuadratureResult r = integrate_double_semi_infinite(f, opts, true);
  const double k = p.M / std::numbers::ln2;
  return clamp_variance(k * k * r.value, k * k * r.error_estimate, k * k,
                        "capacity variance");
}

MomentValue expected_dispersion_simplified(const DerivedParams& p) {
  const WrightPair w = wright_terms(p, false);
  const double r2 = w.ratio * w.ratio;
  const MomentValue out{p.M - p.M * r2 * w.g1.value, p.M * r2 * w.g1.truncation_bound, false};
  check_dispersion_mean(p, out.value);
  return out;
}

MomentValue var_dispersion_simplified(const DerivedParams& p) {
  const WrightPair w = wright_terms(p, true);
  const double m2 = static_cast<double>(p.M) * p.M;
  const double r4 = std::pow(w.ratio, 4);
  const double g1 = w.g1.value;
  const double value = m2 * r4 * (w.g2.value / 6.0 - g1 * g1);
  const double error =
      m2 * r4 * (w.g2.truncation_bound / 6.0 + 2.0 * std::abs(g1) * w.g1.truncation_bound);
  return clamp_variance(value, error, m2, "dispersion variance");
}

}  // namespace cfmimo
