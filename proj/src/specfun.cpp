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

#include "cfmimo/specfun.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

namespace cfmimo {

namespace {

constexpr double kEulerGamma = 0.57721566490153286061;
constexpr int kMaxIterations = 100000;

bool is_nonpositive_integer(double a) { return a <= 0.0 && a == std::floor(a); }

// gamma(a, x) = x^a e^-x sum_n x^n / (a (a+1) ... (a+n)).
double lower_gamma_series(double a, double x) {
  double term = 1.0 / a;
  double sum = term;
  for (int n = 1; n < kMaxIterations; ++n) {
    term *= x / (a + n);
    sum += term;
    if (std::abs(term) < std::abs(sum) * 1e-17) {
      return sum * std::exp(a * std::log(x) - x);
    }
  }
  throw ConvergenceError("lower incomplete gamma series did not converge (a=" +
                             std::to_string(a) + ", x=" + std::to_string(x) + ")",
                         sum * std::exp(a * std::log(x) - x),
                         std::numeric_limits<double>::infinity());
}

// Legendre continued fraction for Gamma(a, x), modified Lentz. Valid for
// x > 0 and any real a; fast for x >~ 1.
double upper_gamma_cf(double a, double x) {
  constexpr double tiny = 1e-300;
  double b = x + 1.0 - a;
  double c = 1.0 / tiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i < kMaxIterations; ++i) {
    const double an = -i * (i - a);
    b += 2.0;
    d = an * d + b;
    if (std::abs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::abs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double delta = d * c;
    h *= delta;
    if (std::abs(delta - 1.0) < 1e-16) {
      return std::exp(a * std::log(x) - x) * h;
    }
  }
  throw ConvergenceError("upper incomplete gamma continued fraction did not converge (a=" +
                             std::to_string(a) + ", x=" + std::to_string(x) + ")",
                         std::exp(a * std::log(x) - x) * h,
                         std::numeric_limits<double>::infinity());
}

}  // namespace

double log_gamma(double x) {
  if (!(x > 0.0)) throw DomainError("log_gamma: x must be > 0");
  return std::lgamma(x);
}

double gamma_neg(double x) {
  if (!(x > -1.0 && x < 0.0)) throw DomainError("gamma_neg: x must lie in (-1, 0)");
  return std::tgamma(x + 1.0) / x;
}

double digamma_int(int m) {
  if (m < 1) throw DomainError("digamma_int: m must be >= 1");
  double harmonic = 0.0;
  // smallest terms first
  for (int i = m - 1; i >= 1; --i) harmonic += 1.0 / i;
  return harmonic - kEulerGamma;
}

double wishart_geometric_gain(int L, int M) {
  if (M < 1 || L < M) throw DomainError("wishart_geometric_gain: need L >= M >= 1");
  double sum = 0.0;
  for (int m = 1; m <= M; ++m) sum += digamma_int(L - m + 1);
  return std::exp(sum / M);
}

double incomplete_gamma(double a, double x, GammaKind kind) {
  if (!(x >= 0.0) || !std::isfinite(a)) {
    throw DomainError("incomplete_gamma: need finite a and x >= 0");
  }
  const bool pole = is_nonpositive_integer(a);
  if (kind == GammaKind::lower) {
    if (pole) throw DomainError("incomplete_gamma: lower kind undefined at a = 0, -1, -2, ...");
    if (x == 0.0) return 0.0;
    if (x <= std::max(1.0, a + 1.0)) return lower_gamma_series(a, x);
    return std::tgamma(a) - upper_gamma_cf(a, x);
  }
  if (x == 0.0) {
    if (a <= 0.0) throw DomainError("incomplete_gamma: upper kind diverges at x = 0 for a <= 0");
    return std::tgamma(a);
  }
  if (x > 1.0 || x > a + 1.0) return upper_gamma_cf(a, x);
  if (pole) {
    throw DomainError("incomplete_gamma: upper kind at a = 0, -1, ... requires x > 1");
  }
  return std::tgamma(a) - lower_gamma_series(a, x);
}

double gaussian_q(double x) { return 0.5 * std::erfc(x / std::numbers::sqrt2); }

double gaussian_q_inv(double epsilon) {
  if (!(epsilon > 0.0 && epsilon < 1.0)) {
    throw DomainError("gaussian_q_inv: epsilon must lie in (0, 1)");
  }
  // Acklam's rational approximation of the normal quantile at p = epsilon,
  // relative error ~1e-9, then Newton on Q itself.
  static constexpr std::array<double, 6> a = {-3.969683028665376e+01, 2.209460984245205e+02,
                                              -2.759285104469687e+02, 1.383577518672690e+02,
                                              -3.066479806614716e+01, 2.506628277459239e+00};
  static constexpr std::array<double, 5> b = {-5.447609879822406e+01, 1.615858368580409e+02,
                                              -1.556989798598866e+02, 6.680131188771972e+01,
                                              -1.328068155288572e+01};
  static constexpr std::array<double, 6> c = {-7.784894002430293e-03, -3.223964580411365e-01,
                                              -2.400758277161838e+00, -2.549732539343734e+00,
                                              4.374664141464968e+00, 2.938163982698783e+00};
  static constexpr std::array<double, 4> d = {7.784695709041462e-03, 3.224671290700398e-01,
                                              2.445134137142996e+00, 3.754408661907416e+00};
  constexpr double p_low = 0.02425;

  auto tail = [&](double q) {
    return (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
           ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  };

  const double p = epsilon;
  double z;  // Phi^-1(p)
  if (p < p_low) {
    z = tail(std::sqrt(-2.0 * std::log(p)));
  } else if (p <= 1.0 - p_low) {
    const double q = p - 0.5;
    const double r = q * q;
    z = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
        (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
  } else {
    z = -tail(std::sqrt(-2.0 * std::log1p(-p)));
  }

  double x = -z;
  constexpr double inv_sqrt_2pi = 0.39894228040143267794;
  for (int step = 0; step < 2; ++step) {
    const double density = inv_sqrt_2pi * std::exp(-0.5 * x * x);
    if (density == 0.0) break;
    x += (gaussian_q(x) - epsilon) / density;
  }
  return x;
}

}  // namespace cfmimo
