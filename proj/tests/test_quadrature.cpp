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

#include <doctest.h>

#include <cmath>
#include <numbers>

#include "cfmimo/config.hpp"
#include "cfmimo/error.hpp"
#include "cfmimo/laplace.hpp"
#include "cfmimo/quadrature.hpp"

using namespace cfmimo;

namespace {

// Tensor-product midpoint rule in (log u, log v), 2000 x 2000 on
// [1e-12, 40]^2, of the capacity-variance integrand at the desk
// configuration with perfect CSI. Both exponents came from a fixed
// 64 x 8-point Gauss-Legendre rule in log r, independent of the library.
// Reproduce with the skipped test case below.
constexpr double kCapacityVarianceGrid = 3.74942113148;

}  // namespace

TEST_CASE("finite integrals with closed forms") {
  const QuadratureResult one = integrate_finite([](double) { return 1.0; }, 0.0, 1.0);
  CHECK(one.value == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(one.evaluations >= 1);
  const QuadratureResult r = integrate_finite([](double x) { return x; }, 1.0, 50.0);
  CHECK(r.value == doctest::Approx(1249.5).epsilon(1e-14));
  CHECK(r.error_estimate >= 0.0);
  CHECK(r.error_estimate >= std::abs(r.value - 1249.5));
}

TEST_CASE("finite integral against a midpoint oracle") {
  auto f = [](double r) { return std::exp(-0.3 * std::pow(r, -3.7)) * r; };
  const int n = 1000000;
  const double h = 49.0 / n;
  double oracle = 0.0;
  for (int i = 0; i < n; ++i) oracle += f(1.0 + (i + 0.5) * h) * h;
  CHECK(integrate_finite(f, 1.0, 50.0, 1e-10).value == doctest::Approx(oracle).epsilon(1e-8));
}

TEST_CASE("finite integral errors") {
  CHECK_THROWS_AS(integrate_finite([](double) { return 1.0; }, 1.0, 1.0), DomainError);
  // A discontinuity that keeps splitting exhausts the panel budget.
  auto jumpy = [](double x) { return std::sin(1.0 / x) / x; };
  try {
    integrate_finite(jumpy, 1e-12, 1.0, 1e-14);
    FAIL("expected QuadratureError");
  } catch (const QuadratureError& e) {
    CHECK(std::isfinite(e.partial().value));
    CHECK(e.partial().evaluations > 0);
  }
}

TEST_CASE("semi-infinite gamma integrals") {
  const auto e1 = integrate_semi_infinite([](double s) { return std::exp(-s); });
  CHECK(e1.value == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(e1.error_estimate >= std::abs(e1.value - 1.0));
  const auto e2 = integrate_semi_infinite([](double s) { return s * std::exp(-s); });
  CHECK(e2.value == doctest::Approx(1.0).epsilon(1e-9));
  const auto e4 = integrate_semi_infinite([](double s) { return s * s * s * std::exp(-s); });
  CHECK(e4.value == doctest::Approx(6.0).epsilon(1e-9));
  CHECK(e4.error_estimate >= std::abs(e4.value - 6.0));

  SemiInfiniteOptions opts;
  opts.singularity_exponent = -0.5;
  const auto half = integrate_semi_infinite([](double s) { return std::exp(-s) / std::sqrt(s); }, opts);
  CHECK(half.value == doctest::Approx(std::sqrt(std::numbers::pi)).epsilon(1e-9));
  CHECK(half.error_estimate >= std::abs(half.value - std::sqrt(std::numbers::pi)));
}

TEST_CASE("semi-infinite integral is scale invariant") {
  auto f = [](double s) { return s * std::exp(-s) / (1.0 + s); };
  const double base = integrate_semi_infinite(f).value;
  for (double k : {0.5, 2.0, 10.0}) {
    const double scaled = integrate_semi_infinite([&](double s) { return f(k * s); }).value * k;
    CHECK(scaled == doctest::Approx(base).epsilon(1e-9));
  }
}

TEST_CASE("integrands spread over many decades") {
  const double beta = 6.5e-6;
  const auto r = integrate_semi_infinite([&](double s) { return s * std::exp(-s * beta); },
                                         {.rel_tol = 1e-9, .scale_hint = 1.0});
  CHECK(r.value == doctest::Approx(1.0 / (beta * beta)).epsilon(1e-9));
}

TEST_CASE("non-decaying integrands raise DivergenceError") {
  CHECK_THROWS_AS(integrate_semi_infinite([](double s) { return std::exp(0.1 * s); }), DivergenceError);
  CHECK_THROWS_AS(integrate_semi_infinite([](double) { return 1.0; }), DivergenceError);
  CHECK_THROWS_AS(integrate_semi_infinite([](double) { return NAN; }), DivergenceError);
}

TEST_CASE("identically zero integrand") {
  const auto r = integrate_semi_infinite([](double) { return 0.0; });
  CHECK(r.value == 0.0);
  CHECK(r.error_estimate == 0.0);
}

TEST_CASE("integral from zero to a finite bound") {
  const auto r = integrate_from_zero([](double s) { return std::exp(-s); }, 2.0);
  CHECK(r.value == doctest::Approx(-std::expm1(-2.0)).epsilon(1e-9));
  SemiInfiniteOptions opts;
  opts.singularity_exponent = -0.5;
  const auto s = integrate_from_zero([](double x) { return 1.0 / std::sqrt(x); }, 4.0, opts);
  CHECK(s.value == doctest::Approx(4.0).epsilon(1e-9));
}

TEST_CASE("quadrature is deterministic") {
  auto f = [](double s) { return std::exp(-s) * std::log1p(s); };
  const auto a = integrate_semi_infinite(f);
  const auto b = integrate_semi_infinite(f);
  CHECK(a.value == b.value);
  CHECK(a.error_estimate == b.error_estimate);
  CHECK(a.evaluations == b.evaluations);
}

TEST_CASE("double integral over the quadrant") {
  const auto r = integrate_double_semi_infinite([](double u, double v) { return std::exp(-u - v); });
  CHECK(r.value == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(r.error_estimate >= std::abs(r.value - 1.0));
  const auto sym = integrate_double_semi_infinite(
      [](double u, double v) { return std::exp(-u - v); }, {.rel_tol = 1e-6}, true);
  CHECK(sym.value == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("factorizing transform gives zero capacity variance") {
  // With L(s) = e^(-c s) the joint log-ratio is identically zero.
  for (double c : {0.1, 1.0, 7.0}) {
    auto f = [c](double u, double v) {
      const double log_ratio = 0.0 * c;
      return std::exp(-u - v - c * (u + v)) / (u * v) * std::expm1(log_ratio);
    };
    const QuadratureResult r = integrate_double_semi_infinite(f, {.rel_tol = 1e-6}, true);
    CHECK(r.value == 0.0);
    CHECK(r.error_estimate == 0.0);
  }
}

TEST_CASE("capacity-variance double integral against a grid oracle") {
  const DerivedParams p = derive_params(desk_config());
  const auto lx = LaplaceEvaluator::exact(p);
  auto f = [&](double u, double v) {
    const double a = u / p.beta, b = v / p.beta;
    return std::exp(-u - v + lx.log_value(a) + lx.log_value(b)) *
           std::expm1(lx.joint_log_ratio(a, b)) / (u * v);
  };
  const auto r = integrate_double_semi_infinite(f, {.rel_tol = 1e-6}, true);
  CHECK(r.value == doctest::Approx(kCapacityVarianceGrid).epsilon(1e-4));
}

TEST_CASE("regenerate the capacity-variance grid oracle" * doctest::skip()) {
  static const double x8[8] = {-0.9602898564975363, -0.7966664774136267, -0.5255324099163290,
                               -0.1834346424956498, 0.1834346424956498,  0.5255324099163290,
                               0.7966664774136267,  0.9602898564975363};
  static const double w8[8] = {0.1012285362903763, 0.2223810344533745, 0.3137066458778873,
                               0.3626837833783620, 0.3626837833783620, 0.3137066458778873,
                               0.2223810344533745, 0.1012285362903763};
  const DerivedParams p = derive_params(desk_config());
  const double lam = p.lambda, radius = 50.0, alpha = 3.7, pi = std::numbers::pi;
  const double top = std::log(radius);
  const int panels = 64;
  auto rule = [&](auto g) {
    double acc = 0.0;
    for (int k = 0; k < panels; ++k) {
      const double lo = top * k / panels, hi = top * (k + 1) / panels;
      const double mid = 0.5 * (lo + hi), hw = 0.5 * (hi - lo);
      for (int i = 0; i < 8; ++i) {
        const double t = mid + hw * x8[i];
        acc += w8[i] * hw * g(std::exp(-alpha * t)) * std::exp(2.0 * t);
      }
    }
    return acc;
  };
  auto log_l = [&](double s) {
    return -lam * (pi * -std::expm1(-s) + 2.0 * pi * rule([s](double l) { return -std::expm1(-s * l); }));
  };
  auto delta = [&](double a, double b) {
    return lam * (pi * std::expm1(-a) * std::expm1(-b) +
                  2.0 * pi * rule([a, b](double l) { return std::expm1(-a * l) * std::expm1(-b * l); }));
  };
  const int n = 2000;
  const double lo = std::log(1e-12), hi = std::log(40.0), h = (hi - lo) / n;
  std::vector<double> x(n), ll(n);
  for (int i = 0; i < n; ++i) {
    x[i] = std::exp(lo + (i + 0.5) * h);
    ll[i] = log_l(x[i] / p.beta);
  }
  double sum = 0.0;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j <= i; ++j) {
      const double f = std::exp(-x[i] - x[j] + ll[i] + ll[j]) * std::expm1(delta(x[i] / p.beta, x[j] / p.beta));
      sum += (i == j ? 1.0 : 2.0) * f;
    }
  }
  MESSAGE("grid oracle: ", sum * h * h);
  CHECK(sum * h * h == doctest::Approx(kCapacityVarianceGrid).epsilon(1e-10));
}
