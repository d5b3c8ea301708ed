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
#include <thread>
#include <vector>

#include "cfmimo/config.hpp"
#include "cfmimo/error.hpp"
#include "cfmimo/laplace.hpp"
#include "cfmimo/specfun.hpp"

using namespace cfmimo;

namespace {

const double kLambda = 8.0 / (std::numbers::pi * 2500.0);

// e^-x as the reciprocal of its (all-positive) Taylor series.
double exp_neg_oracle(double x) {
  double acc = 0.0, term = 1.0;
  for (int n = 1; n < 200; ++n) {
    acc += term;
    term *= x / n;
  }
  return 1.0 / acc;
}

}  // namespace

TEST_CASE("every variant is one at s = 0") {
  CHECK(laplace_exact(0.0, kLambda, 50.0, 3.7) == 1.0);
  CHECK(laplace_approx(0.0, kLambda, 50.0, 3.7) == 1.0);
  const auto emp = LaplaceEvaluator::empirical(kLambda, 50.0, 3.7, 1000, 3);
  CHECK(emp.value(0.0) == 1.0);
}

TEST_CASE("exact transform tends to the empty-disk probability") {
  const double expect = exp_neg_oracle(8.0);
  CHECK(expect == doctest::Approx(3.3546e-4).epsilon(1e-4));
  CHECK(laplace_exact(1e12, kLambda, 50.0, 3.7) == doctest::Approx(expect).epsilon(1e-9));
}

TEST_CASE("exact transform against empirical MGF") {
  const double exact = laplace_exact(1.0, kLambda, 50.0, 3.7);
  const MgfEstimate big = empirical_mgf(1.0, kLambda, 50.0, 3.7, 1000000, 17);
  CHECK(std::abs(exact - big.mean) <= 3.0 * big.std_error);
  const MgfEstimate mid = empirical_mgf(0.5, kLambda, 50.0, 3.7, 100000, 18);
  CHECK(std::abs(laplace_exact(0.5, kLambda, 50.0, 3.7) - mid.mean) <= 4.0 * mid.std_error);
}

TEST_CASE("empirical MGF degenerate cases and determinism") {
  const MgfEstimate none = empirical_mgf(1.0, 0.0, 50.0, 3.7, 100, 1);
  CHECK(none.mean == 1.0);
  CHECK(none.std_error == 0.0);
  const MgfEstimate zero = empirical_mgf(0.0, kLambda, 50.0, 3.7, 100, 1);
  CHECK(zero.mean == 1.0);
  CHECK(zero.std_error == 0.0);
  const MgfEstimate a = empirical_mgf(2.0, kLambda, 50.0, 3.7, 500, 9);
  const MgfEstimate b = empirical_mgf(2.0, kLambda, 50.0, 3.7, 500, 9);
  CHECK(a.mean == b.mean);
  CHECK(a.std_error == b.std_error);
  CHECK_THROWS_AS(empirical_mgf(1.0, kLambda, 50.0, 3.7, 0, 1), InvalidConfig);
}

TEST_CASE("approximate transform near the origin") {
  const auto lx = LaplaceEvaluator::approx(kLambda, 50.0, 3.7);
  const double a = 2.0 * std::numbers::pi * kLambda / 3.7 * std::tgamma(-2.0 / 3.7);
  const double s = 1e-10;
  CHECK(lx.log_value(s) / std::pow(s, 2.0 / 3.7) == doctest::Approx(a).epsilon(1e-6));
}

TEST_CASE("approximate transform is close to the exact one for a large disk") {
  const double exact = laplace_exact(1.0, kLambda, 50.0, 3.7);
  CHECK(laplace_approx(1.0, kLambda, 50.0, 3.7) == doctest::Approx(exact).epsilon(0.05));
}

TEST_CASE("approximate transform validity limit") {
  const auto lx = LaplaceEvaluator::approx(kLambda, 50.0, 3.7);
  const double s_star = lx.validity_limit();
  CHECK(std::isfinite(s_star));
  CHECK(lx.log_value(s_star * 1.01) > lx.log_value(s_star));
  CHECK(lx.log_value(s_star * 0.99) > lx.log_value(s_star));
  CHECK(lx.beyond_validity(2.0 * s_star));
  CHECK_FALSE(lx.beyond_validity(0.5 * s_star));
  CHECK(lx.value(1e3 * s_star) > 1.0);
  CHECK(std::isinf(LaplaceEvaluator::exact(kLambda, 50.0, 3.7).validity_limit()));
}

TEST_CASE("exact transform is positive, decreasing and convex") {
  const auto lx = LaplaceEvaluator::exact(kLambda, 50.0, 3.7);
  std::vector<double> grid;
  for (double s = 0.01; s <= 20.0; s *= 1.3) grid.push_back(s);
  for (double s : grid) {
    const double h = 1e-3 * s;
    const double l0 = lx.value(s - h), l1 = lx.value(s), l2 = lx.value(s + h);
    CHECK(l1 > 0.0);
    CHECK(l1 <= 1.0);
    CHECK(l2 < l1);
    CHECK(l0 - 2.0 * l1 + l2 >= -1e-13);
  }
}

TEST_CASE("slope at the origin is the mean aggregate fading") {
  const DerivedParams p = derive_params(desk_config());
  const auto lx = LaplaceEvaluator::exact(p);
  const double h = 1e-4;
  const double slope = (lx.value(0.0) - lx.value(2.0 * h)) / (2.0 * h);
  CHECK(slope == doctest::Approx(p.expected_ap_count * p.theta).epsilon(1e-3));
  CHECK(lx.mean() == doctest::Approx(p.expected_ap_count * p.theta).epsilon(1e-14));
}

TEST_CASE("superadditivity and the covariance term") {
  const auto lx = LaplaceEvaluator::exact(kLambda, 50.0, 3.7);
  for (double a : {1e-6, 0.01, 1.0, 30.0, 1e5}) {
    for (double b : {1e-6, 0.3, 10.0, 1e6}) {
      const double delta = lx.joint_log_ratio(a, b);
      CHECK(delta >= 0.0);
      CHECK(lx.value(a + b) >= lx.value(a) * lx.value(b) * (1.0 - 1e-12));
      const double naive = lx.value(a + b) - lx.value(a) * lx.value(b);
      const double cov = lx.covariance(a, b);
      CHECK(cov >= 0.0);
      if (naive > 1e-6) CHECK(cov == doctest::Approx(naive).epsilon(1e-8));
    }
  }
  CHECK(lx.joint_log_ratio(0.0, 5.0) == 0.0);
  // For tiny arguments the covariance tends to a b Var[X].
  const double a = 1e-7, b = 2e-7;
  const double var_x = kLambda * (std::numbers::pi + 2.0 * std::numbers::pi *
                                                          (1.0 - std::pow(50.0, 2.0 - 7.4)) / (7.4 - 2.0));
  CHECK(lx.covariance(a, b) == doctest::Approx(a * b * var_x).epsilon(1e-5));
}

TEST_CASE("approximate covariance cancels the linear term exactly") {
  const auto lx = LaplaceEvaluator::approx(kLambda, 50.0, 3.7);
  const double a = 3.0, b = 5.0;
  const double direct = lx.log_value(a + b) - lx.log_value(a) - lx.log_value(b);
  CHECK(lx.joint_log_ratio(a, b) == doctest::Approx(direct).epsilon(1e-10));
  CHECK(lx.joint_log_ratio(a, b) > 0.0);
}

TEST_CASE("empty deployment") {
  const auto lx = LaplaceEvaluator::exact(0.0, 50.0, 3.7);
  CHECK(lx.value(10.0) == 1.0);
  CHECK(lx.one_minus(10.0) == 0.0);
  CHECK(lx.covariance(1.0, 2.0) == 0.0);
  CHECK(LaplaceEvaluator::approx(0.0, 50.0, 3.7).value(10.0) == 1.0);
}

TEST_CASE("one_minus keeps precision for small arguments") {
  const auto lx = LaplaceEvaluator::exact(kLambda, 50.0, 3.7);
  const double s = 1e-12;
  CHECK(lx.one_minus(s) == doctest::Approx(s * lx.mean()).epsilon(1e-6));
}

TEST_CASE("memoized evaluation is safe across threads") {
  const auto lx = LaplaceEvaluator::exact(kLambda, 50.0, 3.7);
  std::vector<double> grid;
  for (int i = 0; i < 64; ++i) grid.push_back(0.05 * (i + 1));
  std::vector<std::vector<double>> seen(4, std::vector<double>(grid.size()));
  {
    std::vector<std::jthread> pool;
    for (int w = 0; w < 4; ++w) {
      pool.emplace_back([&, w] {
        for (std::size_t i = 0; i < grid.size(); ++i) seen[w][(i + 16 * w) % grid.size()] =
            lx.value(grid[(i + 16 * w) % grid.size()]);
      });
    }
  }
  const auto fresh = LaplaceEvaluator::exact(kLambda, 50.0, 3.7);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    for (int w = 0; w < 4; ++w) CHECK(seen[w][i] == fresh.value(grid[i]));
  }
}

TEST_CASE("argument and parameter validation") {
  CHECK_THROWS_AS(laplace_exact(-1.0, kLambda, 50.0, 3.7), DomainError);
  CHECK_THROWS_AS(LaplaceEvaluator::exact(-1.0, 50.0, 3.7), InvalidConfig);
  CHECK_THROWS_AS(LaplaceEvaluator::approx(kLambda, 50.0, 2.0), InvalidConfig);
}
