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
#include "cfmimo/montecarlo.hpp"
#include "cfmimo/rate.hpp"
#include "cfmimo/specfun.hpp"

using namespace cfmimo;

namespace {

DerivedParams make(double sigma, int M, double gamma_db = -20.0, double en = 8.0) {
  SystemConfig cfg = desk_config();
  cfg.error_variance = sigma;
  cfg.user_antennas = M;
  cfg.gamma_db = gamma_db;
  cfg.expected_ap_count = en;
  return derive_params(cfg);
}

}  // namespace

TEST_CASE("rate from given moments") {
  const RateResult r = detail::compose_rate(8.0, 1.5, 30, 1e-5);
  const double penalty = std::sqrt(1.5 / 30.0) * gaussian_q_inv(1e-5) / std::numbers::ln2;
  CHECK(r.penalty_term == doctest::Approx(penalty).epsilon(1e-14));
  CHECK(r.rate == doctest::Approx(8.0 - penalty).epsilon(1e-14));
  CHECK_FALSE(r.below_zero);

  const RateResult neg = detail::compose_rate(0.1, 1.5, 30, 1e-9);
  CHECK(neg.rate < 0.0);
  CHECK(neg.below_zero);
}

TEST_CASE("epsilon one half removes the penalty only when widened") {
  CHECK_THROWS_AS(detail::compose_rate(8.0, 1.5, 30, 0.5), InvalidConfig);
  const RateResult r = detail::compose_rate(8.0, 1.5, 30, 0.5, true);
  CHECK(r.penalty_term == 0.0);
  CHECK(r.rate == 8.0);
  CHECK_THROWS_AS(detail::compose_rate(8.0, 1.5, 30, 0.0), InvalidConfig);
  CHECK_THROWS_AS(detail::compose_rate(8.0, 1.5, 0, 1e-5), InvalidConfig);
}

TEST_CASE("penalty scales as one over root blocklength") {
  const DerivedParams p = make(0.0, 2);
  const auto lx = LaplaceEvaluator::exact(p);
  const RateResult a = average_rate(p, lx, 50, 1e-5);
  const RateResult b = average_rate(p, lx, 100, 1e-5);
  CHECK(a.penalty_term / b.penalty_term == doctest::Approx(std::numbers::sqrt2).epsilon(1e-12));
  const RateResult inf = average_rate(p, lx, 1000000000, 1e-5);
  CHECK(inf.rate == doctest::Approx(expected_capacity(p, lx).value).epsilon(1e-3));
}

TEST_CASE("rate decomposition and normalization") {
  const DerivedParams p1 = make(0.05, 1);
  const auto l1 = LaplaceEvaluator::exact(p1);
  const RateResult r = average_rate(p1, l1, 30, 1e-7);
  CHECK(r.rate == doctest::Approx(r.capacity_term - r.penalty_term).epsilon(1e-14));
  CHECK(r.capacity_term == doctest::Approx(expected_capacity(p1, l1).value).epsilon(1e-14));
  CHECK(r.method == MomentMethod::integral_exact);
  CHECK(normalized_rate(p1, l1, 30, 1e-7).rate == r.rate);

  const DerivedParams p4 = make(0.05, 4);
  const auto l4 = LaplaceEvaluator::exact(p4);
  CHECK(normalized_rate(p4, l4, 30, 1e-7).rate ==
        doctest::Approx(average_rate(p4, l4, 30, 1e-7).rate / 4.0).epsilon(1e-14));
  CHECK(average_rate(p4, LaplaceEvaluator::approx(p4), 30, 1e-7).method == MomentMethod::integral_approx);
}

TEST_CASE("empty deployment has zero rate") {
  const DerivedParams p = make(0.0, 2, -20.0, 0.0);
  const RateResult r = average_rate(p, LaplaceEvaluator::exact(p), 30, 1e-5);
  CHECK(r.rate == doctest::Approx(0.0).epsilon(1e-10));
  CHECK(r.penalty_term == doctest::Approx(0.0).epsilon(1e-5));
  CHECK_THROWS_AS(block_error_probability(p, LaplaceEvaluator::exact(p), 30, 1.0), DomainError);
}

TEST_CASE("normalized rate at short blocklength") {
  double last = 1e9;
  for (double sigma : {0.0, 0.05, 0.1}) {
    const DerivedParams p = make(sigma, 2, 0.0);
    const RateResult r = normalized_rate(p, LaplaceEvaluator::exact(p), 10, 1e-7);
    CHECK(r.rate > 0.0);
    CHECK(r.rate < last);
    last = r.rate;
  }
}

TEST_CASE("rate agrees with a full simulation") {
  const DerivedParams p = make(0.0, 2);
  const RateResult closed = normalized_rate(p, LaplaceEvaluator::exact(p), 10, 1e-7);
  const MomentEstimates mc = mc_moments(p, 4000, 10, McMode::full, 3);
  const RateResult sim = detail::compose_rate(mc.mean_capacity, mc.mean_dispersion, 10, 1e-7);
  CHECK(sim.rate / p.M == doctest::Approx(closed.rate).epsilon(0.05));
}

TEST_CASE("block error probability") {
  // At the ergodic rate the argument vanishes.
  CHECK(detail::compose_bep(8.0, 1.5, 2, 30, 4.0) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(detail::compose_bep(8.0, 1.5, 2, 30, 0.0) < 1e-100);
  CHECK(detail::compose_bep(8.0, 1.5, 2, 30, 6.0) > 0.999);
  CHECK_THROWS_AS(detail::compose_bep(8.0, 0.0, 2, 30, 4.0), DomainError);
  CHECK_THROWS_AS(detail::compose_bep(8.0, 1.5, 2, 0, 4.0), InvalidConfig);
}

TEST_CASE("rate and block error probability are inverse") {
  for (int M : {1, 2, 4}) {
    for (double eps : {1e-3, 1e-5, 1e-7}) {
      const DerivedParams p = make(0.05, M);
      const auto lx = LaplaceEvaluator::exact(p);
      const RateResult r = normalized_rate(p, lx, 30, eps);
      CHECK(block_error_probability(p, lx, 30, r.rate) == doctest::Approx(eps).epsilon(1e-6));
    }
  }
}

TEST_CASE("block error probability falls with more user antennas") {
  double last = 1.0;
  for (int M : {1, 2, 4, 8}) {
    const DerivedParams p = make(0.0, M);
    const double bep = block_error_probability(p, LaplaceEvaluator::exact(p), 30, 4.0);
    CHECK(bep < last);
    last = bep;
  }
}

TEST_CASE("empirical evaluators are rejected") {
  const DerivedParams p = make(0.0, 2);
  const auto emp = LaplaceEvaluator::empirical(p.lambda, p.radius, p.alpha, 100, 1);
  CHECK_THROWS_AS(average_rate(p, emp, 30, 1e-5), DomainError);
  CHECK_THROWS_AS(block_error_probability(p, emp, 30, 1.0), DomainError);
}
