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

#include "cfmimo/laplace.hpp"

#include <bit>
#include <cmath>
#include <limits>
#include <mutex>
#include <numbers>
#include <shared_mutex>
#include <unordered_map>
#include <vector>

#include "cfmimo/error.hpp"
#include "cfmimo/montecarlo.hpp"
#include "cfmimo/quadrature.hpp"
#include "cfmimo/specfun.hpp"

namespace cfmimo {

namespace {

constexpr double kInnerTol = 1e-10;

class LogCache {
 public:
  template <class F>
  double get(double s, F&& compute) const {
    const auto key = std::bit_cast<std::uint64_t>(s);
    {
      std::shared_lock lock(mutex_);
      if (auto it = map_.find(key); it != map_.end()) return it->second;
    }
    const double v = compute(s);
    std::unique_lock lock(mutex_);
    map_.emplace(key, v);
    return v;
  }

 private:
  mutable std::shared_mutex mutex_;
  mutable std::unordered_map<std::uint64_t, double> map_;
};

void validate(double lambda, double radius, double alpha) {
  if (!(lambda >= 0.0) || !std::isfinite(lambda)) throw InvalidConfig("lambda", "must be >= 0");
  if (!(radius > 1.0) || !std::isfinite(radius)) throw InvalidConfig("radius", "must be > 1");
  if (!(alpha > 2.0) || !std::isfinite(alpha)) throw InvalidConfig("alpha", "must be > 2");
}

void require_nonnegative(double s) {
  if (!(s >= 0.0)) throw DomainError("Laplace transform argument must be >= 0");
}

}  // namespace

struct LaplaceEvaluator::State {
  LaplaceVariant variant;
  double lambda;
  double radius;
  double alpha;
  // approx
  double frac_coef = 0.0;
  double lin_coef = 0.0;
  double power = 0.0;
  // empirical
  std::vector<double> samples;
  LogCache cache;

  // int_0^R (1 - e^(-a l(r))) (1 - e^(-b l(r))) 2 pi r dr, the b = inf case
  // being int_0^R (1 - e^(-a l(r))) 2 pi r dr.
  double exact_exponent(double a, double b) const {
    const double both = std::isinf(b) ? -std::expm1(-a) : std::expm1(-a) * std::expm1(-b);
    double head = std::numbers::pi * both;
    const auto f = [&](double t) {
      const double l = std::exp(-alpha * t);
      const double fa = -std::expm1(-a * l);
      const double fb = std::isinf(b) ? 1.0 : -std::expm1(-b * l);
      return fa * fb * std::exp(2.0 * t);
    };
    const QuadratureResult r = integrate_finite(f, 0.0, std::log(radius), kInnerTol);
    return head + 2.0 * std::numbers::pi * r.value;
  }

  double log_value(double s) const {
    require_nonnegative(s);
    if (s == 0.0 || lambda == 0.0) return 0.0;
    switch (variant) {
      case LaplaceVariant::exact:
        return cache.get(s, [this](double x) { return -lambda * exact_exponent(x, INFINITY); });
      case LaplaceVariant::approx:
        return frac_coef * std::pow(s, power) + lin_coef * s;
      case LaplaceVariant::empirical:
        return std::log(empirical_mean(s));
    }
    return 0.0;
  }

  double empirical_mean(double s) const {
    double acc = 0.0;
    for (double x : samples) acc += std::exp(-s * x);
    return acc / static_cast<double>(samples.size());
  }
};

LaplaceEvaluator LaplaceEvaluator::exact(double lambda, double radius, double alpha) {
  validate(lambda, radius, alpha);
  auto st = std::make_shared<State>();
  st->variant = LaplaceVariant::exact;
  st->lambda = lambda;
  st->radius = radius;
  st->alpha = alpha;
  return LaplaceEvaluator(std::move(st));
}

LaplaceEvaluator LaplaceEvaluator::approx(double lambda, double radius, double alpha) {
  validate(lambda, radius, alpha);
  auto st = std::make_shared<State>();
  st->variant = LaplaceVariant::approx;
  st->lambda = lambda;
  st->radius = radius;
  st->alpha = alpha;
  st->power = 2.0 / alpha;
  st->frac_coef = 2.0 * std::numbers::pi * lambda / alpha * gamma_neg(-2.0 / alpha);
  st->lin_coef = 2.0 * std::numbers::pi * lambda * std::pow(radius, 2.0 - alpha) / (alpha - 2.0);
  return LaplaceEvaluator(std::move(st));
}

LaplaceEvaluator LaplaceEvaluator::empirical(double lambda, double radius, double alpha,
                                             long samples, std::uint64_t seed) {
  validate(lambda, radius, alpha);
  if (samples < 1) throw InvalidConfig("samples", "must be >= 1");
  auto st = std::make_shared<State>();
  st->variant = LaplaceVariant::empirical;
  st->lambda = lambda;
  st->radius = radius;
  st->alpha = alpha;
  st->samples.resize(samples);
  for (long i = 0; i < samples; ++i) {
    RandomStream rng = make_stream(seed, StreamSpace::empirical_mgf, static_cast<std::uint64_t>(i));
    st->samples[i] = aggregate_fading(sample_ppp_disk(lambda, radius, rng), alpha);
  }
  return LaplaceEvaluator(std::move(st));
}

LaplaceEvaluator LaplaceEvaluator::exact(const DerivedParams& p) {
  return exact(p.lambda, p.radius, p.alpha);
}

LaplaceEvaluator LaplaceEvaluator::approx(const DerivedParams& p) {
  return approx(p.lambda, p.radius, p.alpha);
}

LaplaceVariant LaplaceEvaluator::variant() const { return state_->variant; }
double LaplaceEvaluator::lambda() const { return state_->lambda; }
double LaplaceEvaluator::radius() const { return state_->radius; }
double LaplaceEvaluator::alpha() const { return state_->alpha; }

double LaplaceEvaluator::log_value(double s) const { return state_->log_value(s); }

double LaplaceEvaluator::value(double s) const { return std::exp(state_->log_value(s)); }

double LaplaceEvaluator::one_minus(double s) const {
  if (state_->variant == LaplaceVariant::empirical) {
    require_nonnegative(s);
    double acc = 0.0;
    for (double x : state_->samples) acc -= std::expm1(-s * x);
    return acc / static_cast<double>(state_->samples.size());
  }
  return -std::expm1(state_->log_value(s));
}

double LaplaceEvaluator::joint_log_ratio(double a, double b) const {
  require_nonnegative(a);
  require_nonnegative(b);
  const State& st = *state_;
  if (a == 0.0 || b == 0.0 || st.lambda == 0.0) return 0.0;
  switch (st.variant) {
    case LaplaceVariant::exact:
      return st.lambda * st.exact_exponent(a, b);
    case LaplaceVariant::approx: {
      // (a+b)^p - a^p - b^p with the linear terms cancelled analytically.
      const double big = std::max(a, b);
      const double small = std::min(a, b);
      const double p = st.power;
      return st.frac_coef *
             (std::pow(big, p) * std::expm1(p * std::log1p(small / big)) - std::pow(small, p));
    }
    case LaplaceVariant::empirical:
      return st.log_value(a + b) - st.log_value(a) - st.log_value(b);
  }
  return 0.0;
}

double LaplaceEvaluator::covariance(double a, double b) const {
  const double delta = joint_log_ratio(a, b);
  if (delta == 0.0) return 0.0;
  return std::exp(state_->log_value(a) + state_->log_value(b)) * std::expm1(delta);
}

double LaplaceEvaluator::mean() const {
  const State& st = *state_;
  switch (st.variant) {
    case LaplaceVariant::exact:
      return st.lambda * std::numbers::pi * st.radius * st.radius *
             mean_path_loss(st.radius, st.alpha);
    case LaplaceVariant::approx:
      return st.lambda == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
    case LaplaceVariant::empirical: {
      double acc = 0.0;
      for (double x : st.samples) acc += x;
      return acc / static_cast<double>(st.samples.size());
    }
  }
  return 0.0;
}

double LaplaceEvaluator::validity_limit() const {
  const State& st = *state_;
  if (st.variant != LaplaceVariant::approx || st.lambda == 0.0) {
    return std::numeric_limits<double>::infinity();
  }
  // d/ds (a s^p + c s) = 0.
  return std::pow(-st.frac_coef * st.power / st.lin_coef, 1.0 / (1.0 - st.power));
}

double laplace_exact(double s, double lambda, double radius, double alpha) {
  return LaplaceEvaluator::exact(lambda, radius, alpha).value(s);
}

double laplace_approx(double s, double lambda, double radius, double alpha) {
  return LaplaceEvaluator::approx(lambda, radius, alpha).value(s);
}

MgfEstimate empirical_mgf(double s, double lambda, double radius, double alpha, long samples,
                          std::uint64_t seed) {
  require_nonnegative(s);
  if (samples < 1) throw InvalidConfig("samples", "must be >= 1");
  double sum = 0.0, sum_sq = 0.0;
  for (long i = 0; i < samples; ++i) {
    RandomStream rng = make_stream(seed, StreamSpace::empirical_mgf, static_cast<std::uint64_t>(i));
    const double x = aggregate_fading(sample_ppp_disk(lambda, radius, rng), alpha);
    const double e = std::exp(-s * x);
    sum += e;
    sum_sq += e * e;
  }
  const double n = static_cast<double>(samples);
  MgfEstimate out;
  out.mean = sum / n;
  if (samples > 1) {
    const double var = std::max(0.0, (sum_sq - n * out.mean * out.mean) / (n - 1.0));
    out.std_error = std::sqrt(var / n);
  }
  return out;
}

}  // namespace cfmimo
