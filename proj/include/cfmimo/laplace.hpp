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

#include <cstdint>
#include <memory>
#include <utility>

#include "cfmimo/config.hpp"

namespace cfmimo {

enum class LaplaceVariant { exact, approx, empirical };

/// Laplace transform L_X(s) = E[exp(-s X)] of the aggregate large-scale
/// fading X = sum_n l(d_n) over a PPP of density lambda on a disk of
/// radius R.
///
/// exact:     log L = -lambda [pi (1 - e^-s) + 2 pi int_1^R (1 - e^(-s r^-alpha)) r dr]
/// approx:    log L = a s^(2/alpha) + c s, a = (2 pi lambda / alpha) Gamma(-2/alpha),
///            c = 2 pi lambda R^(2-alpha) / (alpha - 2)
/// empirical: sample average over PPP draws.
///
/// Evaluators are immutable; copies share a thread-safe memo of exact
/// log-values keyed on s.
class LaplaceEvaluator {
 public:
  static LaplaceEvaluator exact(double lambda, double radius, double alpha);
  static LaplaceEvaluator approx(double lambda, double radius, double alpha);
  static LaplaceEvaluator empirical(double lambda, double radius, double alpha, long samples,
                                    std::uint64_t seed);
  static LaplaceEvaluator exact(const DerivedParams& p);
  static LaplaceEvaluator approx(const DerivedParams& p);

  LaplaceVariant variant() const;
  double lambda() const;
  double radius() const;
  double alpha() const;

  double log_value(double s) const;
  double value(double s) const;
  /// 1 - L(s), accurate when L(s) is close to 1.
  double one_minus(double s) const;
  /// log[L(a + b) / (L(a) L(b))] >= 0.
  double joint_log_ratio(double a, double b) const;
  /// L(a + b) - L(a) L(b), accurate when it is tiny compared to the terms.
  double covariance(double a, double b) const;
  /// E[X]; +inf for the approximate variant, whose exponent has no linear
  /// term at the origin.
  double mean() const;
  /// For the approximate variant, the s beyond which the exponent grows
  /// (the linear term dominates) and L may exceed 1. +inf otherwise.
  double validity_limit() const;
  bool beyond_validity(double s) const { return s > validity_limit(); }

  struct State;

 private:
  explicit LaplaceEvaluator(std::shared_ptr<const State> state) : state_(std::move(state)) {}
  std::shared_ptr<const State> state_;
};

double laplace_exact(double s, double lambda, double radius, double alpha);
double laplace_approx(double s, double lambda, double radius, double alpha);

struct MgfEstimate {
  double mean = 1.0;
  double std_error = 0.0;
};

/// Sample mean of exp(-s X) over `samples` independent PPP draws.
MgfEstimate empirical_mgf(double s, double lambda, double radius, double alpha, long samples,
                          std::uint64_t seed);

}  // namespace cfmimo
