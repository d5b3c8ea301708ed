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

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include <mpfr.h>

#include "cfmimo/specfun.hpp"

namespace cfmimo {

namespace {

constexpr int kMaxTerms = 200000;
constexpr int kMaxPrecisionBits = 1 << 15;
constexpr int kGuardBits = 80;

class MpfrValue {
 public:
  explicit MpfrValue(mpfr_prec_t prec) { mpfr_init2(v_, prec); mpfr_set_zero(v_, 1); }
  ~MpfrValue() { mpfr_clear(v_); }
  MpfrValue(const MpfrValue&) = delete;
  MpfrValue& operator=(const MpfrValue&) = delete;
  mpfr_ptr get() { return v_; }
  mpfr_srcptr get() const { return v_; }
  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
  /// log2 |v|, -inf for zero.
  double log2_abs() const {
    if (mpfr_zero_p(v_)) return -std::numeric_limits<double>::infinity();
    long exp = 0;
    const double mant = mpfr_get_d_2exp(&exp, v_, MPFR_RNDN);
    return std::log2(std::abs(mant)) + static_cast<double>(exp);
  }

 private:
  mpfr_t v_;
};

struct PassOutcome {
  SeriesResult result;
  double log2_peak;    // largest |term|, log2
  double log2_result;  // |sum|, log2
};

// One summation at fixed precision. Stops once three consecutive terms are
// below rel_tol relative to the partial sum and the term magnitudes have
// passed their peak.
PassOutcome sum_series(double a, double A, double z, double rel_tol, mpfr_prec_t prec) {
  MpfrValue sum(prec), term(prec), arg(prec), lg(prec), log_fact(prec), log_abs_z(prec),
      scratch(prec);
  mpfr_set_d(scratch.get(), std::abs(z), MPFR_RNDN);
  mpfr_log(log_abs_z.get(), scratch.get(), MPFR_RNDN);
  mpfr_set_zero(log_fact.get(), 1);

  double log2_peak = -std::numeric_limits<double>::infinity();
  double prev_log2_term = -std::numeric_limits<double>::infinity();
  bool past_peak = false;
  int small_run = 0;
  const double log2_tol = std::log2(rel_tol);

  for (int n = 0; n < kMaxTerms; ++n) {
    const double x = a + A * n;
    if (x <= 0.0 && x == std::floor(x)) {
      throw DomainError("wright_psi_1_0: a + A n hits a pole of Gamma at n = " +
                        std::to_string(n));
    }
    // arg = a + A n, computed in working precision
    mpfr_set_d(arg.get(), A, MPFR_RNDN);
    mpfr_mul_si(arg.get(), arg.get(), n, MPFR_RNDN);
    mpfr_set_d(scratch.get(), a, MPFR_RNDN);
    mpfr_add(arg.get(), arg.get(), scratch.get(), MPFR_RNDN);
    int gamma_sign = 1;
    mpfr_lgamma(lg.get(), &gamma_sign, arg.get(), MPFR_RNDN);

    if (n > 0) {
      mpfr_log_ui(scratch.get(), static_cast<unsigned long>(n), MPFR_RNDN);
      mpfr_add(log_fact.get(), log_fact.get(), scratch.get(), MPFR_RNDN);
    }
    // log|term| = lgamma(a + A n) + n log|z| - log n!
    mpfr_mul_si(scratch.get(), log_abs_z.get(), n, MPFR_RNDN);
    mpfr_add(term.get(), lg.get(), scratch.get(), MPFR_RNDN);
    mpfr_sub(term.get(), term.get(), log_fact.get(), MPFR_RNDN);
    const double log_term = mpfr_get_d(term.get(), MPFR_RNDN);
    if (!std::isfinite(log_term) || log_term > 7.0e5) {
      throw OverflowError("wright_psi_1_0: term magnitude exceeds representable range at n = " +
                          std::to_string(n));
    }
    const double log2_term = log_term / std::numbers::ln2;
    mpfr_exp(term.get(), term.get(), MPFR_RNDN);
    const bool negative = (gamma_sign < 0) != (z < 0.0 && (n % 2 == 1));
    if (negative) mpfr_neg(term.get(), term.get(), MPFR_RNDN);
    mpfr_add(sum.get(), sum.get(), term.get(), MPFR_RNDN);

    log2_peak = std::max(log2_peak, log2_term);
    if (n > 0 && log2_term < prev_log2_term) past_peak = true;
    prev_log2_term = log2_term;

    const double log2_sum = sum.log2_abs();
    if (past_peak && log2_term - log2_sum < log2_tol) {
      ++small_run;
    } else {
      small_run = 0;
    }
    if (small_run >= 3) {
      // Beyond the peak the term ratio decreases monotonically, so the tail
      // is bounded by a geometric series at the next ratio.
      const double next_log = std::lgamma(x + A) + (n + 1) * std::log(std::abs(z)) -
                              std::lgamma(n + 2.0);
      const double log2_next = next_log / std::numbers::ln2;
      const double ratio = std::exp2(log2_next - log2_term);
      PassOutcome out;
      out.result.value = sum.to_double();
      out.result.terms_used = n + 1;
      out.result.precision_bits = static_cast<int>(prec);
      out.result.truncation_bound = ratio < 1.0
                                        ? std::exp2(log2_next) / (1.0 - ratio)
                                        : std::numeric_limits<double>::infinity();
      out.log2_peak = log2_peak;
      out.log2_result = log2_sum;
      return out;
    }
  }
  throw ConvergenceError("wright_psi_1_0: tolerance not met within term limit",
                         sum.to_double(), std::numeric_limits<double>::infinity());
}

}  // namespace

SeriesResult wright_psi_1_0(double a, double A, double z, double rel_tol) {
  if (!(A > 0.0 && A < 1.0)) throw DomainError("wright_psi_1_0: A must lie in (0, 1)");
  if (!std::isfinite(a) || !std::isfinite(z)) {
    throw DomainError("wright_psi_1_0: a and z must be finite");
  }
  if (!(rel_tol > 0.0)) throw DomainError("wright_psi_1_0: rel_tol must be positive");
  if (z == 0.0) {
    if (a <= 0.0 && a == std::floor(a)) throw DomainError("wright_psi_1_0: Gamma(a) has a pole");
    return {std::tgamma(a), 1, 0.0, 53};
  }

  mpfr_prec_t prec = 128;
  for (;;) {
    const PassOutcome pass = sum_series(a, A, z, rel_tol, prec);
    // Bits lost to cancellation between the largest term and the result.
    const double lost = std::max(0.0, pass.log2_peak - pass.log2_result);
    const double needed = lost + 53.0 + kGuardBits;
    if (needed <= static_cast<double>(prec)) return pass.result;
    if (needed > kMaxPrecisionBits) {
      throw OverflowError("wright_psi_1_0: cancellation needs more than " +
                          std::to_string(kMaxPrecisionBits) + " bits");
    }
    prec = static_cast<mpfr_prec_t>(needed) + 64;
  }
}

}  // namespace cfmimo
