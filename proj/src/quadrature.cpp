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

#include "cfmimo/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <queue>
#include <string>
#include <vector>

namespace cfmimo {

namespace {

// Kronrod 21-point abscissae and weights; the Gauss 10-point rule uses the
// odd-indexed abscissae.
constexpr double kXgk[11] = {
    0.995657163025808080735527280689003, 0.973906528517171720077964012084452,
    0.930157491355708226001207180059508, 0.865063366688984510732096688423493,
    0.780817726586416897063717578345042, 0.679409568299024406234327365114874,
    0.562757134668604683339000099272694, 0.433395394129247190799265943165784,
    0.294392862701460198131126603103866, 0.148874338981631210884826001129720,
    0.000000000000000000000000000000000};
constexpr double kWgk[11] = {
    0.011694638867371874278064396062192, 0.032558162307964727478818972459390,
    0.054755896574351996031381300244580, 0.075039674810919952767043140916190,
    0.093125454583697605535065465083366, 0.109387158802297641899210590325805,
    0.123491976262065851077600525981678, 0.134709217311473325928054001771707,
    0.142775938577060080797094273138717, 0.147739104901338491374841515972068,
    0.149445554002916905664936468389821};
constexpr double kWg[5] = {
    0.066671344308688137593568809893332, 0.149451349150580593145776339657697,
    0.219086362515982043995534934228163, 0.269266719309996355091226921569469,
    0.295524224714752870173892994651338};

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr std::size_t kMaxPanels = 4000;
constexpr int kPointsPerDecade = 4;
constexpr int kDecadesBelowTol = 3;
constexpr double kMaxAbscissa = 1e300;
constexpr double kMinAbscissa = 1e-300;

struct Panel {
  double a;
  double b;
  double value;
  double error;
};

struct ByError {
  bool operator()(const Panel& x, const Panel& y) const {
    if (x.error != y.error) return x.error < y.error;
    return x.a > y.a;  // deterministic tie-break
  }
};

Panel gauss_kronrod_21(const Integrand& f, double a, double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double f_center = f(center);
  double res_gauss = 0.0;
  double res_kronrod = f_center * kWgk[10];
  double res_abs = std::abs(res_kronrod);
  double fv1[10];
  double fv2[10];
  for (int j = 0; j < 10; ++j) {
    const double dx = half * kXgk[j];
    const double f1 = f(center - dx);
    const double f2 = f(center + dx);
    fv1[j] = f1;
    fv2[j] = f2;
    res_kronrod += kWgk[j] * (f1 + f2);
    res_abs += kWgk[j] * (std::abs(f1) + std::abs(f2));
    if (j % 2 == 1) res_gauss += kWg[j / 2] * (f1 + f2);
  }
  const double mean = 0.5 * res_kronrod;
  double res_asc = kWgk[10] * std::abs(f_center - mean);
  for (int j = 0; j < 10; ++j) {
    res_asc += kWgk[j] * (std::abs(fv1[j] - mean) + std::abs(fv2[j] - mean));
  }
  const double scale = std::abs(half);
  const double value = res_kronrod * half;
  res_abs *= scale;
  res_asc *= scale;
  double error = std::abs((res_kronrod - res_gauss) * half);
  if (res_asc != 0.0 && error != 0.0) {
    error = res_asc * std::min(1.0, std::pow(200.0 * error / res_asc, 1.5));
  }
  if (res_abs > std::numeric_limits<double>::min() / (50.0 * kEps)) {
    error = std::max(50.0 * kEps * res_abs, error);
  }
  if (!std::isfinite(value) || !std::isfinite(error)) {
    throw DivergenceError("quadrature: integrand is not finite on [" + std::to_string(a) +
                          ", " + std::to_string(b) + "]");
  }
  return {a, b, value, error};
}

// Global adaptive integration: repeatedly bisect the panel with the largest
// error estimate.
QuadratureResult adaptive(const Integrand& f, double a, double b, double rel_tol,
                          double abs_tol, int initial_panels) {
  std::priority_queue<Panel, std::vector<Panel>, ByError> queue;
  std::vector<Panel> frozen;  // too narrow to bisect further
  long evaluations = 0;
  double total = 0.0;
  double error = 0.0;
  const int n0 = std::max(1, initial_panels);
  for (int i = 0; i < n0; ++i) {
    const double lo = a + (b - a) * i / n0;
    const double hi = (i + 1 == n0) ? b : a + (b - a) * (i + 1) / n0;
    const Panel p = gauss_kronrod_21(f, lo, hi);
    evaluations += 21;
    total += p.value;
    error += p.error;
    queue.push(p);
  }

  auto finish = [&]() {
    std::vector<Panel> all = frozen;
    while (!queue.empty()) {
      all.push_back(queue.top());
      queue.pop();
    }
    std::sort(all.begin(), all.end(), [](const Panel& x, const Panel& y) { return x.a < y.a; });
    QuadratureResult r;
    r.evaluations = evaluations;
    for (const Panel& p : all) {
      r.value += p.value;
      r.error_estimate += p.error;
    }
    return r;
  };

  while (error > std::max(rel_tol * std::abs(total), abs_tol)) {
    if (queue.empty()) break;
    if (queue.size() + frozen.size() >= kMaxPanels) {
      throw QuadratureError("quadrature: panel budget exhausted before reaching tolerance",
                            finish());
    }
    const Panel worst = queue.top();
    queue.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(mid > worst.a && mid < worst.b) ||
        (worst.b - worst.a) < 1e3 * kEps * std::max(std::abs(worst.a), std::abs(worst.b))) {
      frozen.push_back(worst);
      continue;
    }
    const Panel left = gauss_kronrod_21(f, worst.a, mid);
    const Panel right = gauss_kronrod_21(f, mid, worst.b);
    evaluations += 42;
    total += left.value + right.value - worst.value;
    error += left.error + right.error - worst.error;
    queue.push(left);
    queue.push(right);
  }
  QuadratureResult r = finish();
  if (r.error_estimate > std::max(rel_tol * std::abs(r.value), abs_tol) &&
      r.error_estimate > 1e3 * kEps * std::abs(r.value)) {
    throw QuadratureError("quadrature: tolerance not reached (round-off limited)", r);
  }
  return r;
}

struct ScanRange {
  double lo = 0.0;
  double hi = 0.0;
  double peak = 0.0;
  double tail_mass = 0.0;  // |f| s at the upper cut, per unit log s
  long evaluations = 0;
};

// Walks a log grid outward from the anchor, looking at the mass density
// |f(s)| s, until both ends have stayed below rel_tol * peak for
// kDecadesBelowTol decades. With `bounded` the upper end is the anchor.
ScanRange scan_log_axis(const Integrand& f, double anchor, bool bounded, double rel_tol) {
  const double step = std::numbers::ln10 / kPointsPerDecade;
  const int needed = kDecadesBelowTol * kPointsPerDecade;
  ScanRange range;
  auto density = [&](double s) {
    const double v = std::abs(f(s)) * s;
    ++range.evaluations;
    return v;
  };

  const double g0 = density(anchor);
  if (std::isnan(g0)) throw DivergenceError("quadrature: integrand is NaN at scan anchor");
  if (std::isinf(g0)) throw DivergenceError("quadrature: integrand is infinite at scan anchor");
  range.peak = g0;
  range.lo = anchor;
  range.hi = anchor;
  range.tail_mass = g0;

  bool up_done = bounded;
  bool down_done = false;
  int up_run = 0;
  int down_run = 0;
  int up_k = 0;
  int down_k = 0;
  while (!up_done || !down_done) {
    if (!up_done) {
      ++up_k;
      const double s = anchor * std::exp(up_k * step);
      if (s > kMaxAbscissa) {
        throw DivergenceError("quadrature: integrand does not decay as s -> infinity");
      }
      const double g = density(s);
      if (!std::isfinite(g)) {
        throw DivergenceError("quadrature: integrand grows without bound (s = " +
                              std::to_string(s) + ")");
      }
      range.peak = std::max(range.peak, g);
      up_run = (g <= rel_tol * range.peak) ? up_run + 1 : 0;
      range.hi = s;
      range.tail_mass = g;
      if (up_run >= needed) up_done = true;
    }
    if (!down_done) {
      --down_k;
      const double s = anchor * std::exp(down_k * step);
      if (s < kMinAbscissa) {
        down_done = true;
      } else {
        const double g = density(s);
        if (!std::isfinite(g)) {
          throw DivergenceError("quadrature: integrand is not integrable at the origin");
        }
        range.peak = std::max(range.peak, g);
        down_run = (g <= rel_tol * range.peak) ? down_run + 1 : 0;
        range.lo = s;
        if (down_run >= needed) down_done = true;
      }
    }
  }
  return range;
}

QuadratureResult integrate_log_scanned(const Integrand& f, double anchor, bool bounded,
                                       const SemiInfiniteOptions& opts) {
  const double p = opts.singularity_exponent;
  if (!(p > -1.0 && p <= 0.0)) {
    throw DomainError("quadrature: singularity exponent must lie in (-1, 0]");
  }
  if (!(opts.rel_tol > 0.0)) throw DomainError("quadrature: rel_tol must be positive");

  const ScanRange range = scan_log_axis(f, anchor, bounded, opts.rel_tol);
  QuadratureResult out;
  out.evaluations = range.evaluations;
  if (range.peak == 0.0) return out;  // identically zero on the grid

  // Middle: s = e^t over [lo, hi].
  const double t_lo = std::log(range.lo);
  const double t_hi = std::log(range.hi);
  const Integrand in_log = [&f](double t) {
    const double s = std::exp(t);
    return f(s) * s;
  };
  const int decades = static_cast<int>(std::ceil((t_hi - t_lo) / std::numbers::ln10));
  const QuadratureResult middle =
      adaptive(in_log, t_lo, t_hi, opts.rel_tol, 0.0, std::max(1, (decades + 1) / 2));

  // Origin: s = lo * w^q with q = 1 / (1 + p) turns C s^p into a constant.
  const double q = 1.0 / (1.0 + p);
  const double lo = range.lo;
  const Integrand near_origin = [&f, lo, q](double w) {
    if (w <= 0.0) return 0.0;
    return lo * q * f(lo * std::pow(w, q)) * std::pow(w, q - 1.0);
  };
  const QuadratureResult origin =
      adaptive(near_origin, 0.0, 1.0, opts.rel_tol, opts.rel_tol * std::abs(middle.value), 1);

  out.value = middle.value + origin.value;
  out.error_estimate = middle.error_estimate + origin.error_estimate;
  if (!bounded) out.error_estimate += range.tail_mass * std::numbers::ln10;
  out.evaluations += middle.evaluations + origin.evaluations;
  return out;
}

}  // namespace

QuadratureResult integrate_finite(const Integrand& f, double a, double b, double rel_tol,
                                  double abs_tol) {
  if (!(a < b)) throw DomainError("integrate_finite: need a < b");
  if (!(rel_tol > 0.0) && !(abs_tol > 0.0)) {
    throw DomainError("integrate_finite: a positive tolerance is required");
  }
  return adaptive(f, a, b, rel_tol, abs_tol, 1);
}

QuadratureResult integrate_semi_infinite(const Integrand& f, const SemiInfiniteOptions& opts) {
  if (!(opts.scale_hint > 0.0)) throw DomainError("quadrature: scale_hint must be positive");
  return integrate_log_scanned(f, opts.scale_hint, false, opts);
}

QuadratureResult integrate_from_zero(const Integrand& f, double b, const SemiInfiniteOptions& opts) {
  if (!(b > 0.0)) throw DomainError("integrate_from_zero: need b > 0");
  return integrate_log_scanned(f, b, true, opts);
}

QuadratureResult integrate_double_semi_infinite(const Integrand2& f, const SemiInfiniteOptions& opts,
                                                bool symmetric) {
  SemiInfiniteOptions inner = opts;
  inner.rel_tol = opts.rel_tol * 0.1;
  long inner_evaluations = 0;
  const Integrand outer = [&](double v) {
    const Integrand slice = [&f, v](double u) { return f(u, v); };
    const QuadratureResult r =
        symmetric ? integrate_from_zero(slice, v, inner) : integrate_semi_infinite(slice, inner);
    inner_evaluations += r.evaluations;
    return r.value;
  };
  QuadratureResult r = integrate_semi_infinite(outer, opts);
  // Every outer abscissa carries a relative error of at most inner.rel_tol.
  r.error_estimate += inner.rel_tol * std::abs(r.value);
  r.evaluations = inner_evaluations;
  if (symmetric) {
    r.value *= 2.0;
    r.error_estimate *= 2.0;
  }
  return r;
}

}  // namespace cfmimo
