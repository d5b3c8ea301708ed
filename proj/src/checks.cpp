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

#include "cfmimo/checks.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <numbers>
#include <sstream>

#include "cfmimo/config.hpp"
#include "cfmimo/error.hpp"
#include "cfmimo/laplace.hpp"
#include "cfmimo/moments.hpp"
#include "cfmimo/montecarlo.hpp"
#include "cfmimo/rate.hpp"
#include "cfmimo/specfun.hpp"
#include "cfmimo/sweep.hpp"

namespace cfmimo {

namespace {

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", v);
  return buf;
}

// Collects per-case outcomes; keeps the worst score and the first failure.
class Tally {
 public:
  void record(bool ok, double score, const std::string& what) {
    ++cases_;
    if (!ok) {
      ++failed_;
      if (first_failure_.empty()) first_failure_ = what;
    }
    if (score > worst_score_) {
      worst_score_ = score;
      worst_ = what;
    }
  }
  void skip() { ++skipped_; }
  bool pass() const { return failed_ == 0 && cases_ > 0; }
  std::string summary() const {
    std::string s = std::to_string(cases_) + " cases";
    if (skipped_) s += ", " + std::to_string(skipped_) + " skipped";
    if (failed_) s += ", " + std::to_string(failed_) + " failed; first: " + first_failure_;
    if (!worst_.empty()) s += "; worst: " + worst_;
    return s;
  }

 private:
  int cases_ = 0;
  int failed_ = 0;
  int skipped_ = 0;
  double worst_score_ = -std::numeric_limits<double>::infinity();
  std::string worst_;
  std::string first_failure_;
};

double rel_diff(double a, double b) {
  const double scale = std::max(std::abs(a), std::abs(b));
  return scale == 0.0 ? 0.0 : std::abs(a - b) / scale;
}

SystemConfig grid_config(double en, double sigma, double omega, int m) {
  SystemConfig c = desk_config();
  c.expected_ap_count = en;
  c.error_variance = sigma;
  c.antenna_ratio = omega;
  c.user_antennas = m;
  return c;
}

std::string label(double en, double sigma, double omega, int m) {
  return "E_N=" + num(en) + " sigma_e2=" + num(sigma) + " omega=" + num(omega) +
         " M=" + std::to_string(m);
}

template <class F>
void for_grid(F&& body) {
  for (double en : {4.0, 8.0, 16.0}) {
    for (double sigma : {0.0, 0.05, 0.1}) {
      for (double omega : {2.0, 8.0}) {
        for (int m : {1, 2, 4}) body(en, sigma, omega, m);
      }
    }
  }
}

void add_runtime(CheckResult& r, double limit) {
  r.detail += "; runtime " + num(r.seconds) + " s (limit " + num(limit) + " s)";
  if (r.seconds >= limit) r.pass = false;
}

// Acceptance criteria.

CheckResult laplace_vs_empirical() {
  constexpr double kSigmas = 4.0;
  constexpr long kSamples = 100000;
  const double lambda = 8.0 / (std::numbers::pi * 50.0 * 50.0);
  const auto lx = LaplaceEvaluator::exact(lambda, 50.0, 3.7);
  Tally t;
  for (double s : {0.1, 0.5, 1.0, 5.0}) {
    const MgfEstimate e = empirical_mgf(s, lambda, 50.0, 3.7, kSamples, 101);
    const double z = std::abs(lx.value(s) - e.mean) / e.std_error;
    t.record(z <= kSigmas, z, "s=" + num(s) + " z=" + num(z));
  }
  return {"", "", t.pass(), t.summary(), 0.0};
}

CheckResult wright_vs_quadrature() {
  constexpr double kTol = 1e-6;
  Tally t;
  for_grid([&](double en, double sigma, double omega, int m) {
    const DerivedParams p = derive_params(grid_config(en, sigma, omega, m));
    if (!check_convergence(p).pass) {
      t.skip();
      return;
    }
    const auto lx = LaplaceEvaluator::approx(p);
    const double ev = rel_diff(expected_dispersion(p, lx).value,
                               expected_dispersion_simplified(p).value);
    const double vv =
        rel_diff(var_dispersion(p, lx).value, var_dispersion_simplified(p).value);
    t.record(ev <= kTol, ev, label(en, sigma, omega, m) + " EV rel=" + num(ev));
    t.record(vv <= kTol, vv, label(en, sigma, omega, m) + " VarV rel=" + num(vv));
  });
  return {"", "", t.pass(), t.summary(), 0.0};
}

CheckResult closed_vs_large_scale_mc() {
  constexpr double kSigmas = 3.0;
  constexpr long kTrials = 100000;
  Tally t;
  for_grid([&](double en, double sigma, double omega, int m) {
    const DerivedParams p = derive_params(grid_config(en, sigma, omega, m));
    const auto lx = LaplaceEvaluator::exact(p);
    const MomentEstimates mc = mc_moments(p, kTrials, 1, McMode::large_scale_only, 202);
    const std::string where = label(en, sigma, omega, m);
    auto cmp = [&](const char* name, double cf, double est, double se) {
      const double z = se > 0.0 ? std::abs(cf - est) / se : (cf == est ? 0.0 : INFINITY);
      t.record(z <= kSigmas, z, where + " " + name + " z=" + num(z));
    };
    cmp("EV", expected_dispersion(p, lx).value, mc.mean_dispersion, mc.se_mean_dispersion);
    cmp("VarV", var_dispersion(p, lx).value, mc.var_dispersion, mc.se_var_dispersion);
    cmp("EC", expected_capacity(p, lx).value, mc.mean_capacity, mc.se_mean_capacity);
    cmp("VarC", var_capacity(p, lx).value, mc.var_capacity, mc.se_var_capacity);
  });
  return {"", "", t.pass(), t.summary(), 0.0};
}

CheckResult closed_vs_full_mc() {
  constexpr double kTol = 0.05;
  Tally t;
  for (double sigma : {0.0, 0.05, 0.1}) {
    for (double omega : {2.0, 8.0}) {
      for (int m : {1, 2, 4}) {
        const DerivedParams p = derive_params(grid_config(8.0, sigma, omega, m));
        const auto lx = LaplaceEvaluator::exact(p);
        const MomentEstimates mc = mc_moments(p, 20000, 50, McMode::full, 303);
        const std::string where = label(8.0, sigma, omega, m);
        const double ec = rel_diff(expected_capacity(p, lx).value, mc.mean_capacity);
        const double ev = rel_diff(expected_dispersion(p, lx).value, mc.mean_dispersion);
        t.record(ec <= kTol, ec, where + " EC rel=" + num(ec));
        t.record(ev <= kTol, ev, where + " EV rel=" + num(ev));
      }
    }
  }
  return {"", "", t.pass(), t.summary(), 0.0};
}

CheckResult lambda_zero_exact() {
  constexpr double kTol = 1e-10;
  Tally t;
  for (int m : {1, 2}) {
    for (double sigma : {0.0, 0.1}) {
      SystemConfig c = desk_config();
      c.expected_ap_count = 0.0;
      c.user_antennas = m;
      c.error_variance = sigma;
      const DerivedParams p = derive_params(c);
      const std::string where = "M=" + std::to_string(m) + " sigma_e2=" + num(sigma);
      auto zero = [&](const std::string& name, double v) {
        t.record(std::abs(v) <= kTol, std::abs(v), where + " " + name + "=" + num(v));
      };
      for (MomentMethod mm : {MomentMethod::integral_exact, MomentMethod::integral_approx}) {
        const auto lx = evaluator_for(mm, p);
        const std::string tag = to_string(mm) + " ";
        zero(tag + "EV", expected_dispersion(p, lx).value);
        zero(tag + "VarV", var_dispersion(p, lx).value);
        zero(tag + "EC", expected_capacity(p, lx).value);
        zero(tag + "VarC", var_capacity(p, lx).value);
        zero(tag + "rate", average_rate(p, lx, p.tau, p.epsilon).rate);
      }
      zero("simplified EV", expected_dispersion_simplified(p).value);
      zero("simplified VarV", var_dispersion_simplified(p).value);
      for (McMode mode : {McMode::full, McMode::large_scale_only}) {
        const MomentEstimates e = mc_moments(p, 200, 2, mode, 7);
        const std::string tag = mode == McMode::full ? "mc_full " : "mc_large_scale ";
        zero(tag + "EV", e.mean_dispersion);
        zero(tag + "VarV", e.var_dispersion);
        zero(tag + "EC", e.mean_capacity);
        zero(tag + "VarC", e.var_capacity);
      }
    }
  }
  return {"", "", t.pass(), t.summary(), 0.0};
}

CheckResult rate_bep_round_trip() {
  constexpr double kTol = 1e-6;
  Tally t;
  for (double sigma : {0.0, 0.05, 0.1}) {
    for (int m : {1, 2, 4, 8}) {
      SystemConfig c = desk_config();
      c.user_antennas = m;
      c.error_variance = sigma;
      c.blocklength = 30;
      const DerivedParams p = derive_params(c);
      const auto lx = LaplaceEvaluator::exact(p);
      for (double eps : {1e-3, 1e-5, 1e-7}) {
        const double r = normalized_rate(p, lx, p.tau, eps).rate;
        const double back = block_error_probability(p, lx, p.tau, r);
        const double rel = std::abs(back - eps) / eps;
        t.record(rel <= kTol, rel,
                 "M=" + std::to_string(m) + " sigma_e2=" + num(sigma) + " eps=" + num(eps) +
                     " rel=" + num(rel));
      }
    }
  }
  return {"", "", t.pass(), t.summary(), 0.0};
}

CheckResult trend_checks() {
  std::ostringstream detail;
  bool all = true;
  auto part = [&](const char* name, bool ok, const std::string& what) {
    detail << name << (ok ? " pass" : " FAIL") << " (" << what << ") ";
    all = all && ok;
  };

  {  // (a) E[V] -> M at E_N = 64, perfect CSI.
    SystemConfig c = desk_config();
    c.expected_ap_count = 64.0;
    const DerivedParams p = derive_params(c);
    const double ev = expected_dispersion(p, LaplaceEvaluator::exact(p)).value;
    const double gap = std::abs(ev - p.M) / p.M;
    part("(a)", gap <= 0.01, "E[V]=" + num(ev) + " M=" + std::to_string(p.M));
  }
  {  // (b) variances shrink from E_N = 8 to 64.
    bool ok = true;
    std::string what;
    for (double sigma : {0.0, 0.1}) {
      double vv[2], vc[2];
      int i = 0;
      for (double en : {8.0, 64.0}) {
        SystemConfig c = desk_config();
        c.expected_ap_count = en;
        c.error_variance = sigma;
        const DerivedParams p = derive_params(c);
        const auto lx = LaplaceEvaluator::exact(p);
        vv[i] = var_dispersion(p, lx).value;
        vc[i] = var_capacity(p, lx).value;
        ++i;
      }
      ok = ok && vv[1] < vv[0] && vc[1] < vc[0];
      what += "sigma_e2=" + num(sigma) + ": VarV " + num(vv[0]) + "->" + num(vv[1]) + ", VarC " +
              num(vc[0]) + "->" + num(vc[1]) + "; ";
    }
    part("(b)", ok, what);
  }
  {  // (c) BEP decreasing in M at the fixed per-antenna rate.
    bool ok = true;
    std::string what;
    for (double sigma : {0.0, 0.05, 0.1}) {
      double prev = 2.0;
      what += "sigma_e2=" + num(sigma) + ":";
      for (int m : {1, 2, 4, 8}) {
        SystemConfig c = desk_config();
        c.user_antennas = m;
        c.error_variance = sigma;
        c.blocklength = 30;
        const DerivedParams p = derive_params(c);
        const double bep = block_error_probability(p, LaplaceEvaluator::exact(p), p.tau, 4.0);
        ok = ok && bep < prev;
        prev = bep;
        what += " " + num(bep);
      }
      what += "; ";
    }
    part("(c)", ok, what);
  }
  {  // (d) diminishing returns in gamma only with imperfect CSI.
    auto nrate = [](double sigma, double gamma) {
      SystemConfig c = desk_config();
      c.gamma_db = gamma;
      c.error_variance = sigma;
      c.blocklength = 10;
      const DerivedParams p = derive_params(c);
      return normalized_rate(p, LaplaceEvaluator::exact(p), p.tau, p.epsilon).rate;
    };
    bool ok = true;
    std::string what;
    for (double sigma : {0.0, 0.1}) {
      const double lo = nrate(sigma, -10.0), mid = nrate(sigma, 10.0), hi = nrate(sigma, 30.0);
      const double low_gain = mid - lo, high_gain = hi - mid;
      ok = ok && (sigma > 0.0 ? high_gain < low_gain : high_gain >= low_gain);
      what += "sigma_e2=" + num(sigma) + ": gain -10..10 dB " + num(low_gain) + ", 10..30 dB " +
              num(high_gain) + "; ";
    }
    part("(d)", ok, what);
  }
  return {"", "", all, detail.str(), 0.0};
}

CheckResult lemma3_gain() {
  constexpr double kTol = 0.02;
  Tally t;
  for (int omega : {8, 16}) {
    for (int m : {1, 2, 3, 4}) {
      const int l = omega * m;
      const double g = wishart_geometric_gain(l, m);
      const bool bracket = g >= l - m && g <= l;
      const double rel = std::abs(g - l) / l;
      t.record(bracket && rel <= kTol, rel,
               "L=" + std::to_string(l) + " M=" + std::to_string(m) + " gain=" + num(g) +
                   " rel=" + num(rel) + (bracket ? "" : " outside [L-M, L]"));
    }
  }
  return {"", "", t.pass(), t.summary(), 0.0};
}

// Further invariants.

CheckResult gamma_complementarity() {
  Tally t;
  for (double a : {-0.54, 0.3, 1.5}) {
    for (double x : {0.1, 1.0, 10.0}) {
      const double sum = incomplete_gamma(a, x, GammaKind::upper) +
                         incomplete_gamma(a, x, GammaKind::lower);
      const double rel = rel_diff(sum, std::tgamma(a));
      t.record(rel <= 1e-10, rel, "a=" + num(a) + " x=" + num(x) + " rel=" + num(rel));
    }
  }
  return {"", "", t.pass(), t.summary(), 0.0};
}

CheckResult q_function() {
  Tally t;
  for (double x : {0.0, 0.3, 1.0, 1.96, 3.0, 5.0, 7.5}) {
    const double err = std::abs(gaussian_q(x) + gaussian_q(-x) - 1.0);
    t.record(err <= 1e-12, err, "symmetry x=" + num(x) + " err=" + num(err));
  }
  double prev = std::numeric_limits<double>::infinity();
  for (double eps : {1e-9, 1e-7, 1e-5, 1e-3, 0.01, 0.1, 0.3, 0.5, 0.7, 0.99}) {
    const double x = gaussian_q_inv(eps);
    const double rel = std::abs(gaussian_q(x) - eps) / eps;
    t.record(rel <= 1e-10 && x < prev, rel, "inverse eps=" + num(eps) + " rel=" + num(rel));
    prev = x;
  }
  return {"", "", t.pass(), t.summary(), 0.0};
}

CheckResult laplace_shape() {
  const DerivedParams p = derive_params(desk_config());
  const auto lx = LaplaceEvaluator::exact(p);
  Tally t;
  std::vector<double> grid;
  for (double s = 0.01; s <= 20.0; s *= 1.5) grid.push_back(s);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double s = grid[i], h = 1e-3 * s;
    const double l0 = lx.value(s - h), l1 = lx.value(s), l2 = lx.value(s + h);
    const bool ok = l1 > 0.0 && l1 <= 1.0 && l2 < l0 && l0 - 2.0 * l1 + l2 >= -1e-13;
    t.record(ok, 0.0, "shape s=" + num(s));
    for (std::size_t j = 0; j <= i; ++j) {
      const double joint = lx.value(s + grid[j]) - lx.value(s) * lx.value(grid[j]);
      t.record(joint >= -1e-15, -joint, "superadditivity s1=" + num(s) + " s2=" + num(grid[j]));
    }
  }
  const double h = 1e-4;
  const double slope = (lx.value(0.0) - lx.value(2.0 * h)) / (2.0 * h);
  const double rel = rel_diff(slope, p.expected_ap_count * p.theta);
  t.record(rel <= 1e-3, rel, "slope at 0 rel=" + num(rel));
  return {"", "", t.pass(), t.summary(), 0.0};
}

CheckResult mc_schedule_invariance() {
  SystemConfig c = desk_config();
  c.error_variance = 0.05;
  const DerivedParams p = derive_params(c);
  McOptions o;
  o.trials = 2000;
  o.inner_small_scale = 5;
  o.seed = 404;
  o.workers = 1;
  const MomentEstimates a = mc_moments(p, o);
  o.workers = 3;
  const MomentEstimates b = mc_moments(p, o);
  const bool same = a.mean_capacity == b.mean_capacity && a.var_capacity == b.var_capacity &&
                    a.mean_dispersion == b.mean_dispersion && a.var_dispersion == b.var_dispersion &&
                    a.se_var_capacity == b.se_var_capacity;
  return {"", "", same, same ? "bit-identical with 1 and 3 workers" : "results differ", 0.0};
}

CheckResult moment_monotonicity() {
  Tally t;
  auto moments = [](SystemConfig c) {
    const DerivedParams p = derive_params(c);
    const auto lx = LaplaceEvaluator::exact(p);
    return std::pair{expected_capacity(p, lx).value, expected_dispersion(p, lx).value};
  };
  for (int m : {1, 2, 4}) {
    double prev_c = INFINITY, prev_v = INFINITY;
    for (double sigma : {0.0, 0.05, 0.1}) {
      SystemConfig c = desk_config();
      c.user_antennas = m;
      c.error_variance = sigma;
      const auto [ec, ev] = moments(c);
      t.record(ec < prev_c && ev < prev_v, 0.0, "sigma_e2 M=" + std::to_string(m));
      prev_c = ec;
      prev_v = ev;
    }
  }
  double prev = -INFINITY;
  for (double omega : {2.0, 4.0, 8.0}) {
    SystemConfig c = desk_config();
    c.antenna_ratio = omega;
    const double ec = moments(c).first;
    t.record(ec > prev, 0.0, "omega=" + num(omega));
    prev = ec;
  }
  prev = -INFINITY;
  for (double en : {4.0, 8.0, 16.0}) {
    SystemConfig c = desk_config();
    c.expected_ap_count = en;
    const double ec = moments(c).first;
    t.record(ec > prev, 0.0, "E_N=" + num(en));
    prev = ec;
  }
  return {"", "", t.pass(), t.summary(), 0.0};
}

CheckResult rate_structure() {
  Tally t;
  for (int m : {1, 2, 4}) {
    for (double omega : {2.0, 8.0}) {
      double prev = INFINITY;
      for (double sigma : {0.0, 0.05, 0.1}) {
        SystemConfig c = desk_config();
        c.user_antennas = m;
        c.antenna_ratio = omega;
        c.error_variance = sigma;
        const DerivedParams p = derive_params(c);
        const auto lx = LaplaceEvaluator::exact(p);
        const RateResult r = average_rate(p, lx, 30, 1e-5);
        const double ev = expected_dispersion(p, lx).value;
        const double pen = std::sqrt(ev / 30.0) * gaussian_q_inv(1e-5) / std::numbers::ln2;
        const double dec = std::abs(r.penalty_term - pen);
        const std::string where = "M=" + std::to_string(m) + " omega=" + num(omega) +
                                  " sigma_e2=" + num(sigma);
        t.record(r.rate < prev, 0.0, where + " rate order");
        t.record(dec <= 1e-12 * std::max(1.0, pen), dec, where + " penalty err=" + num(dec));
        prev = r.rate;
      }
    }
  }
  return {"", "", t.pass(), t.summary(), 0.0};
}

CheckResult jensen_direction() {
  Tally t;
  for (double sigma : {0.0, 0.05, 0.1}) {
    SystemConfig c = desk_config();
    c.error_variance = sigma;
    const DerivedParams p = derive_params(c);
    const double cf = expected_capacity(p, LaplaceEvaluator::exact(p)).value;
    const MomentEstimates e = mc_moments(p, 4000, 20, McMode::full, 505);
    const double margin = (e.mean_capacity - cf) / e.se_mean_capacity;
    t.record(margin <= 3.0, margin,
             "sigma_e2=" + num(sigma) + " full " + num(e.mean_capacity) + " closed " + num(cf));
  }
  return {"", "", t.pass(), t.summary(), 0.0};
}

CheckResult csv_round_trip() {
  SweepSpec s;
  s.axis = "M";
  s.values = {1, 2};
  s.fixed = desk_config();
  s.quantities = {Quantity::EV, Quantity::rate};
  s.methods = {Method::integral_exact, Method::simplified};
  const SweepResult r = run_sweep(s);
  std::stringstream io;
  write_csv(io, r);
  const SweepResult back = read_csv(io);
  bool same = back.rows.size() == r.rows.size() && back.metadata == r.metadata;
  for (std::size_t i = 0; same && i < r.rows.size(); ++i) {
    const SweepRow &a = r.rows[i], &b = back.rows[i];
    same = a.axis == b.axis && a.axis_value == b.axis_value && a.quantity == b.quantity &&
           a.method == b.method && a.value == b.value && a.uncertainty == b.uncertainty &&
           a.flag == b.flag;
  }
  return {"", "", same, std::to_string(r.rows.size()) + " rows" + (same ? "" : ", mismatch"), 0.0};
}

struct Entry {
  const char* id;
  const char* title;
  CheckResult (*run)();
  double runtime_limit;  // seconds; 0 = none
};

const std::vector<Entry>& registry() {
  static const std::vector<Entry> entries = {
      {"A1", "Laplace transform vs empirical MGF, 4 std errors", laplace_vs_empirical, 30.0},
      {"A2", "Wright series vs quadrature, 1e-6 relative", wright_vs_quadrature, 60.0},
      {"A3", "closed forms vs large-scale MC, 3 std errors", closed_vs_large_scale_mc, 120.0},
      {"A4", "closed forms vs full MC, 5% relative", closed_vs_full_mc, 180.0},
      {"A5", "lambda = 0 cases vanish, 1e-10 absolute", lambda_zero_exact, 0.0},
      {"A6", "normalized rate -> BEP round trip, 1e-6 relative", rate_bep_round_trip, 0.0},
      {"A7", "trend checks (a)-(d)", trend_checks, 0.0},
      {"A8", "geometric-mean Wishart gain within 2% of L", lemma3_gain, 0.0},
      {"I1", "incomplete gamma complementarity", gamma_complementarity, 0.0},
      {"I2", "Q function symmetry and inverse", q_function, 0.0},
      {"I3", "Laplace transform shape and slope at 0", laplace_shape, 0.0},
      {"I4", "MC results independent of worker count", mc_schedule_invariance, 0.0},
      {"I5", "moment monotonicity in sigma_e2, omega, E_N", moment_monotonicity, 0.0},
      {"I6", "rate ordering in sigma_e2 and penalty decomposition", rate_structure, 0.0},
      {"I7", "full-MC mean capacity not above its Jensen bound, 3 std errors", jensen_direction, 0.0},
      {"I8", "CSV round trip", csv_round_trip, 0.0},
  };
  return entries;
}

}  // namespace

std::vector<std::string> check_ids() {
  std::vector<std::string> ids;
  for (const Entry& e : registry()) ids.push_back(e.id);
  return ids;
}

CheckResult run_check(const std::string& id) {
  for (const Entry& e : registry()) {
    if (id != e.id) continue;
    const auto t0 = std::chrono::steady_clock::now();
    CheckResult r;
    try {
      r = e.run();
    } catch (const ConsistencyError&) {
      throw;
    } catch (const Error& err) {
      r.pass = false;
      r.detail = std::string("error: ") + err.what();
    }
    r.id = e.id;
    r.title = e.title;
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (e.runtime_limit > 0.0) add_runtime(r, e.runtime_limit);
    return r;
  }
  throw InvalidConfig("check", "unknown check id '" + id + "'");
}

std::vector<CheckResult> run_checks(const std::vector<std::string>& ids) {
  std::vector<CheckResult> out;
  for (const std::string& id : ids) out.push_back(run_check(id));
  return out;
}

}  // namespace cfmimo
