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

#include "cfmimo/sweep.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <istream>
#include <limits>
#include <map>
#include <numbers>
#include <ostream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "cfmimo/error.hpp"
#include "cfmimo/laplace.hpp"
#include "cfmimo/moments.hpp"
#include "cfmimo/montecarlo.hpp"
#include "cfmimo/parallel.hpp"
#include "cfmimo/quadrature.hpp"
#include "cfmimo/rate.hpp"
#include "cfmimo/specfun.hpp"

namespace cfmimo {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::string format_number(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

double parse_number(const std::string& text, const std::string& field) {
  double v = 0.0;
  const char* first = text.data();
  const char* last = first + text.size();
  const auto res = std::from_chars(first, last, v);
  if (res.ec != std::errc() || res.ptr != last) {
    throw InvalidConfig(field, "not a number: '" + text + "'");
  }
  return v;
}

std::string canonical_key(const std::string& key) {
  return key == "expected_ap_count" ? "E_N" : key;
}

// A moment (or derived quantity) with its status.
struct Outcome {
  double value = kNaN;
  double error = kNaN;
  std::string flag = flags::ok;
};

template <class F>
Outcome guarded(F&& compute) {
  try {
    const MomentValue mv = compute();
    return {mv.value, mv.error_estimate, mv.clamped ? flags::clamped : flags::ok};
  } catch (const ConstraintViolation&) {
    return {kNaN, kNaN, flags::skipped_constraint};
  } catch (const QuadratureError& e) {
    return {e.partial().value, e.partial().error_estimate, flags::unconverged};
  } catch (const ConvergenceError& e) {
    return {e.best(), e.error_bound(), flags::unconverged};
  } catch (const DivergenceError&) {
    return {kNaN, kNaN, flags::diverged};
  } catch (const DomainError&) {
    return {kNaN, kNaN, flags::skipped_domain};
  } catch (const InvalidConfig&) {
    return {kNaN, kNaN, flags::invalid_config};
  }
}

bool usable(const Outcome& o) {
  return o.flag == flags::ok || o.flag == flags::clamped;
}

struct Needs {
  bool ev = false, varv = false, ec = false, varc = false;
};

Needs needs_for(const std::vector<Quantity>& qs) {
  Needs n;
  for (Quantity q : qs) {
    switch (q) {
      case Quantity::EV: n.ev = true; break;
      case Quantity::VarV: n.varv = true; break;
      case Quantity::EC: n.ec = true; break;
      case Quantity::VarC: n.varc = true; break;
      case Quantity::rate:
      case Quantity::normalized_rate:
      case Quantity::bep:
        n.ev = n.ec = true;
        break;
    }
  }
  return n;
}

bool supports(Method m, Quantity q) {
  if (m != Method::simplified) return true;
  return q == Quantity::EV || q == Quantity::VarV;
}

bool is_mc(Method m) { return m == Method::mc_full || m == Method::mc_large_scale; }

struct MomentSet {
  Outcome ev, varv, ec, varc;
};

MomentSet closed_form(const DerivedParams& p, Method m, const Needs& n) {
  MomentSet s;
  if (m == Method::simplified) {
    if (n.ev) s.ev = guarded([&] { return expected_dispersion_simplified(p); });
    if (n.varv) s.varv = guarded([&] { return var_dispersion_simplified(p); });
    return s;
  }
  const LaplaceEvaluator lx = evaluator_for(
      m == Method::integral_exact ? MomentMethod::integral_exact : MomentMethod::integral_approx,
      p);
  if (n.ev) s.ev = guarded([&] { return expected_dispersion(p, lx); });
  if (n.varv) s.varv = guarded([&] { return var_dispersion(p, lx); });
  if (n.ec) s.ec = guarded([&] { return expected_capacity(p, lx); });
  if (n.varc) s.varc = guarded([&] { return var_capacity(p, lx); });
  return s;
}

MomentSet from_mc(const MomentEstimates& e) {
  MomentSet s;
  s.ev = {e.mean_dispersion, e.se_mean_dispersion, flags::ok};
  s.varv = {e.var_dispersion, e.se_var_dispersion, flags::ok};
  s.ec = {e.mean_capacity, e.se_mean_capacity, flags::ok};
  s.varc = {e.var_capacity, e.se_var_capacity, flags::ok};
  return s;
}

// Key of everything the moments depend on (not tau, epsilon).
std::string moment_key(const DerivedParams& p, Method m) {
  std::ostringstream os;
  os.precision(17);
  os << static_cast<int>(m) << '|' << p.lambda << '|' << p.radius << '|' << p.alpha << '|' << p.M
     << '|' << p.L << '|' << p.rho << '|' << p.sigma_e2;
  return os.str();
}

struct MomentCache {
  std::map<std::string, MomentSet> sets;
};

struct Point {
  double axis_value = 0.0;
  bool valid = false;
  DerivedParams params{};
  double rate_per_antenna = 0.0;
};

Outcome rate_outcome(const MomentSet& s, const Point& pt, Quantity q, bool mc) {
  const Outcome& ec = s.ec;
  const Outcome& ev = s.ev;
  if (!usable(ec)) return {kNaN, kNaN, ec.flag};
  if (!usable(ev)) return {kNaN, kNaN, ev.flag};
  const DerivedParams& p = pt.params;
  const double M = p.M;
  try {
    if (q == Quantity::bep) {
      const double bep = detail::compose_bep(ec.value, ev.value, p.M, p.tau, pt.rate_per_antenna);
      const double j = ec.value * std::numbers::ln2 / M;
      const double scale = std::sqrt(M * M * p.tau / ev.value);
      const double arg = (j - pt.rate_per_antenna * std::numbers::ln2) * scale;
      const double phi = std::exp(-0.5 * arg * arg) / std::sqrt(2.0 * std::numbers::pi);
      const double d_ec = std::numbers::ln2 / M * scale * ec.error;
      const double d_ev = arg / (2.0 * ev.value) * ev.error;
      const double err = mc ? phi * std::hypot(d_ec, d_ev) : phi * (std::abs(d_ec) + std::abs(d_ev));
      return {bep, err, flags::ok};
    }
    const RateResult r = detail::compose_rate(ec.value, ev.value, p.tau, p.epsilon);
    const double dpen = ev.value > 0.0 ? gaussian_q_inv(p.epsilon) /
                                             (2.0 * std::numbers::ln2 * std::sqrt(ev.value * p.tau)) *
                                             ev.error
                                       : 0.0;
    double err = mc ? std::hypot(ec.error, dpen) : ec.error + std::abs(dpen);
    double value = r.rate;
    if (q == Quantity::normalized_rate) {
      value /= M;
      err /= M;
    }
    return {value, err, r.below_zero ? flags::below_zero : flags::ok};
  } catch (const DomainError&) {
    return {kNaN, kNaN, flags::skipped_domain};
  }
}

void validate_spec(const SweepSpec& spec) {
  if (spec.axis != "rate_per_antenna") {
    SystemConfig probe = spec.fixed;
    try {
      apply_config_value(probe, spec.axis, 1.0);
    } catch (const InvalidConfig& e) {
      if (e.field() == spec.axis) throw InvalidConfig("axis", "unknown axis '" + spec.axis + "'");
    }
  }
  if (spec.values.empty()) throw InvalidConfig("values", "axis needs at least one value");
  for (double v : spec.values) {
    if (!std::isfinite(v)) throw InvalidConfig("values", "axis values must be finite");
  }
  if (spec.quantities.empty()) throw InvalidConfig("quantities", "at least one quantity is required");
  if (spec.methods.empty()) throw InvalidConfig("methods", "at least one method is required");
  if (spec.label.find(',') != std::string::npos) throw InvalidConfig("label", "must not contain ','");
}

SweepResult run_sweep_cached(const SweepSpec& spec, MomentCache& cache) {
  validate_spec(spec);
  std::vector<Quantity> quantities = spec.quantities;
  std::vector<Method> methods = spec.methods;
  std::vector<double> values = spec.values;
  std::sort(quantities.begin(), quantities.end());
  quantities.erase(std::unique(quantities.begin(), quantities.end()), quantities.end());
  std::sort(methods.begin(), methods.end());
  methods.erase(std::unique(methods.begin(), methods.end()), methods.end());
  std::stable_sort(values.begin(), values.end());

  std::vector<Point> points;
  for (double v : values) {
    Point pt;
    pt.axis_value = v;
    pt.rate_per_antenna = spec.rate_per_antenna;
    SystemConfig cfg = spec.fixed;
    try {
      if (spec.axis == "rate_per_antenna") {
        pt.rate_per_antenna = v;
      } else {
        apply_config_value(cfg, spec.axis, v);
      }
      pt.params = derive_params(cfg);
      pt.valid = true;
    } catch (const InvalidConfig&) {
      pt.valid = false;
    }
    points.push_back(pt);
  }

  const Needs needs = needs_for(quantities);
  // Closed forms for every distinct configuration, in parallel.
  std::vector<std::pair<std::string, std::pair<const Point*, Method>>> jobs;
  for (const Point& pt : points) {
    if (!pt.valid) continue;
    for (Method m : methods) {
      if (is_mc(m)) continue;
      const std::string key = moment_key(pt.params, m);
      if (cache.sets.count(key)) continue;
      if (std::none_of(jobs.begin(), jobs.end(), [&](const auto& j) { return j.first == key; })) {
        jobs.push_back({key, {&pt, m}});
      }
    }
  }
  std::vector<MomentSet> computed(jobs.size());
  parallel_for(static_cast<long>(jobs.size()), [&](long i) {
    computed[i] = closed_form(jobs[i].second.first->params, jobs[i].second.second, needs);
  });
  for (std::size_t i = 0; i < jobs.size(); ++i) cache.sets[jobs[i].first] = computed[i];

  // Monte Carlo runs are parallel internally.
  for (const Point& pt : points) {
    if (!pt.valid) continue;
    for (Method m : methods) {
      if (!is_mc(m)) continue;
      const std::string key = moment_key(pt.params, m) + "|" + std::to_string(spec.trials) + "|" +
                              std::to_string(spec.inner_small_scale) + "|" +
                              std::to_string(spec.seed);
      if (cache.sets.count(key)) continue;
      McOptions opts;
      opts.trials = spec.trials;
      opts.inner_small_scale = spec.inner_small_scale;
      opts.mode = m == Method::mc_full ? McMode::full : McMode::large_scale_only;
      opts.seed = spec.seed;
      cache.sets[key] = from_mc(mc_moments(pt.params, opts));
    }
  }

  SweepResult result;
  const std::string axis_name = spec.label.empty() ? spec.axis : spec.axis + "[" + spec.label + "]";
  for (const Point& pt : points) {
    for (Quantity q : quantities) {
      for (Method m : methods) {
        if (!supports(m, q)) continue;
        SweepRow row;
        row.axis = axis_name;
        row.axis_value = pt.axis_value;
        row.quantity = to_string(q);
        row.method = to_string(m);
        Outcome o{kNaN, kNaN, flags::invalid_config};
        if (pt.valid) {
          std::string key = moment_key(pt.params, m);
          if (is_mc(m)) {
            key += "|" + std::to_string(spec.trials) + "|" + std::to_string(spec.inner_small_scale) +
                   "|" + std::to_string(spec.seed);
          }
          const MomentSet& s = cache.sets.at(key);
          switch (q) {
            case Quantity::EV: o = s.ev; break;
            case Quantity::VarV: o = s.varv; break;
            case Quantity::EC: o = s.ec; break;
            case Quantity::VarC: o = s.varc; break;
            default: o = rate_outcome(s, pt, q, is_mc(m)); break;
          }
        }
        row.value = o.value;
        row.uncertainty = o.error;
        row.flag = o.flag;
        result.rows.push_back(std::move(row));
      }
    }
  }
  return result;
}

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream is(line);
  while (std::getline(is, cur, sep)) out.push_back(cur);
  if (!line.empty() && line.back() == sep) out.emplace_back();
  return out;
}

// Figure definitions.
struct Series {
  std::string key;
  std::vector<double> values;
};

struct FigureDef {
  std::string description;
  std::string axis;
  std::vector<double> values;
  SystemConfig base;
  std::vector<Series> series;
  std::vector<Quantity> quantities;
  std::vector<Method> methods;
  double rate_per_antenna = 4.0;
};

const std::vector<Method> kAllMethods = {Method::mc_full, Method::mc_large_scale,
                                         Method::integral_exact, Method::integral_approx,
                                         Method::simplified};
const std::vector<double> kSigmas = {0.0, 0.05, 0.1};
const std::vector<double> kDoF = {1, 2, 4, 8};

FigureDef figure_def(int id) {
  FigureDef f;
  f.base = desk_config();
  f.methods = kAllMethods;
  switch (id) {
    case 1:
      f.description = "expected channel dispersion vs spatial DoF";
      f.axis = "M";
      f.values = kDoF;
      f.series = {{"sigma_e2", kSigmas}, {"omega", {2, 8}}};
      f.quantities = {Quantity::EV};
      break;
    case 2:
      f.description = "variance of channel dispersion vs expected AP count";
      f.axis = "E_N";
      f.values = {2, 4, 8, 16, 32, 64};
      f.series = {{"sigma_e2", kSigmas}, {"M", {2, 4}}};
      f.quantities = {Quantity::VarV};
      break;
    case 3:
      f.description = "expected channel capacity vs spatial DoF";
      f.axis = "M";
      f.values = kDoF;
      f.series = {{"sigma_e2", kSigmas}, {"omega", {2, 8}}};
      f.quantities = {Quantity::EC};
      break;
    case 4:
      f.description = "variance of channel capacity vs spatial DoF";
      f.axis = "M";
      f.values = kDoF;
      f.series = {{"sigma_e2", kSigmas}, {"omega", {2, 8}}};
      f.quantities = {Quantity::VarC};
      break;
    case 5:
      f.description = "average achievable rate vs spatial DoF";
      f.axis = "M";
      f.values = kDoF;
      f.base.blocklength = 30;
      f.base.target_bep = 1e-7;
      f.series = {{"sigma_e2", kSigmas}, {"omega", {2, 8}}};
      f.quantities = {Quantity::rate};
      break;
    case 6:
      f.description = "normalized achievable rate vs boundary SNR";
      f.axis = "gamma_db";
      for (int g = -20; g <= 30; g += 5) f.values.push_back(g);
      f.base.user_antennas = 2;
      f.base.blocklength = 10;
      f.base.target_bep = 1e-7;
      f.series = {{"sigma_e2", kSigmas}};
      f.quantities = {Quantity::normalized_rate};
      break;
    case 7:
      f.description = "normalized achievable rate over blocklength and target BEP";
      f.axis = "tau";
      f.values = {10, 20, 30, 50, 100, 200};
      f.base.user_antennas = 1;
      f.base.gamma_db = 0.0;
      f.series = {{"sigma_e2", kSigmas}, {"epsilon", {1e-9, 1e-8, 1e-7, 1e-6, 1e-5, 1e-4, 1e-3, 1e-2, 1e-1}}};
      f.quantities = {Quantity::normalized_rate};
      break;
    case 8:
      f.description = "block error probability vs spatial DoF at fixed per-antenna rate";
      f.axis = "M";
      f.values = kDoF;
      f.base.blocklength = 30;
      f.series = {{"sigma_e2", kSigmas}};
      f.quantities = {Quantity::bep};
      f.rate_per_antenna = 4.0;
      break;
    default:
      throw InvalidConfig("id", "figure id must be in 1..8");
  }
  if (f.quantities.front() != Quantity::EV && f.quantities.front() != Quantity::VarV) {
    f.methods.erase(std::remove(f.methods.begin(), f.methods.end(), Method::simplified),
                    f.methods.end());
  }
  return f;
}

std::string describe_config(const SystemConfig& c) {
  std::ostringstream os;
  if (c.expected_ap_count) os << "E_N=" << format_number(*c.expected_ap_count) << ' ';
  if (c.ap_density) os << "lambda=" << format_number(*c.ap_density) << ' ';
  os << "radius=" << format_number(c.radius) << " alpha=" << format_number(c.pathloss_exponent)
     << " M=" << c.user_antennas << ' ';
  if (c.antenna_ratio) os << "omega=" << format_number(*c.antenna_ratio) << ' ';
  if (c.ap_antennas) os << "L=" << *c.ap_antennas << ' ';
  if (c.gamma_db) os << "gamma_db=" << format_number(*c.gamma_db) << ' ';
  if (c.rho) os << "rho=" << format_number(*c.rho) << ' ';
  os << "sigma_e2=" << format_number(c.error_variance) << " tau=" << c.blocklength
     << " epsilon=" << format_number(c.target_bep);
  return os.str();
}

std::string join_numbers(const std::vector<double>& xs) {
  std::string s;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) s += ' ';
    s += format_number(xs[i]);
  }
  return s;
}

}  // namespace

std::string to_string(Quantity q) {
  switch (q) {
    case Quantity::EV: return "EV";
    case Quantity::VarV: return "VarV";
    case Quantity::EC: return "EC";
    case Quantity::VarC: return "VarC";
    case Quantity::rate: return "rate";
    case Quantity::normalized_rate: return "normalized_rate";
    case Quantity::bep: return "bep";
  }
  return "unknown";
}

std::string to_string(Method m) {
  switch (m) {
    case Method::mc_full: return "mc_full";
    case Method::mc_large_scale: return "mc_large_scale";
    case Method::integral_exact: return "integral_exact";
    case Method::integral_approx: return "integral_approx";
    case Method::simplified: return "simplified";
  }
  return "unknown";
}

Quantity parse_quantity(const std::string& name) {
  for (Quantity q : {Quantity::EV, Quantity::VarV, Quantity::EC, Quantity::VarC, Quantity::rate,
                     Quantity::normalized_rate, Quantity::bep}) {
    if (to_string(q) == name) return q;
  }
  throw InvalidConfig("quantities", "unknown quantity '" + name + "'");
}

Method parse_method(const std::string& name) {
  for (Method m : kAllMethods) {
    if (to_string(m) == name) return m;
  }
  throw InvalidConfig("methods", "unknown method '" + name + "'");
}

SweepSpec parse_sweep_spec(const std::string& json_text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::parse_error& e) {
    throw InvalidConfig("<json>", e.what());
  }
  if (!j.is_object()) throw InvalidConfig("<json>", "expected a JSON object");
  static const std::set<std::string> known = {"axis", "values", "fixed", "quantities", "methods",
                                               "trials", "inner_small_scale", "seed",
                                               "rate_per_antenna", "label"};
  for (const auto& [key, value] : j.items()) {
    if (!known.count(key)) throw InvalidConfig(key, "unknown sweep spec key");
  }
  SweepSpec spec;
  spec.fixed = desk_config();
  try {
    spec.axis = j.at("axis").get<std::string>();
    spec.values = j.at("values").get<std::vector<double>>();
    if (j.contains("fixed")) spec.fixed = parse_config_json(j["fixed"].dump(), spec.fixed);
    for (const auto& q : j.at("quantities")) spec.quantities.push_back(parse_quantity(q.get<std::string>()));
    for (const auto& m : j.at("methods")) spec.methods.push_back(parse_method(m.get<std::string>()));
    spec.trials = j.value("trials", spec.trials);
    spec.inner_small_scale = j.value("inner_small_scale", spec.inner_small_scale);
    spec.seed = j.value("seed", spec.seed);
    spec.rate_per_antenna = j.value("rate_per_antenna", spec.rate_per_antenna);
    spec.label = j.value("label", spec.label);
  } catch (const nlohmann::json::exception& e) {
    throw InvalidConfig("<json>", e.what());
  }
  validate_spec(spec);
  return spec;
}

SweepResult run_sweep(const SweepSpec& spec) {
  MomentCache cache;
  SweepResult r = run_sweep_cached(spec, cache);
  r.metadata.push_back("axis=" + spec.axis);
  r.metadata.push_back("axis_values=" + join_numbers(spec.values));
  r.metadata.push_back("fixed=" + describe_config(spec.fixed));
  r.metadata.push_back("trials=" + std::to_string(spec.trials) +
                       " inner_small_scale=" + std::to_string(spec.inner_small_scale) +
                       " seed=" + std::to_string(spec.seed));
  r.metadata.push_back("rate=achievable-rate lower bound (normal approximation)");
  return r;
}

bool is_run_option(const std::string& key) {
  return key == "trials" || key == "inner_small_scale" || key == "seed" || key == "rate_per_antenna";
}

std::vector<SweepSpec> figure_sweeps(int id, const Overrides& overrides) {
  FigureDef f = figure_def(id);
  long trials = 20000;
  int inner = 50;
  std::uint64_t seed = 1;
  for (const auto& [raw_key, value] : overrides) {
    const std::string key = canonical_key(raw_key);
    if (key == "trials") {
      trials = static_cast<long>(value);
    } else if (key == "inner_small_scale") {
      inner = static_cast<int>(value);
    } else if (key == "seed") {
      seed = static_cast<std::uint64_t>(value);
    } else if (key == "rate_per_antenna") {
      if (f.axis == key) f.values = {value};
      f.rate_per_antenna = value;
    } else if (key == f.axis) {
      f.values = {value};
    } else {
      auto it = std::find_if(f.series.begin(), f.series.end(),
                             [&](const Series& s) { return s.key == key; });
      if (it != f.series.end()) {
        it->values = {value};
      } else {
        apply_config_value(f.base, key, value);
      }
    }
  }

  std::vector<SweepSpec> specs;
  std::vector<std::size_t> idx(f.series.size(), 0);
  while (true) {
    SweepSpec s;
    s.axis = f.axis;
    s.values = f.values;
    s.fixed = f.base;
    s.quantities = f.quantities;
    s.methods = f.methods;
    s.trials = trials;
    s.inner_small_scale = inner;
    s.seed = seed;
    s.rate_per_antenna = f.rate_per_antenna;
    for (std::size_t k = 0; k < f.series.size(); ++k) {
      const double v = f.series[k].values[idx[k]];
      apply_config_value(s.fixed, f.series[k].key, v);
      if (!s.label.empty()) s.label += ';';
      s.label += f.series[k].key + "=" + format_number(v);
    }
    specs.push_back(std::move(s));
    std::size_t k = f.series.size();
    while (k > 0) {
      --k;
      if (++idx[k] < f.series[k].values.size()) break;
      idx[k] = 0;
      if (k == 0) return specs;
    }
    if (f.series.empty()) return specs;
  }
}

SweepResult run_figure(int id, const Overrides& overrides) {
  const FigureDef f = figure_def(id);
  const std::vector<SweepSpec> specs = figure_sweeps(id, overrides);
  MomentCache cache;
  SweepResult out;
  out.metadata.push_back("figure=" + std::to_string(id) + " (" + f.description + ")");
  out.metadata.push_back("axis=" + f.axis + " values=" + join_numbers(specs.front().values));
  std::string series;
  for (const Series& s : f.series) series += s.key + " ";
  out.metadata.push_back("series=" + (series.empty() ? std::string("none") : series) +
                         "(encoded in the axis column as axis[key=value;...])");
  out.metadata.push_back("fixed=" + describe_config(specs.front().fixed));
  out.metadata.push_back("trials=" + std::to_string(specs.front().trials) +
                         " inner_small_scale=" + std::to_string(specs.front().inner_small_scale) +
                         " seed=" + std::to_string(specs.front().seed));
  if (f.quantities.front() == Quantity::bep) {
    out.metadata.push_back("rate_per_antenna=" + format_number(specs.front().rate_per_antenna));
  }
  out.metadata.push_back("rate=achievable-rate lower bound (normal approximation)");
  for (const SweepSpec& s : specs) {
    SweepResult r = run_sweep_cached(s, cache);
    out.rows.insert(out.rows.end(), std::make_move_iterator(r.rows.begin()),
                    std::make_move_iterator(r.rows.end()));
  }
  return out;
}

void write_csv(std::ostream& out, const SweepResult& result) {
  for (const std::string& m : result.metadata) out << "# " << m << '\n';
  out << kCsvHeader << '\n';
  for (const SweepRow& r : result.rows) {
    out << r.axis << ',' << format_number(r.axis_value) << ',' << r.quantity << ',' << r.method
        << ',' << format_number(r.value) << ',' << format_number(r.uncertainty) << ',' << r.flag
        << '\n';
  }
}

SweepResult read_csv(std::istream& in) {
  SweepResult result;
  std::string line;
  bool header_seen = false;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line[0] == '#') {
      result.metadata.push_back(line.size() > 2 ? line.substr(2) : std::string());
      continue;
    }
    if (!header_seen) {
      if (line != kCsvHeader) throw InvalidConfig("csv", "unexpected header '" + line + "'");
      header_seen = true;
      continue;
    }
    const std::vector<std::string> f = split(line, ',');
    if (f.size() != 7) throw InvalidConfig("csv", "expected 7 fields: '" + line + "'");
    SweepRow r;
    r.axis = f[0];
    r.axis_value = parse_number(f[1], "axis_value");
    r.quantity = f[2];
    r.method = f[3];
    r.value = parse_number(f[4], "value");
    r.uncertainty = parse_number(f[5], "uncertainty");
    r.flag = f[6];
    result.rows.push_back(std::move(r));
  }
  if (!header_seen) throw InvalidConfig("csv", "missing header");
  return result;
}

}  // namespace cfmimo
