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

#include "cfmimo/config.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include <json.hpp>

#include "cfmimo/specfun.hpp"

namespace cfmimo {

namespace {

constexpr double kPi = std::numbers::pi;

void require(bool ok, const char* field, const std::string& what) {
  if (!ok) throw InvalidConfig(field, what);
}

}  // namespace

double DerivedParams::linear_coefficient() const {
  return 2.0 * kPi * lambda * std::pow(radius, 2.0 - alpha) / (alpha - 2.0);
}

double DerivedParams::fractional_coefficient() const {
  return 2.0 * kPi * lambda / alpha * gamma_neg(-2.0 / alpha);
}

double DerivedParams::eigen_snr_scale() const {
  return rho / (M * (1.0 + rho * sigma_e2 * theta));
}

double mean_path_loss(double radius, double alpha) {
  return (alpha - 2.0 * std::pow(radius, 2.0 - alpha)) /
         ((alpha - 2.0) * radius * radius);
}

DerivedParams derive_params(const SystemConfig& cfg) {
  const double R = cfg.radius;
  const double alpha = cfg.pathloss_exponent;
  require(std::isfinite(R) && R > 1.0, "radius", "must satisfy R > 1");
  require(std::isfinite(alpha) && alpha > 2.0, "alpha", "must satisfy alpha > 2");
  require(cfg.user_antennas >= 1, "M", "must be >= 1");
  require(cfg.error_variance >= 0.0 && cfg.error_variance < 1.0, "sigma_e2",
          "must lie in [0, 1)");
  require(cfg.blocklength >= 1, "tau", "must be >= 1");
  require(cfg.target_bep > 0.0 && cfg.target_bep < 0.5, "epsilon",
          "must lie in (0, 0.5)");

  require(cfg.ap_density.has_value() != cfg.expected_ap_count.has_value(),
          "lambda", "exactly one of lambda / expected_ap_count is required");
  require(cfg.antenna_ratio.has_value() != cfg.ap_antennas.has_value(), "omega",
          "exactly one of omega / L is required");
  require(cfg.rho.has_value() != cfg.gamma_db.has_value(), "rho",
          "exactly one of rho / gamma_db is required");

  DerivedParams p{};
  p.radius = R;
  p.alpha = alpha;
  p.M = cfg.user_antennas;
  p.sigma_e2 = cfg.error_variance;
  p.tau = cfg.blocklength;
  p.epsilon = cfg.target_bep;

  const double area = kPi * R * R;
  if (cfg.ap_density) {
    require(std::isfinite(*cfg.ap_density) && *cfg.ap_density >= 0.0, "lambda",
            "must be finite and >= 0");
    p.lambda = *cfg.ap_density;
    p.expected_ap_count = p.lambda * area;
  } else {
    require(std::isfinite(*cfg.expected_ap_count) && *cfg.expected_ap_count >= 0.0,
            "expected_ap_count", "must be finite and >= 0");
    p.expected_ap_count = *cfg.expected_ap_count;
    p.lambda = p.expected_ap_count / area;
  }

  if (cfg.ap_antennas) {
    p.L = *cfg.ap_antennas;
    p.omega = static_cast<double>(p.L) / p.M;
  } else {
    const double omega = *cfg.antenna_ratio;
    require(std::isfinite(omega) && omega > 0.0, "omega", "must be positive");
    const double L = omega * p.M;
    require(std::abs(L - std::round(L)) < 1e-9 * std::max(1.0, L), "omega",
            "omega * M must be an integer");
    p.L = static_cast<int>(std::lround(L));
    p.omega = omega;
  }
  require(p.L >= p.M, "L", "must satisfy L >= M");

  if (cfg.rho) {
    require(std::isfinite(*cfg.rho) && *cfg.rho > 0.0, "rho", "must be positive");
    p.rho = *cfg.rho;
    p.gamma_db = 10.0 * std::log10(p.rho * std::pow(R, -alpha));
  } else {
    require(std::isfinite(*cfg.gamma_db), "gamma_db", "must be finite");
    p.gamma_db = *cfg.gamma_db;
    // gamma is the SNR at distance R: rho = gamma_linear * R^alpha
    p.rho = std::pow(10.0, p.gamma_db / 10.0) * std::pow(R, alpha);
  }

  p.theta = mean_path_loss(R, alpha);
  p.beta = (1.0 + p.rho * p.sigma_e2 * p.theta) /
           (p.rho * p.omega * (1.0 - p.sigma_e2));
  require(std::isfinite(p.beta) && p.beta > 0.0, "rho",
          "derived beta is not finite and positive");
  return p;
}

ConvergenceDiagnostic check_convergence(const DerivedParams& p) {
  const double threshold =
      2.0 * kPi * std::pow(p.radius, 2.0 - p.alpha) / (p.alpha - 2.0);
  if (p.lambda == 0.0) {
    return {true, std::numeric_limits<double>::infinity(), threshold};
  }
  const double margin = p.beta / p.lambda - threshold;
  return {margin > 0.0, margin, threshold};
}

void require_convergence(const DerivedParams& p) {
  const auto diag = check_convergence(p);
  if (!diag.pass) {
    throw ConstraintViolation(
        "approximate Laplace transform requires beta/lambda > 2 pi R^(2-alpha)/(alpha-2); margin = " +
            std::to_string(diag.margin),
        diag.margin);
  }
}

void apply_config_value(SystemConfig& cfg, const std::string& key, double value) {
  auto as_int = [&](const char* name) {
    if (value != std::round(value) || std::abs(value) > 1e9) {
      throw InvalidConfig(name, "must be an integer");
    }
    return static_cast<int>(value);
  };
  if (key == "lambda") {
    cfg.ap_density = value;
    cfg.expected_ap_count.reset();
  } else if (key == "expected_ap_count" || key == "E_N") {
    cfg.expected_ap_count = value;
    cfg.ap_density.reset();
  } else if (key == "radius") {
    cfg.radius = value;
  } else if (key == "alpha") {
    cfg.pathloss_exponent = value;
  } else if (key == "M") {
    cfg.user_antennas = as_int("M");
  } else if (key == "omega") {
    cfg.antenna_ratio = value;
    cfg.ap_antennas.reset();
  } else if (key == "L") {
    cfg.ap_antennas = as_int("L");
    cfg.antenna_ratio.reset();
  } else if (key == "rho") {
    cfg.rho = value;
    cfg.gamma_db.reset();
  } else if (key == "gamma_db") {
    cfg.gamma_db = value;
    cfg.rho.reset();
  } else if (key == "sigma_e2") {
    cfg.error_variance = value;
  } else if (key == "tau") {
    cfg.blocklength = as_int("tau");
  } else if (key == "epsilon") {
    cfg.target_bep = value;
  } else {
    throw InvalidConfig(key, "unknown config key");
  }
}

SystemConfig parse_config_json(const std::string& text, SystemConfig base) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw InvalidConfig("<json>", e.what());
  }
  if (!j.is_object()) throw InvalidConfig("<json>", "expected a JSON object");
  for (const auto& [key, value] : j.items()) {
    if (!value.is_number()) throw InvalidConfig(key, "expected a number");
    apply_config_value(base, key, value.get<double>());
  }
  return base;
}

SystemConfig desk_config() {
  SystemConfig cfg;
  cfg.expected_ap_count = 8.0;
  cfg.radius = 50.0;
  cfg.pathloss_exponent = 3.7;
  cfg.gamma_db = -20.0;
  cfg.user_antennas = 2;
  cfg.antenna_ratio = 8.0;
  cfg.error_variance = 0.0;
  cfg.blocklength = 30;
  cfg.target_bep = 1e-7;
  return cfg;
}

}  // namespace cfmimo
