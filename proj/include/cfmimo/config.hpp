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

#include <optional>
#include <string>

#include "cfmimo/error.hpp"

namespace cfmimo {

/// Deployment parameters as supplied by the user.
///
/// Exactly one of `ap_density` / `expected_ap_count`, one of
/// `antenna_ratio` / `ap_antennas`, and one of `rho` / `gamma_db` must be
/// set. Distances are in meters.
struct SystemConfig {
  std::optional<double> ap_density;         // lambda, APs per m^2
  std::optional<double> expected_ap_count;  // E_N = lambda * pi * R^2
  double radius = 50.0;
  double pathloss_exponent = 3.7;
  int user_antennas = 1;                    // M
  std::optional<double> antenna_ratio;      // omega = L / M
  std::optional<int> ap_antennas;           // L
  std::optional<double> rho;                // linear SNR
  std::optional<double> gamma_db;           // SNR at the region boundary
  double error_variance = 0.0;              // sigma_e^2
  int blocklength = 100;                    // tau
  double target_bep = 1e-5;                 // epsilon
};

/// Canonical form of a SystemConfig plus the composite symbols that every
/// closed form is written in.
struct DerivedParams {
  double lambda;             // AP density
  double expected_ap_count;  // lambda * pi * R^2
  double radius;
  double alpha;
  int M;
  int L;
  double omega;              // L / M
  double rho;
  double gamma_db;
  double sigma_e2;
  int tau;
  double epsilon;
  double theta;              // mean path loss over the disk
  double beta;               // (1 + rho sigma^2 theta) / (rho omega (1 - sigma^2))

  /// Linear coefficient of the approximate Laplace exponent,
  /// c = 2 pi lambda R^(2-alpha) / (alpha - 2).
  double linear_coefficient() const;
  /// Coefficient of s^(2/alpha) in the approximate Laplace exponent,
  /// (2 pi lambda / alpha) Gamma(-2/alpha). Negative for alpha > 2.
  double fractional_coefficient() const;
  /// Per-eigenvalue SNR scale rho / (M (1 + rho sigma^2 theta)).
  double eigen_snr_scale() const;
};

/// Mean of min{1, r^-alpha} for r distributed with density 2r/R^2 on [0, R].
double mean_path_loss(double radius, double alpha);

/// Validates `cfg` and computes the derived symbols.
/// Throws InvalidConfig naming the offending field.
DerivedParams derive_params(const SystemConfig& cfg);

struct ConvergenceDiagnostic {
  bool pass;
  /// beta / lambda - 2 pi R^(2-alpha) / (alpha - 2); +inf when lambda == 0.
  double margin;
  double threshold;
};

/// Whether the approximate Laplace transform yields convergent moment
/// integrals (strict inequality beta / lambda > 2 pi R^(2-alpha) / (alpha-2)).
ConvergenceDiagnostic check_convergence(const DerivedParams& p);

/// Throws ConstraintViolation if check_convergence fails.
void require_convergence(const DerivedParams& p);

/// Applies `key=value` to cfg using the flat config key names
/// (lambda, expected_ap_count, radius, alpha, M, omega, L, rho, gamma_db,
/// sigma_e2, tau, epsilon). Setting one member of a mutually exclusive pair
/// clears the other.
void apply_config_value(SystemConfig& cfg, const std::string& key, double value);

/// Parses a flat JSON object of config keys on top of `base`.
SystemConfig parse_config_json(const std::string& text, SystemConfig base = {});

/// Baseline deployment shared by the figure sweeps: E_N = 8, R = 50, alpha = 3.7, gamma = -20 dB,
/// M = 2, omega = 8, tau = 30, epsilon = 1e-7.
SystemConfig desk_config();

}  // namespace cfmimo
