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
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "cfmimo/config.hpp"

namespace cfmimo {

enum class Quantity { EV, VarV, EC, VarC, rate, normalized_rate, bep };
enum class Method { mc_full, mc_large_scale, integral_exact, integral_approx, simplified };

std::string to_string(Quantity q);
std::string to_string(Method m);
Quantity parse_quantity(const std::string& name);
Method parse_method(const std::string& name);

struct SweepSpec {
  /// A config key (see apply_config_value) or "rate_per_antenna".
  std::string axis;
  std::vector<double> values;
  SystemConfig fixed;
  std::vector<Quantity> quantities;
  std::vector<Method> methods;
  long trials = 20000;
  int inner_small_scale = 50;
  std::uint64_t seed = 1;
  /// Per-antenna coding rate for the BEP quantity, bits/s/Hz.
  double rate_per_antenna = 4.0;
  /// Written into the axis column as axis[label]; empty for plain sweeps.
  std::string label;
};

/// Per-row status in the flag column.
namespace flags {
inline constexpr const char* ok = "ok";
inline constexpr const char* below_zero = "below_zero";
inline constexpr const char* clamped = "clamped";
inline constexpr const char* skipped_constraint = "skipped_constraint";
inline constexpr const char* diverged = "diverged";
inline constexpr const char* unconverged = "unconverged";
inline constexpr const char* skipped_domain = "skipped_domain";
inline constexpr const char* invalid_config = "invalid_config";
}  // namespace flags

struct SweepRow {
  std::string axis;
  double axis_value = 0.0;
  std::string quantity;
  std::string method;
  double value = 0.0;
  /// Standard error for MC rows, numerical error bound for closed forms.
  double uncertainty = 0.0;
  std::string flag = flags::ok;
};

struct SweepResult {
  std::vector<SweepRow> rows;
  /// Free-form "key=value" lines, written as '#' comments before the header.
  std::vector<std::string> metadata;
};

SweepSpec parse_sweep_spec(const std::string& json_text);

/// Rows sorted by (axis_value, quantity, method). Deterministic given seed.
SweepResult run_sweep(const SweepSpec& spec);

using Overrides = std::vector<std::pair<std::string, double>>;

/// Keys accepted by run_figure besides the config keys.
bool is_run_option(const std::string& key);

/// The sweep behind figure `id` (1..8). An override on the axis key pins the
/// axis to that value, one on a series key pins that series.
std::vector<SweepSpec> figure_sweeps(int id, const Overrides& overrides = {});
SweepResult run_figure(int id, const Overrides& overrides = {});

inline constexpr const char* kCsvHeader = "axis,axis_value,quantity,method,value,uncertainty,flag";

void write_csv(std::ostream& out, const SweepResult& result);
SweepResult read_csv(std::istream& in);

}  // namespace cfmimo
