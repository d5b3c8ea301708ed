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

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cfmimo/checks.hpp"
#include "cfmimo/error.hpp"
#include "cfmimo/sweep.hpp"

namespace {

constexpr int kExitCheckFailed = 1;
constexpr int kExitConsistency = 2;
constexpr int kExitInput = 3;

cfmimo::Overrides parse_overrides(const std::vector<std::string>& items) {
  cfmimo::Overrides out;
  for (const std::string& item : items) {
    const auto eq = item.find('=');
    if (eq == std::string::npos || eq == 0) {
      throw cfmimo::InvalidConfig(item, "expected key=value");
    }
    const std::string key = item.substr(0, eq);
    const std::string text = item.substr(eq + 1);
    std::size_t used = 0;
    double value = 0.0;
    try {
      value = std::stod(text, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != text.size()) throw cfmimo::InvalidConfig(key, "not a number: " + text);
    out.emplace_back(key, value);
  }
  return out;
}

void emit(const cfmimo::SweepResult& result, const std::string& path) {
  if (path.empty() || path == "-") {
    cfmimo::write_csv(std::cout, result);
    return;
  }
  std::ofstream out(path);
  if (!out) throw cfmimo::InvalidConfig("out", "cannot open " + path);
  cfmimo::write_csv(out, result);
}

int run_check_table(const std::vector<std::string>& only) {
  const std::vector<std::string> ids = only.empty() ? cfmimo::check_ids() : only;
  int failed = 0;
  std::printf("%-4s %-6s %8s  %s\n", "id", "result", "seconds", "check");
  for (const std::string& id : ids) {
    const cfmimo::CheckResult r = cfmimo::run_check(id);
    std::printf("%-4s %-6s %8.2f  %s\n", r.id.c_str(), r.pass ? "PASS" : "FAIL", r.seconds,
                r.title.c_str());
    std::printf("                      %s\n", r.detail.c_str());
    std::fflush(stdout);
    if (!r.pass) ++failed;
  }
  std::printf("%zu checks, %d failed\n", ids.size(), failed);
  return failed == 0 ? 0 : kExitCheckFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Finite-blocklength analysis of cell-free massive MIMO under a PPP deployment.\n"
               "Worker threads: CFMIMO_THREADS (default: hardware concurrency)."};
  app.require_subcommand(1);

  int figure_id = 0;
  std::string figure_out;
  std::vector<std::string> figure_sets;
  auto* figure = app.add_subcommand("figure", "Reproduce one of the eight figure sweeps as CSV");
  figure->add_option("--id", figure_id, "Figure number")->required()->check(CLI::Range(1, 8));
  figure->add_option("--out", figure_out, "Output CSV (default: stdout)");
  figure->add_option("--set", figure_sets,
                     "Override key=value (config key, trials, inner_small_scale, seed, "
                     "rate_per_antenna)");

  std::string spec_path;
  std::string sweep_out;
  auto* sweep = app.add_subcommand("sweep", "Run a sweep described by a JSON spec");
  sweep->add_option("--spec", spec_path, "Sweep spec (JSON)")->required()->check(CLI::ExistingFile);
  sweep->add_option("--out", sweep_out, "Output CSV")->required();

  std::vector<std::string> only;
  auto* check = app.add_subcommand("check", "Run the invariant suite and print a pass/fail table");
  check->add_option("--only", only, "Run only these check ids");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*figure) {
      emit(cfmimo::run_figure(figure_id, parse_overrides(figure_sets)), figure_out);
    } else if (*sweep) {
      std::ifstream in(spec_path);
      std::stringstream text;
      text << in.rdbuf();
      emit(cfmimo::run_sweep(cfmimo::parse_sweep_spec(text.str())), sweep_out);
    } else if (*check) {
      return run_check_table(only);
    }
  } catch (const cfmimo::ConsistencyError& e) {
    std::cerr << "internal consistency error: " << e.what() << '\n';
    return kExitConsistency;
  } catch (const cfmimo::InvalidConfig& e) {
    std::cerr << "invalid input (" << e.field() << "): " << e.what() << '\n';
    return kExitInput;
  } catch (const cfmimo::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInput;
  }
  return 0;
}
