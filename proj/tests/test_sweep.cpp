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

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>

#include "cfmimo/config.hpp"
#include "cfmimo/error.hpp"
#include "cfmimo/moments.hpp"
#include "cfmimo/sweep.hpp"

using namespace cfmimo;

namespace {

SweepSpec small_spec() {
  SweepSpec s;
  s.axis = "E_N";
  s.values = {8.0};
  s.fixed = desk_config();
  s.fixed.error_variance = 0.05;
  s.quantities = {Quantity::EV, Quantity::VarV};
  s.methods = {Method::integral_exact, Method::integral_approx, Method::simplified,
               Method::mc_large_scale};
  s.trials = 4000;
  s.seed = 5;
  return s;
}

const SweepRow& find(const SweepResult& r, const std::string& q, const std::string& m,
                     double axis_value) {
  auto it = std::find_if(r.rows.begin(), r.rows.end(), [&](const SweepRow& row) {
    return row.quantity == q && row.method == m && row.axis_value == axis_value;
  });
  REQUIRE(it != r.rows.end());
  return *it;
}

std::vector<SweepRow> select(const SweepResult& r, const std::string& axis, const std::string& m) {
  std::vector<SweepRow> out;
  for (const SweepRow& row : r.rows)
    if (row.axis == axis && row.method == m) out.push_back(row);
  return out;
}

}  // namespace

TEST_CASE("names round trip") {
  for (Quantity q : {Quantity::EV, Quantity::VarV, Quantity::EC, Quantity::VarC, Quantity::rate,
                     Quantity::normalized_rate, Quantity::bep})
    CHECK(parse_quantity(to_string(q)) == q);
  for (Method m : {Method::mc_full, Method::mc_large_scale, Method::integral_exact,
                   Method::integral_approx, Method::simplified})
    CHECK(parse_method(to_string(m)) == m);
  CHECK_THROWS_AS(parse_quantity("capacity"), InvalidConfig);
  CHECK_THROWS_AS(parse_method("exact"), InvalidConfig);
}

TEST_CASE("single point sweep") {
  const SweepResult r = run_sweep(small_spec());
  CHECK(r.rows.size() == 8);
  for (const SweepRow& row : r.rows) {
    CHECK(row.axis == "E_N");
    CHECK(row.flag == flags::ok);
  }
  CHECK(find(r, "EV", "simplified", 8.0).value ==
        doctest::Approx(find(r, "EV", "integral_approx", 8.0).value).epsilon(1e-6));
  const SweepRow& exact = find(r, "EV", "integral_exact", 8.0);
  const SweepRow& mc = find(r, "EV", "mc_large_scale", 8.0);
  CHECK(std::abs(exact.value - mc.value) <= 4.0 * mc.uncertainty);
  CHECK(mc.uncertainty > 0.0);
}

TEST_CASE("sweeps are deterministic given the seed") {
  const SweepResult a = run_sweep(small_spec());
  const SweepResult b = run_sweep(small_spec());
  REQUIRE(a.rows.size() == b.rows.size());
  for (std::size_t i = 0; i < a.rows.size(); ++i) CHECK(a.rows[i].value == b.rows[i].value);

  SweepSpec other = small_spec();
  other.seed = 6;
  const SweepResult c = run_sweep(other);
  const SweepRow& x = find(a, "EV", "mc_large_scale", 8.0);
  const SweepRow& y = find(c, "EV", "mc_large_scale", 8.0);
  CHECK(x.value != y.value);
  CHECK(std::abs(x.value - y.value) <= 4.0 * std::hypot(x.uncertainty, y.uncertainty));
}

TEST_CASE("rows are sorted and unsupported pairs omitted") {
  SweepSpec s = small_spec();
  s.values = {16.0, 4.0};
  s.fixed.error_variance = 0.0;
  s.quantities = {Quantity::EC, Quantity::EV};
  s.methods = {Method::simplified, Method::integral_approx};
  const SweepResult r = run_sweep(s);
  CHECK(r.rows.size() == 6);
  for (std::size_t i = 1; i < r.rows.size(); ++i) CHECK(r.rows[i - 1].axis_value <= r.rows[i].axis_value);
  CHECK(std::none_of(r.rows.begin(), r.rows.end(), [](const SweepRow& row) {
    return row.quantity == "EC" && row.method == "simplified";
  }));
  // E_N = 16 violates the convergence condition of the approximate transform.
  for (const SweepRow& row : r.rows) {
    if (row.axis_value == 16.0) {
      CHECK(row.flag == flags::skipped_constraint);
      CHECK(std::isnan(row.value));
    } else {
      CHECK(row.flag == flags::ok);
    }
  }
}

TEST_CASE("invalid axis points are flagged") {
  SweepSpec s = small_spec();
  s.axis = "sigma_e2";
  s.values = {0.05, 1.5};
  s.methods = {Method::integral_exact};
  const SweepResult r = run_sweep(s);
  CHECK(find(r, "EV", "integral_exact", 1.5).flag == flags::invalid_config);
  CHECK(find(r, "EV", "integral_exact", 0.05).flag == flags::ok);
}

TEST_CASE("CSV round trip") {
  SweepResult r = run_sweep(small_spec());
  r.metadata = {"seed=5", "note=round trip"};
  r.rows.push_back({"E_N", 1.0 / 3.0, "EV", "integral_exact", std::nan(""), std::nan(""), flags::diverged});
  std::ostringstream os;
  write_csv(os, r);
  const std::string text = os.str();
  CHECK(text.rfind("# seed=5\n", 0) == 0);
  CHECK(text.find(std::string(kCsvHeader) + "\n") != std::string::npos);

  std::istringstream is(text);
  const SweepResult back = read_csv(is);
  CHECK(back.metadata == r.metadata);
  REQUIRE(back.rows.size() == r.rows.size());
  for (std::size_t i = 0; i < r.rows.size(); ++i) {
    const SweepRow& a = r.rows[i];
    const SweepRow& b = back.rows[i];
    CHECK(a.axis == b.axis);
    CHECK(a.axis_value == b.axis_value);
    CHECK(a.quantity == b.quantity);
    CHECK(a.method == b.method);
    CHECK(a.flag == b.flag);
    if (std::isnan(a.value)) {
      CHECK(std::isnan(b.value));
    } else {
      CHECK(a.value == b.value);
      CHECK(a.uncertainty == b.uncertainty);
    }
  }
}

TEST_CASE("CSV reader rejects malformed input") {
  std::istringstream no_header("E_N,8,EV,integral_exact,1,0,ok\n");
  CHECK_THROWS_AS(read_csv(no_header), InvalidConfig);
  std::istringstream short_row(std::string(kCsvHeader) + "\nE_N,8,EV\n");
  CHECK_THROWS_AS(read_csv(short_row), InvalidConfig);
  std::istringstream bad_number(std::string(kCsvHeader) + "\nE_N,eight,EV,integral_exact,1,0,ok\n");
  CHECK_THROWS_AS(read_csv(bad_number), InvalidConfig);
}

TEST_CASE("sweep specs from JSON") {
  const SweepSpec s = parse_sweep_spec(R"({
    "axis": "M", "values": [1, 2], "fixed": {"sigma_e2": 0.1, "omega": 2},
    "quantities": ["EC", "rate"], "methods": ["integral_exact"], "trials": 300, "seed": 9})");
  CHECK(s.axis == "M");
  CHECK(s.values == std::vector<double>{1.0, 2.0});
  CHECK(s.fixed.error_variance == 0.1);
  CHECK(*s.fixed.antenna_ratio == 2.0);
  CHECK(*s.fixed.expected_ap_count == 8.0);
  CHECK(s.quantities == std::vector<Quantity>{Quantity::EC, Quantity::rate});
  CHECK(s.trials == 300);
  CHECK(s.seed == 9);

  CHECK_THROWS_AS(parse_sweep_spec("[1, 2]"), InvalidConfig);
  CHECK_THROWS_AS(parse_sweep_spec(R"({"values": [1]})"), InvalidConfig);
  CHECK_THROWS_AS(parse_sweep_spec(R"({"axis": "M", "values": [1], "quantities": ["EV"],
                                       "methods": ["integral_exact"], "fixed": {"beta": 1}})"),
                  InvalidConfig);
  CHECK_THROWS_AS(parse_sweep_spec(R"({"axis": "M", "values": [1], "quantities": ["EV"],
                                       "methods": ["integral_exact"], "colour": 1})"),
                  InvalidConfig);
  SweepSpec empty = small_spec();
  empty.values.clear();
  CHECK_THROWS_AS(run_sweep(empty), InvalidConfig);
}

TEST_CASE("figure sweeps expand their series") {
  CHECK(figure_sweeps(1).size() == 6);
  CHECK(figure_sweeps(7).size() == 27);
  CHECK(figure_sweeps(1, {{"sigma_e2", 0.05}}).size() == 2);
  const auto pinned = figure_sweeps(3, {{"M", 4}, {"E_N", 4}, {"trials", 10}});
  for (const SweepSpec& s : pinned) {
    CHECK(s.values == std::vector<double>{4.0});
    CHECK(*s.fixed.expected_ap_count == 4.0);
    CHECK(s.trials == 10);
    CHECK(std::find(s.methods.begin(), s.methods.end(), Method::simplified) == s.methods.end());
  }
  CHECK(is_run_option("inner_small_scale"));
  CHECK_FALSE(is_run_option("omega"));
  CHECK_THROWS_AS(figure_sweeps(9), InvalidConfig);
  CHECK_THROWS_AS(figure_sweeps(1, {{"colour", 1}}), InvalidConfig);
}

TEST_CASE("dense deployments saturate the dispersion") {
  const SweepResult r = run_figure(1, {{"E_N", 64}, {"sigma_e2", 0}, {"trials", 100}, {"inner_small_scale", 2}});
  for (const SweepRow& row : r.rows) {
    if (row.method == "integral_exact") CHECK(row.value > 0.99 * row.axis_value);
    if (row.method == "integral_approx" || row.method == "simplified")
      CHECK(row.flag == flags::skipped_constraint);
  }
}

TEST_CASE("normalized rate over SNR") {
  const SweepResult r = run_figure(6, {{"trials", 100}, {"inner_small_scale", 2}});
  const auto perfect = select(r, "gamma_db[sigma_e2=0]", "integral_exact");
  const auto noisy = select(r, "gamma_db[sigma_e2=0.1]", "integral_exact");
  REQUIRE(perfect.size() == 11);
  REQUIRE(noisy.size() == 11);
  for (std::size_t i = 1; i < perfect.size(); ++i) CHECK(perfect[i].value > perfect[i - 1].value);
  const double perfect_gain = perfect.back().value - perfect[6].value;
  const double noisy_gain = noisy.back().value - noisy[6].value;
  CHECK(noisy_gain < 0.05 * perfect_gain);
  CHECK(r.metadata.size() > 0);
}
