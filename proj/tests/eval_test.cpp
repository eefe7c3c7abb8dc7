// Copyright 2026 The isifree Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <algorithm>
#include <cmath>
#include <string>

#include <gtest/gtest.h>

#include "isifree/code_io.hpp"
#include "isifree/error.hpp"
#include "isifree/eval.hpp"
#include "test_util.hpp"

namespace isifree {
namespace {

TEST(MonteCarlo, ModifiedMcskAndMcsk) {
  const auto modified = load_code(testing::fixture("modified_mcsk_code.json"));
  const auto r = run_monte_carlo(modified, 1'000'000, 1);
  EXPECT_NEAR(r.monte_carlo_rate, 1.25, 0.0125);
  EXPECT_NEAR(r.analytic_rate, 1.25, 1e-12);
  EXPECT_NEAR(r.capacity, 1.2716, 1e-3);
  EXPECT_NEAR(r.gap, r.capacity - r.analytic_rate, 1e-12);
  EXPECT_EQ(r.n_bits_simulated, 1'000'000u);
  EXPECT_EQ(r.prng, "mt19937_64");

  const auto m = run_monte_carlo(mcsk_code(), 1'000'000, 3);
  EXPECT_NEAR(m.monte_carlo_rate, 1.0, 1e-3);
  EXPECT_EQ(m.analytic_rate, 1.0);
}

TEST(MonteCarlo, Deterministic) {
  const auto code = load_code(testing::fixture("depth2_code.json"));
  const auto a = run_monte_carlo(code, 50'000, 42);
  const auto b = run_monte_carlo(code, 50'000, 42);
  const auto c = run_monte_carlo(code, 50'000, 43);
  EXPECT_EQ(a.monte_carlo_rate, b.monte_carlo_rate);
  EXPECT_EQ(a.symbols_emitted, b.symbols_emitted);
  EXPECT_EQ(a.padded_bits, b.padded_bits);
  EXPECT_NE(a.symbols_emitted, c.symbols_emitted);
}

TEST(MonteCarlo, RejectsTinyRuns) {
  EXPECT_THROW(run_monte_carlo(mcsk_code(), 10, 1), Error);
}

TEST(Table2, Rows) {
  const auto rows = reproduce_table2();
  ASSERT_EQ(rows.size(), 7u);
  EXPECT_EQ(rows.front().scheme, "MCSK");
  EXPECT_EQ(rows.back().scheme, "capacity");
  for (const auto& r : rows) EXPECT_LT(r.abs_diff, 1e-3) << r.scheme;
  EXPECT_NEAR(rows[1].rate, 1.25, 1e-9);
  EXPECT_NEAR(rows[5].rate, 1.2640, 1e-3);
  const std::string csv = table2_csv(rows);
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "scheme,rate,reference,abs_diff");
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 8);
}

TEST(Sweep, ConfigForms) {
  auto c = parse_sweep_config(R"({"k":[1,2],"N":{"from":2,"to":4},"d":1,"threads":2})");
  EXPECT_EQ(c.k_values, (std::vector<int>{1, 2}));
  EXPECT_EQ(c.n_values, (std::vector<int>{2, 3, 4}));
  EXPECT_EQ(c.depth_values, (std::vector<int>{1}));
  EXPECT_EQ(c.threads, 2);

  c = parse_sweep_config(R"({"pairs":[[1,2],[3,4]],"d":[1,2],"actions":"prefix-free","tol":1e-5})");
  EXPECT_EQ(c.pairs.size(), 2u);
  EXPECT_EQ(c.synthesis.optimizer.action_set, ActionSet::kPrefixFree);
  EXPECT_DOUBLE_EQ(c.synthesis.tol, 1e-5);

  EXPECT_THROW(parse_sweep_config("[1,2]"), Error);
  EXPECT_THROW(parse_sweep_config(R"({"k":[1],"N":[2]})"), Error);
  EXPECT_THROW(parse_sweep_config(R"({"k":"x","N":[2],"d":[1]})"), Error);
}

TEST(Sweep, ExampleCellsAndTrends) {
  const auto rows = sweep(parse_sweep_config(R"({"k":[1],"N":[1,2],"d":{"from":1,"to":4}})"));
  ASSERT_EQ(rows.size(), 8u);
  for (const auto& r : rows) {
    EXPECT_TRUE(r.error.empty());
    EXPECT_LE(r.rate, r.capacity + 1e-12);
  }
  EXPECT_EQ(rows[0].n, 1);
  EXPECT_NEAR(rows[0].capacity, 0.6942, 1e-4);
  EXPECT_EQ(rows[4].n, 2);
  EXPECT_EQ(rows[4].depth, 1);
  EXPECT_NEAR(rows[4].rate, 1.25, 1e-9);
  EXPECT_NEAR(rows[4].capacity, 1.2716, 1e-4);
  EXPECT_NEAR(rows[4].gap, 0.0216, 1e-4);
  for (std::size_t i = 1; i < rows.size(); ++i) {
    if (rows[i].n == rows[i - 1].n) EXPECT_GE(rows[i].rate, rows[i - 1].rate - 1e-9);
  }
  const std::string csv = sweep_csv(rows);
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "k,N,d,rate,capacity,gap");
}

TEST(Sweep, FailedCellsAreReportedNotFatal) {
  const auto rows = sweep(parse_sweep_config(R"({"pairs":[[1,2]],"d":[1,40]})"));
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_TRUE(rows[0].error.empty());
  EXPECT_FALSE(rows[1].error.empty());
  EXPECT_NE(sweep_csv(rows).find("1,2,40,nan,nan,nan"), std::string::npos);
}

TEST(Sweep, StateCapCheckedUpFront) {
  try {
    parse_sweep_config(R"({"pairs":[[4,9]],"d":[1],"state_limit":100})");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kCapacityExhausted);
  }
}

}  // namespace
}  // namespace isifree
