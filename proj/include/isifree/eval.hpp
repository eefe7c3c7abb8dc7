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

#ifndef ISIFREE_EVAL_HPP_
#define ISIFREE_EVAL_HPP_

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "isifree/codec.hpp"
#include "isifree/synthesis.hpp"

namespace isifree {

inline constexpr std::string_view kPrngName = "mt19937_64";

struct RateReport {
  ChannelSpec spec;
  int depth = 1;
  double analytic_rate = 0.0;
  double monte_carlo_rate = 0.0;
  double capacity = 0.0;
  double gap = 0.0;  // capacity - analytic_rate
  std::size_t n_bits_simulated = 0;
  std::size_t symbols_emitted = 0;
  std::size_t padded_bits = 0;
  std::uint64_t seed = 0;
  std::string prng{kPrngName};
};

// Encodes n_bits pseudorandom bits (mt19937_64, seeded) and reports
// n_bits / symbols. Deterministic for a given seed. Requires n_bits >= 1000.
RateReport run_monte_carlo(const ModulationCode& code, std::size_t n_bits, std::uint64_t seed);

struct Table2Row {
  std::string scheme;
  double rate = 0.0;
  double reference = 0.0;
  double abs_diff = 0.0;
};

// k=1, N=2: MCSK, the optimal codes for d = 1..5 and the capacity, next to
// the reference rates.
std::vector<Table2Row> reproduce_table2(const SynthesisOptions& options = {});
std::string table2_csv(const std::vector<Table2Row>& rows);

struct SweepConfig {
  // Grid k x N x d. When `pairs` is nonempty it replaces the k x N product.
  std::vector<int> k_values;
  std::vector<int> n_values;
  std::vector<std::pair<int, int>> pairs;
  std::vector<int> depth_values;
  SynthesisOptions synthesis;
  int threads = 0;  // 0: hardware concurrency
  std::string output_path;
};

// JSON config. Each of "k", "N", "d" is an array of integers or an object
// {"from": a, "to": b}. Optional: "pairs" ([[k, N], ...]), "tol", "actions"
// ("full-depth" | "prefix-free"), "threads", "state_limit", "out".
SweepConfig parse_sweep_config(std::string_view json_text);

struct SweepRow {
  int k = 0;
  int n = 0;
  int depth = 0;
  double rate = 0.0;
  double capacity = 0.0;
  double gap = 0.0;
  std::string error;  // empty on success
};

// Rows come back in canonical (k, N, d) order whatever the schedule.
std::vector<SweepRow> sweep(const SweepConfig& config);
std::string sweep_csv(const std::vector<SweepRow>& rows);

}  // namespace isifree

#endif  // ISIFREE_EVAL_HPP_
