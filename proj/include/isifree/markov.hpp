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

#ifndef ISIFREE_MARKOV_HPP_
#define ISIFREE_MARKOV_HPP_

#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace isifree {

// A finite Markov chain where each step out of state s emits E_s[l] bits and
// E_s[m] symbols on average. Both policies and modulation codes reduce to
// this form for rate evaluation.
struct RewardChain {
  Eigen::MatrixXd transition;  // row stochastic
  std::vector<double> expected_bits;
  std::vector<double> expected_symbols;
  std::size_t start = 0;
};

// Stationary distribution of the single recurrent class reachable from
// `start`; states outside that class get probability 0. Solves the balance
// equations with a normalization row, falling back to Cesaro averaging of
// P^t if the solve is numerically singular. Throws Error(kNotConverged) when
// more than one recurrent class is reachable.
std::vector<double> stationary_distribution(const Eigen::MatrixXd& transition,
                                            std::size_t start);

// sum_s pi(s) E_s[l] / sum_s pi(s) E_s[m].
double analytic_rate(const RewardChain& chain, std::span<const double> pi);

// E_s[l] / E_s[m] for every state.
std::vector<double> per_state_rates(const RewardChain& chain);

}  // namespace isifree

#endif  // ISIFREE_MARKOV_HPP_
