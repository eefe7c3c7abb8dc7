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

#ifndef ISIFREE_GHC_HPP_
#define ISIFREE_GHC_HPP_

#include <cstddef>
#include <span>
#include <vector>

namespace isifree {

inline constexpr int kDropped = -1;

// Dyadic distribution p(i) = 2^-lengths[i] over the retained items (dropped
// items carry kDropped) that minimizes D(p || q).
struct GhcResult {
  std::vector<int> lengths;
  // -D(p || q) = sum_i p_i log2(q_i / p_i), in bits.
  double score = 0.0;

  std::size_t retained() const;
};

// Geometric Huffman Coding. Repeatedly takes the two smallest weights
// a <= b: if b >= 4a the smaller one is dropped, otherwise both are merged
// into a node of weight 2*sqrt(a*b). The input is given as log2 weights so
// that the dynamic program never has to exponentiate; q need not sum to 1.
GhcResult geometric_huffman_log2(std::span<const double> log2_weights);

// Same on linear weights. Throws Error(kInvalidArgument) on empty input or
// any weight that is not strictly positive and finite.
GhcResult geometric_huffman(std::span<const double> weights);

// Score only (log2 of the final merged weight). Allocation-light variant
// used inside value iteration; `scratch` is reused between calls.
double geometric_huffman_score_log2(std::span<const double> log2_weights,
                                    std::vector<double>& scratch);

// -D(p || q) for an explicit length vector, kDropped entries skipped.
double dyadic_score_log2(std::span<const double> log2_weights,
                         std::span<const int> lengths);

}  // namespace isifree

#endif  // ISIFREE_GHC_HPP_
