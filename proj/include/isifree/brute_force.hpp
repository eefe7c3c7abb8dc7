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

#ifndef ISIFREE_BRUTE_FORCE_HPP_
#define ISIFREE_BRUTE_FORCE_HPP_

#include <cstddef>
#include <cstdint>

#include "isifree/synthesis.hpp"

namespace isifree {

struct BruteForceOptions {
  ActionSet action_set = ActionSet::kFullDepth;
  int max_codeword_length = 8;
  std::uint64_t policy_cap = 1'000'000;
  std::uint64_t action_cap = 5'000'000;  // per state, before reduction
};

struct BruteForceResult {
  double rate = 0.0;
  Policy policy;
  std::uint64_t policies_evaluated = 0;
  std::uint64_t actions_enumerated = 0;
};

// Verification oracle for small instances. Enumerates every action of every
// state explicitly (every allowed prefix-free string set with every
// Kraft-equality length vector, lengths <= max_codeword_length), keeps per
// distinct transition row only the actions not dominated in (E[l], E[m]),
// then scores every combination by its stationary distribution and rate.
// Uses neither GHC nor value iteration. Throws Error(kCapacityExhausted)
// when the policy product exceeds the cap.
BruteForceResult brute_force_synthesize(const ChannelSpec& spec, int depth,
                                        const BruteForceOptions& options = {});

}  // namespace isifree

#endif  // ISIFREE_BRUTE_FORCE_HPP_
