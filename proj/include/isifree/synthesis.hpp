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

#ifndef ISIFREE_SYNTHESIS_HPP_
#define ISIFREE_SYNTHESIS_HPP_

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "isifree/codec.hpp"
#include "isifree/graph.hpp"
#include "isifree/markov.hpp"

namespace isifree {

// Which prefix-free symbol-string sets a state may choose from.
//   kFullDepth:  subsets of the continuations of length exactly d. Exact
//                (one GHC call per state) and the default.
//   kPrefixFree: any antichain of the continuation tree. Exact enumeration
//                of maximal cuts up to a cap, heuristic search above it.
enum class ActionSet { kFullDepth, kPrefixFree };

std::string_view to_string(ActionSet set);
ActionSet parse_action_set(std::string_view text);

// Constraint graph of depth d: the single-step graph plus, for every state,
// the tree of its ISI-free continuations of length 1..d.
class DepthGraph {
 public:
  DepthGraph(const ChannelSpec& spec, int depth,
             std::size_t state_limit = kDefaultStateLimit,
             std::size_t tree_node_limit = kDefaultTreeNodeLimit);

  const ConstraintGraph& graph() const { return graph_; }
  const ChannelSpec& spec() const { return graph_.spec(); }
  int depth() const { return depth_; }
  std::size_t size() const { return graph_.size(); }
  const ContinuationTree& tree(std::size_t state) const { return trees_.at(state); }

 private:
  ConstraintGraph graph_;
  int depth_;
  std::vector<ContinuationTree> trees_;
};

struct CodewordChoice {
  int node = 0;    // continuation-tree node id
  int length = 0;  // binary codeword length
};

// U(s) together with the codeword lengths of mu_U(s). Choices are sorted by
// node id and satisfy sum 2^-length == 1.
struct Action {
  std::vector<CodewordChoice> choices;
};

struct Policy {
  std::vector<Action> actions;  // indexed by graph state
};

struct OptimizerOptions {
  ActionSet action_set = ActionSet::kFullDepth;
  std::size_t cut_enumeration_cap = 100'000;
};

struct StateOptimum {
  Action action;
  double value = 0.0;
  bool exact = true;
};

// Maximizes sum_i 2^-l_i (l_i - rate*m_i + cost[dest_i]) over the allowed
// symbol-string sets and Kraft-equality length vectors. For a fixed set this
// is -D(p||q) with q_i = 2^(cost[dest_i] - rate*m_i), solved by GHC.
StateOptimum optimize_state(const ContinuationTree& tree, double rate,
                            std::span<const double> cost,
                            const OptimizerOptions& options = {});

// Number of maximal antichains of the tree, saturating at UINT64_MAX.
std::uint64_t count_cuts(const ContinuationTree& tree);

struct GainOptions {
  double span_tol = 1e-9;
  int max_iterations = 100'000;
  double damping = 0.5;  // aperiodicity transform weight, in (0, 1]
};

struct GainResult {
  double gain = 0.0;          // G(R), average profit per step
  std::vector<double> cost;   // relative values, anchored at the all-gap state
  Policy policy;              // greedy with respect to `cost`
  int iterations = 0;
  bool exact = true;          // every state optimized exactly
};

// G(R) by relative value iteration. `warm_start` (if nonempty) seeds the
// cost vector. Throws Error(kNotConverged) at the iteration cap.
GainResult evaluate_gain(const DepthGraph& graph, double rate,
                         const OptimizerOptions& optimizer = {},
                         const GainOptions& options = {},
                         std::span<const double> warm_start = {});

RewardChain policy_chain(const DepthGraph& graph, const Policy& policy);
std::vector<double> stationary_distribution(const DepthGraph& graph, const Policy& policy);
double analytic_rate(const DepthGraph& graph, const Policy& policy,
                     std::span<const double> pi);

// Canonical bit assignment (shorter codewords first, ties by node order).
ModulationCode policy_to_code(const DepthGraph& graph, const Policy& policy, double rate);

struct SynthesisOptions {
  OptimizerOptions optimizer;
  GainOptions gain;
  double tol = 1e-6;  // on the rate
  int max_bisection_steps = 60;
  std::size_t state_limit = kDefaultStateLimit;
};

struct SynthesisResult {
  ChannelSpec spec;
  int depth = 1;
  double rate = 0.0;            // analytic rate of the returned policy
  double bisection_root = 0.0;  // midpoint of the final bracket
  double capacity_bound = 0.0;  // log2 of the spectral radius
  Policy policy;
  std::vector<double> stationary;
  int bisection_steps = 0;
  bool exact_search = true;
  ModulationCode code;
};

// Best delay-limited code for the channel: bisection on the root of G(R)
// over [0, capacity + 0.01].
SynthesisResult synthesize(const ChannelSpec& spec, int depth,
                           const SynthesisOptions& options = {});

}  // namespace isifree

#endif  // ISIFREE_SYNTHESIS_HPP_
