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

#include <cmath>
#include <random>
#include <set>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "isifree/brute_force.hpp"
#include "isifree/capacity.hpp"
#include "isifree/error.hpp"
#include "isifree/synthesis.hpp"
#include "test_util.hpp"

namespace isifree {
namespace {

using LabelLengths = std::set<std::pair<std::string, int>>;

LabelLengths describe(const ContinuationTree& tree, const Action& action) {
  LabelLengths out;
  for (const auto& c : action.choices) out.emplace(format_symbols(tree.node(c.node).label), c.length);
  return out;
}

TEST(ActionSetText, RoundTrip) {
  EXPECT_EQ(parse_action_set("full-depth"), ActionSet::kFullDepth);
  EXPECT_EQ(parse_action_set(to_string(ActionSet::kPrefixFree)), ActionSet::kPrefixFree);
  EXPECT_THROW(parse_action_set("greedy"), Error);
}

TEST(OptimizeState, ModifiedMcskActions) {
  const DepthGraph g({1, 2}, 1);
  const std::vector<double> cost{0.0, -0.5, -0.5};
  const auto gap = optimize_state(g.tree(0), 1.25, cost);
  EXPECT_EQ(describe(g.tree(0), gap.action), (LabelLengths{{"-", 1}, {"M1", 2}, {"M2", 2}}));
  EXPECT_TRUE(gap.exact);
  const auto m1 = optimize_state(g.tree(1), 1.25, cost);
  EXPECT_EQ(describe(g.tree(1), m1.action), (LabelLengths{{"-", 1}, {"M2", 1}}));
  // value = -D(p||q) with q = 2^(c - R m)
  EXPECT_NEAR(m1.value, 0.5 * (1 - 1.25) + 0.5 * (1 - 1.25 - 0.5), 1e-12);
}

TEST(OptimizeState, ForcedMove) {
  const DepthGraph g({2, 2}, 1);
  const std::size_t s = g.graph().index_of_or_throw(parse_state("M1,M2", g.spec()));
  ASSERT_EQ(g.tree(s).size(), 1u);
  std::vector<double> cost(g.size(), 0.0);
  const std::size_t dest = g.tree(s).node(0).dest;
  cost[dest] = 0.375;
  for (double r : {0.0, 0.7, 1.3}) {
    for (auto set : {ActionSet::kFullDepth, ActionSet::kPrefixFree}) {
      const auto opt = optimize_state(g.tree(s), r, cost, {set});
      ASSERT_EQ(opt.action.choices.size(), 1u);
      EXPECT_EQ(opt.action.choices[0].length, 0);
      EXPECT_NEAR(opt.value, -r + 0.375, 1e-12);
    }
  }
}

TEST(OptimizeState, PrefixFreeDominatesFullDepth) {
  std::mt19937_64 rng(11);
  const DepthGraph g({1, 2}, 3);
  for (int trial = 0; trial < 30; ++trial) {
    std::vector<double> cost(g.size());
    for (auto& c : cost) c = std::uniform_real_distribution<double>(-1, 1)(rng);
    const double r = std::uniform_real_distribution<double>(0.5, 1.5)(rng);
    for (std::size_t s = 0; s < g.size(); ++s) {
      const auto full = optimize_state(g.tree(s), r, cost, {ActionSet::kFullDepth});
      const auto any = optimize_state(g.tree(s), r, cost, {ActionSet::kPrefixFree});
      EXPECT_GE(any.value, full.value - 1e-12);
      for (const auto& c : full.action.choices)
        EXPECT_EQ(g.tree(s).node(c.node).length(), 3u);
    }
  }
}

TEST(CountCuts, SmallTree) {
  const DepthGraph g({1, 2}, 2);
  EXPECT_EQ(count_cuts(g.tree(1)), 4u);
  const DepthGraph g1({1, 2}, 1);
  EXPECT_EQ(count_cuts(g1.tree(0)), 1u);
}

TEST(Gain, Examples) {
  const DepthGraph g({1, 2}, 1);
  EXPECT_NEAR(evaluate_gain(g, 1.25).gain, 0.0, 1e-6);
  EXPECT_GT(evaluate_gain(g, 0.0).gain, 0.0);
  EXPECT_LT(evaluate_gain(g, 1.2716).gain, 0.0);
  const auto at = evaluate_gain(g, 1.25);
  EXPECT_EQ(at.cost[0], 0.0);
  EXPECT_NEAR(at.cost[1], -0.5, 1e-6);
  EXPECT_NEAR(at.cost[2], -0.5, 1e-6);
}

TEST(Gain, StrictlyDecreasingInRate) {
  for (auto [k, n, d] : {std::tuple{1, 2, 2}, {2, 3, 2}, {1, 3, 3}}) {
    const DepthGraph g({k, n}, d);
    double prev = evaluate_gain(g, 0.0).gain;
    for (double r = 0.25; r <= 2.0; r += 0.25) {
      const double cur = evaluate_gain(g, r).gain;
      EXPECT_LT(cur, prev) << "k=" << k << " N=" << n << " d=" << d << " R=" << r;
      prev = cur;
    }
  }
}

TEST(Gain, WarmStartGivesSameAnswer) {
  const DepthGraph g({2, 3}, 2);
  const auto cold = evaluate_gain(g, 1.3);
  const auto warm = evaluate_gain(g, 1.31, {}, {}, cold.cost);
  const auto cold2 = evaluate_gain(g, 1.31);
  EXPECT_NEAR(warm.gain, cold2.gain, 1e-8);
}

TEST(Synthesize, KnownDelayLimitedRates) {
  const double expected[] = {1.25, 1.25, 1.2604166666, 1.26171875, 1.2640625};
  for (int d = 1; d <= 5; ++d) {
    const auto r = synthesize({1, 2}, d);
    EXPECT_NEAR(r.rate, expected[d - 1], 1e-8) << "d=" << d;
    EXPECT_NEAR(r.bisection_root, r.rate, 1e-5);
    EXPECT_LE(r.rate, r.capacity_bound);
    EXPECT_TRUE(r.exact_search);
    EXPECT_TRUE(validate_code(r.code).empty());
  }
}

TEST(Synthesize, StationaryOfPolicy) {
  const auto r = synthesize({1, 2}, 1);
  ASSERT_EQ(r.stationary.size(), 3u);
  EXPECT_NEAR(r.stationary[0], 0.5, 1e-9);
  EXPECT_NEAR(r.stationary[1], 0.25, 1e-9);
  EXPECT_NEAR(r.stationary[2], 0.25, 1e-9);
  double sum = 0;
  for (double p : r.stationary) sum += p;
  EXPECT_NEAR(sum, 1.0, 1e-12);
}

TEST(Synthesize, RejectsBadInput) {
  EXPECT_THROW(synthesize({1, 2}, 0), Error);
  EXPECT_THROW(synthesize({0, 2}, 1), Error);
  SynthesisOptions o;
  o.tol = 0;
  EXPECT_THROW(synthesize({1, 2}, 1, o), Error);
  o = {};
  o.state_limit = 5;
  try {
    synthesize({3, 4}, 1, o);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kCapacityExhausted);
  }
}

TEST(Synthesize, PrefixFreeAtLeastFullDepth) {
  SynthesisOptions o;
  o.optimizer.action_set = ActionSet::kPrefixFree;
  for (int d = 1; d <= 3; ++d) {
    const auto any = synthesize({1, 2}, d, o);
    EXPECT_GE(any.rate, synthesize({1, 2}, d).rate - 1e-9);
    EXPECT_TRUE(any.exact_search);
    EXPECT_TRUE(validate_code(any.code).empty());
  }
}

void expect_oracle_match(int k, int n, int d, const BruteForceOptions& bo) {
  SynthesisOptions so;
  so.optimizer.action_set = bo.action_set;
  const auto fast = synthesize({k, n}, d, so);
  const auto slow = brute_force_synthesize({k, n}, d, bo);
  EXPECT_NEAR(fast.rate, slow.rate, 1e-6) << "k=" << k << " N=" << n << " d=" << d;
  EXPECT_GT(slow.policies_evaluated, 0u);
}

TEST(BruteForce, MatchesSynthesisFullDepth) {
  for (auto [k, n, d] : {std::tuple{1, 1, 1}, {1, 1, 2}, {1, 2, 1}, {1, 2, 2}, {2, 2, 1},
                         {1, 3, 1}}) {
    expect_oracle_match(k, n, d, {});
  }
}

TEST(BruteForce, MatchesSynthesisPrefixFree) {
  BruteForceOptions bo;
  bo.action_set = ActionSet::kPrefixFree;
  for (auto [k, n, d] : {std::tuple{1, 1, 1}, {1, 1, 2}, {1, 2, 1}, {2, 2, 1}}) {
    expect_oracle_match(k, n, d, bo);
  }
  bo.max_codeword_length = 6;
  bo.policy_cap = 5'000'000;
  expect_oracle_match(1, 2, 2, bo);
}

TEST(BruteForce, CapsAreEnforced) {
  BruteForceOptions bo;
  bo.policy_cap = 10;
  EXPECT_THROW(brute_force_synthesize({1, 2}, 2, bo), Error);
}

// No policy can beat the optimum of the action set it is drawn from.
TEST(Synthesize, RandomPoliciesNeverBeatOptimum) {
  std::mt19937_64 rng(5);
  SynthesisOptions o;
  o.optimizer.action_set = ActionSet::kPrefixFree;
  for (auto [k, n, d] : {std::tuple{1, 2, 2}, {2, 3, 2}, {1, 3, 2}}) {
    const DepthGraph g({k, n}, d);
    const double best = synthesize({k, n}, d, o).rate;
    int scored = 0;
    for (int trial = 0; trial < 200; ++trial) {
      const Policy p = testing::random_policy(rng, g);
      try {
        const auto pi = stationary_distribution(g, p);
        EXPECT_LE(analytic_rate(g, p, pi), best + 1e-9);
        ++scored;
      } catch (const Error& e) {
        ASSERT_EQ(e.code(), ErrorCode::kNotConverged);
      }
    }
    EXPECT_GT(scored, 100);
  }
}

TEST(Synthesize, TrendsInDepthAndTypes) {
  for (int k = 1; k <= 3; ++k) {
    double prev = 0;
    for (int d = 1; d <= 4; ++d) {
      const auto r = synthesize({k, k + 1}, d);
      EXPECT_GE(r.rate, prev - 1e-9) << "k=" << k << " d=" << d;
      EXPECT_LE(r.rate, r.capacity_bound + 1e-12);
      prev = r.rate;
    }
  }
  double prev = 0;
  for (int n = 1; n <= 6; ++n) {
    const double r = synthesize({1, n}, 1).rate;
    EXPECT_GE(r, prev - 1e-9) << "N=" << n;
    prev = r;
  }
}

}  // namespace
}  // namespace isifree
