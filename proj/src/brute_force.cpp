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

#include "isifree/brute_force.hpp"

#include <map>
#include <string>
#include <vector>

#include "isifree/error.hpp"
#include "isifree/markov.hpp"

namespace isifree {

namespace {

// An action reduced to what the rate depends on. Probabilities and
// expectations are exact integers in units of 2^-max_length.
struct Outcome {
  std::vector<std::uint64_t> row;
  std::uint64_t bits = 0;
  std::uint64_t symbols = 0;
  Action action;
};

class ActionEnumerator {
 public:
  ActionEnumerator(const DepthGraph& graph, std::size_t state, const BruteForceOptions& options)
      : tree_(graph.tree(state)),
        n_states_(graph.size()),
        max_len_(options.max_codeword_length),
        cap_(options.action_cap) {
    if (options.action_set == ActionSet::kFullDepth) {
      items_ = tree_.full_depth_nodes();
    } else {
      for (std::size_t i = 0; i < tree_.size(); ++i) items_.push_back(static_cast<int>(i));
    }
    included_.assign(tree_.size(), false);
  }

  std::vector<Outcome> run() {
    rec(0, std::uint64_t{1} << max_len_);
    std::vector<Outcome> out;
    for (auto& [row, list] : pareto_) {
      for (auto& o : list) out.push_back(std::move(o));
    }
    return out;
  }

  std::uint64_t enumerated() const { return enumerated_; }

 private:
  bool has_included_ancestor(int node) const {
    for (int p = tree_.node(node).parent; p >= 0; p = tree_.node(p).parent) {
      if (included_[static_cast<std::size_t>(p)]) return true;
    }
    return false;
  }

  void rec(std::size_t i, std::uint64_t budget) {
    if (budget == 0) {
      record();
      return;
    }
    if (i == items_.size()) return;
    rec(i + 1, budget);
    const int v = items_[i];
    if (has_included_ancestor(v)) return;
    included_[static_cast<std::size_t>(v)] = true;
    for (int len = 0; len <= max_len_; ++len) {
      const std::uint64_t mass = std::uint64_t{1} << (max_len_ - len);
      if (mass > budget) continue;
      current_.push_back(CodewordChoice{v, len});
      rec(i + 1, budget - mass);
      current_.pop_back();
    }
    included_[static_cast<std::size_t>(v)] = false;
  }

  void record() {
    if (++enumerated_ > cap_) {
      throw Error(ErrorCode::kCapacityExhausted,
                  "brute force: more than " + std::to_string(cap_) + " actions in one state");
    }
    Outcome o;
    o.row.assign(n_states_, 0);
    for (const CodewordChoice& c : current_) {
      const ContinuationNode& node = tree_.node(c.node);
      const std::uint64_t mass = std::uint64_t{1} << (max_len_ - c.length);
      o.row[node.dest] += mass;
      o.bits += mass * static_cast<std::uint64_t>(c.length);
      o.symbols += mass * node.length();
    }
    auto& list = pareto_[o.row];
    for (const Outcome& other : list) {
      if (other.bits >= o.bits && other.symbols <= o.symbols) return;
    }
    std::erase_if(list, [&](const Outcome& other) {
      return o.bits >= other.bits && o.symbols <= other.symbols;
    });
    o.action.choices = current_;
    std::sort(o.action.choices.begin(), o.action.choices.end(),
              [](const CodewordChoice& a, const CodewordChoice& b) { return a.node < b.node; });
    list.push_back(std::move(o));
  }

  const ContinuationTree& tree_;
  std::size_t n_states_;
  int max_len_;
  std::uint64_t cap_;
  std::vector<int> items_;
  std::vector<bool> included_;
  std::vector<CodewordChoice> current_;
  std::map<std::vector<std::uint64_t>, std::vector<Outcome>> pareto_;
  std::uint64_t enumerated_ = 0;
};

}  // namespace

BruteForceResult brute_force_synthesize(const ChannelSpec& spec, int depth,
                                        const BruteForceOptions& options) {
  spec.validate();
  if (options.max_codeword_length < 0 || options.max_codeword_length > 30) {
    throw Error(ErrorCode::kInvalidArgument, "max codeword length must be in [0, 30]");
  }
  const DepthGraph graph(spec, depth);
  const std::size_t n = graph.size();

  BruteForceResult result;
  std::vector<std::vector<Outcome>> actions(n);
  std::uint64_t product = 1;
  for (std::size_t s = 0; s < n; ++s) {
    ActionEnumerator enumerator(graph, s, options);
    actions[s] = enumerator.run();
    result.actions_enumerated += enumerator.enumerated();
    if (actions[s].empty()) {
      throw Error(ErrorCode::kInternal, "brute force: state without any action");
    }
    if (actions[s].size() > options.policy_cap / product + 1) {
      throw Error(ErrorCode::kCapacityExhausted, "brute force: policy count exceeds cap");
    }
    product *= actions[s].size();
    if (product > options.policy_cap) {
      throw Error(ErrorCode::kCapacityExhausted,
                  "brute force: " + std::to_string(product) + "+ policies exceed the cap of " +
                      std::to_string(options.policy_cap));
    }
  }

  const double unit = std::ldexp(1.0, -options.max_codeword_length);
  RewardChain chain;
  chain.transition = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  chain.expected_bits.assign(n, 0.0);
  chain.expected_symbols.assign(n, 0.0);
  chain.start = graph.graph().all_gap();

  auto load = [&](std::size_t s, const Outcome& o) {
    for (std::size_t t = 0; t < n; ++t) {
      chain.transition(static_cast<Eigen::Index>(s), static_cast<Eigen::Index>(t)) =
          static_cast<double>(o.row[t]) * unit;
    }
    chain.expected_bits[s] = static_cast<double>(o.bits) * unit;
    chain.expected_symbols[s] = static_cast<double>(o.symbols) * unit;
  };

  std::vector<std::size_t> choice(n, 0);
  for (std::size_t s = 0; s < n; ++s) load(s, actions[s][0]);
  double best = -1.0;
  std::vector<std::size_t> best_choice;
  while (true) {
    ++result.policies_evaluated;
    try {
      const std::vector<double> pi = stationary_distribution(chain.transition, chain.start);
      const double r = analytic_rate(chain, pi);
      if (r > best + 1e-12) {
        best = r;
        best_choice = choice;
      }
    } catch (const Error&) {
      // Several recurrent classes: no single long-run rate.
    }
    std::size_t s = 0;
    while (s < n && ++choice[s] == actions[s].size()) {
      choice[s] = 0;
      load(s, actions[s][0]);
      ++s;
    }
    if (s == n) break;
    load(s, actions[s][choice[s]]);
  }
  if (best_choice.empty()) {
    throw Error(ErrorCode::kInternal, "brute force: no policy has a well-defined rate");
  }
  result.rate = best;
  result.policy.actions.resize(n);
  for (std::size_t s = 0; s < n; ++s) result.policy.actions[s] = actions[s][best_choice[s]].action;
  return result;
}

}  // namespace isifree
