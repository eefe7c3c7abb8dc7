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

#include "isifree/synthesis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "isifree/capacity.hpp"
#include "isifree/error.hpp"
#include "isifree/ghc.hpp"

namespace isifree {

std::string_view to_string(ActionSet set) {
  switch (set) {
    case ActionSet::kFullDepth: return "full-depth";
    case ActionSet::kPrefixFree: return "prefix-free";
  }
  return "unknown";
}

ActionSet parse_action_set(std::string_view text) {
  if (text == "full-depth") return ActionSet::kFullDepth;
  if (text == "prefix-free") return ActionSet::kPrefixFree;
  throw Error(ErrorCode::kInvalidArgument,
              "unknown action set '" + std::string(text) +
                  "' (expected full-depth or prefix-free)");
}

DepthGraph::DepthGraph(const ChannelSpec& spec, int depth, std::size_t state_limit,
                       std::size_t tree_node_limit)
    : graph_(ConstraintGraph::build(spec, state_limit)), depth_(depth) {
  if (depth < 1) {
    throw Error(ErrorCode::kInvalidArgument, "depth must be >= 1, got " + std::to_string(depth));
  }
  trees_.reserve(graph_.size());
  for (std::size_t s = 0; s < graph_.size(); ++s) {
    trees_.emplace_back(graph_, s, depth, tree_node_limit);
  }
}

std::uint64_t count_cuts(const ContinuationTree& tree) {
  constexpr std::uint64_t kMax = std::numeric_limits<std::uint64_t>::max();
  auto mul = [](std::uint64_t a, std::uint64_t b) -> std::uint64_t {
    if (a != 0 && b > kMax / a) return kMax;
    return a * b;
  };
  // Preorder ids: children always have larger ids than their parent.
  std::vector<std::uint64_t> ways(tree.size(), 1);
  for (std::size_t i = tree.size(); i-- > 0;) {
    const ContinuationNode& node = tree.nodes()[i];
    if (node.children.empty()) continue;
    std::uint64_t below = 1;
    for (int c : node.children) below = mul(below, ways[static_cast<std::size_t>(c)]);
    ways[i] = below == kMax ? kMax : below + 1;
  }
  std::uint64_t total = 1;
  for (int r : tree.roots()) total = mul(total, ways[static_cast<std::size_t>(r)]);
  return total;
}

namespace {

constexpr double kTieEps = 1e-12;

struct Candidate {
  double score = -std::numeric_limits<double>::infinity();
  Action action;
  bool valid = false;
};

std::size_t total_length(const ContinuationTree& tree, const Action& a) {
  std::size_t sum = 0;
  for (const CodewordChoice& c : a.choices) sum += tree.node(c.node).length();
  return sum;
}

// Tie-breaking: higher score, then fewer strings, then shorter total symbol
// length, then lexicographically smaller node ids.
bool better(const ContinuationTree& tree, double score, const Action& a, const Candidate& best) {
  if (!best.valid) return true;
  if (score > best.score + kTieEps) return true;
  if (score < best.score - kTieEps) return false;
  if (a.choices.size() != best.action.choices.size()) {
    return a.choices.size() < best.action.choices.size();
  }
  const std::size_t la = total_length(tree, a), lb = total_length(tree, best.action);
  if (la != lb) return la < lb;
  return std::lexicographical_compare(
      a.choices.begin(), a.choices.end(), best.action.choices.begin(), best.action.choices.end(),
      [](const CodewordChoice& x, const CodewordChoice& y) { return x.node < y.node; });
}

Action to_action(std::span<const int> nodes, const GhcResult& g) {
  Action a;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (g.lengths[i] != kDropped) a.choices.push_back(CodewordChoice{nodes[i], g.lengths[i]});
  }
  std::sort(a.choices.begin(), a.choices.end(),
            [](const CodewordChoice& x, const CodewordChoice& y) { return x.node < y.node; });
  return a;
}

// Per-state optimizer. Caches the cut list in exact prefix-free mode so that
// value iteration does not re-enumerate antichains every sweep.
class StateOptimizer {
 public:
  StateOptimizer(const ContinuationTree& tree, const OptimizerOptions& options)
      : tree_(&tree), mode_(options.action_set) {
    if (mode_ == ActionSet::kFullDepth) {
      cuts_.push_back(tree.full_depth_nodes());
      return;
    }
    const std::uint64_t n = count_cuts(tree);
    if (n <= options.cut_enumeration_cap) {
      cuts_.reserve(static_cast<std::size_t>(n));
      std::vector<int> todo(tree.roots().rbegin(), tree.roots().rend());
      std::vector<int> cut;
      enumerate(todo, cut);
    } else {
      heuristic_ = true;
      subtree_end_.resize(tree.size());
      for (std::size_t i = tree.size(); i-- > 0;) {
        const auto& node = tree.nodes()[i];
        subtree_end_[i] = node.children.empty()
                              ? static_cast<int>(i) + 1
                              : subtree_end_[static_cast<std::size_t>(node.children.back())];
      }
    }
  }

  bool exact() const { return !heuristic_; }

  double value(double rate, std::span<const double> cost) {
    if (heuristic_) return search(rate, cost).score;
    double best = -std::numeric_limits<double>::infinity();
    for (const auto& cut : cuts_) best = std::max(best, score(cut, rate, cost));
    return best;
  }

  Candidate optimum(double rate, std::span<const double> cost) {
    if (heuristic_) return search(rate, cost);
    Candidate best;
    for (const auto& cut : cuts_) {
      const double s = score(cut, rate, cost);
      if (best.valid && s < best.score - kTieEps) continue;
      consider(cut, rate, cost, best);
    }
    return best;
  }

 private:
  void enumerate(std::vector<int>& todo, std::vector<int>& cut) {
    if (todo.empty()) {
      std::vector<int> sorted = cut;
      std::sort(sorted.begin(), sorted.end());
      cuts_.push_back(std::move(sorted));
      return;
    }
    const int v = todo.back();
    todo.pop_back();
    cut.push_back(v);
    enumerate(todo, cut);
    cut.pop_back();
    const auto& children = tree_->node(v).children;
    if (!children.empty()) {
      const std::size_t mark = todo.size();
      todo.insert(todo.end(), children.rbegin(), children.rend());
      enumerate(todo, cut);
      todo.resize(mark);
    }
    todo.push_back(v);
  }

  double log_weight(int node, double rate, std::span<const double> cost) const {
    const ContinuationNode& n = tree_->node(node);
    return cost[n.dest] - rate * static_cast<double>(n.length());
  }

  double score(std::span<const int> cut, double rate, std::span<const double> cost) {
    weights_.clear();
    for (int v : cut) weights_.push_back(log_weight(v, rate, cost));
    return geometric_huffman_score_log2(weights_, scratch_);
  }

  void consider(std::span<const int> cut, double rate, std::span<const double> cost,
                Candidate& best) {
    weights_.clear();
    for (int v : cut) weights_.push_back(log_weight(v, rate, cost));
    const GhcResult g = geometric_huffman_log2(weights_);
    Action a = to_action(cut, g);
    if (better(*tree_, g.score, a, best)) {
      best.score = g.score;
      best.action = std::move(a);
      best.valid = true;
    }
  }

  // Above the enumeration cap: seed with the bottom-up merge cut and the
  // full-depth cut, then hill-climb with expand/collapse moves.
  Candidate search(double rate, std::span<const double> cost) {
    const ContinuationTree& t = *tree_;
    std::vector<double> eff(t.size());
    std::vector<bool> expand(t.size(), false);
    std::vector<double> child_w;
    for (std::size_t i = t.size(); i-- > 0;) {
      const ContinuationNode& node = t.nodes()[i];
      const double own = log_weight(static_cast<int>(i), rate, cost);
      eff[i] = own;
      if (node.children.empty()) continue;
      child_w.clear();
      for (int c : node.children) child_w.push_back(eff[static_cast<std::size_t>(c)]);
      const double merged = geometric_huffman_score_log2(child_w, scratch_);
      if (merged > own) {
        eff[i] = merged;
        expand[i] = true;
      }
    }
    std::vector<int> merge_cut;
    std::vector<int> stack(t.roots().rbegin(), t.roots().rend());
    while (!stack.empty()) {
      const int v = stack.back();
      stack.pop_back();
      if (expand[static_cast<std::size_t>(v)]) {
        const auto& ch = t.node(v).children;
        stack.insert(stack.end(), ch.rbegin(), ch.rend());
      } else {
        merge_cut.push_back(v);
      }
    }
    std::sort(merge_cut.begin(), merge_cut.end());

    std::vector<int> current = merge_cut;
    double current_score = score(current, rate, cost);
    const double full_score = score(t.full_depth_nodes(), rate, cost);
    if (full_score > current_score + kTieEps) {
      current = t.full_depth_nodes();
      current_score = full_score;
    }

    constexpr int kMaxMoves = 10'000;
    std::vector<int> trial, best_trial;
    for (int move = 0; move < kMaxMoves; ++move) {
      double best_score = current_score + kTieEps;
      best_trial.clear();
      for (std::size_t i = 0; i < current.size(); ++i) {
        const int v = current[i];
        const ContinuationNode& node = t.node(v);
        if (!node.children.empty()) {
          trial.assign(current.begin(), current.end());
          trial.erase(trial.begin() + static_cast<std::ptrdiff_t>(i));
          trial.insert(trial.end(), node.children.begin(), node.children.end());
          std::sort(trial.begin(), trial.end());
          const double s = score(trial, rate, cost);
          if (s > best_score) {
            best_score = s;
            best_trial = trial;
          }
        }
        if (node.parent >= 0) {
          const int p = node.parent;
          const int end = subtree_end_[static_cast<std::size_t>(p)];
          trial.clear();
          for (int u : current) {
            if (u < p || u >= end) trial.push_back(u);
          }
          trial.push_back(p);
          std::sort(trial.begin(), trial.end());
          const double s = score(trial, rate, cost);
          if (s > best_score) {
            best_score = s;
            best_trial = trial;
          }
        }
      }
      if (best_trial.empty()) break;
      current.swap(best_trial);
      current_score = best_score;
    }

    Candidate best;
    consider(current, rate, cost, best);
    return best;
  }

  const ContinuationTree* tree_;
  ActionSet mode_;
  bool heuristic_ = false;
  std::vector<std::vector<int>> cuts_;
  std::vector<int> subtree_end_;
  std::vector<double> weights_;
  std::vector<double> scratch_;
};

class GainSolver {
 public:
  GainSolver(const DepthGraph& graph, const OptimizerOptions& options) : graph_(&graph) {
    optimizers_.reserve(graph.size());
    for (std::size_t s = 0; s < graph.size(); ++s) {
      optimizers_.emplace_back(graph.tree(s), options);
    }
  }

  GainResult solve(double rate, const GainOptions& options, std::span<const double> warm) {
    if (!(options.damping > 0.0 && options.damping <= 1.0)) {
      throw Error(ErrorCode::kInvalidArgument, "damping must be in (0, 1]");
    }
    const std::size_t n = graph_->size();
    const std::size_t anchor = graph_->graph().all_gap();
    GainResult result;
    result.cost.assign(n, 0.0);
    if (warm.size() == n) result.cost.assign(warm.begin(), warm.end());
    std::vector<double>& c = result.cost;
    std::vector<double> t(n);

    bool converged = false;
    for (int it = 1; it <= options.max_iterations; ++it) {
      double lo = std::numeric_limits<double>::infinity();
      double hi = -lo;
      for (std::size_t s = 0; s < n; ++s) {
        const double diff = options.damping * (optimizers_[s].value(rate, c) - c[s]);
        lo = std::min(lo, diff);
        hi = std::max(hi, diff);
        t[s] = c[s] + diff;
      }
      const double offset = t[anchor];
      for (std::size_t s = 0; s < n; ++s) c[s] = t[s] - offset;
      result.iterations = it;
      if (hi - lo < options.span_tol) {
        result.gain = 0.5 * (lo + hi) / options.damping;
        converged = true;
        break;
      }
    }
    if (!converged) {
      throw Error(ErrorCode::kNotConverged,
                  "relative value iteration did not converge after " +
                      std::to_string(options.max_iterations) + " iterations");
    }

    result.policy.actions.resize(n);
    for (std::size_t s = 0; s < n; ++s) {
      Candidate best = optimizers_[s].optimum(rate, c);
      result.policy.actions[s] = std::move(best.action);
      result.exact = result.exact && optimizers_[s].exact();
    }
    return result;
  }

 private:
  const DepthGraph* graph_;
  std::vector<StateOptimizer> optimizers_;
};

std::string next_codeword(std::string code, std::size_t length) {
  // Binary increment, then extend with zeros.
  std::size_t i = code.size();
  while (i > 0 && code[i - 1] == '1') code[--i] = '0';
  if (i > 0) code[i - 1] = '1';
  code.resize(length, '0');
  return code;
}

}  // namespace

StateOptimum optimize_state(const ContinuationTree& tree, double rate,
                            std::span<const double> cost, const OptimizerOptions& options) {
  StateOptimizer optimizer(tree, options);
  Candidate best = optimizer.optimum(rate, cost);
  return StateOptimum{std::move(best.action), best.score, optimizer.exact()};
}

GainResult evaluate_gain(const DepthGraph& graph, double rate, const OptimizerOptions& optimizer,
                         const GainOptions& options, std::span<const double> warm_start) {
  GainSolver solver(graph, optimizer);
  return solver.solve(rate, options, warm_start);
}

RewardChain policy_chain(const DepthGraph& graph, const Policy& policy) {
  const std::size_t n = graph.size();
  if (policy.actions.size() != n) {
    throw Error(ErrorCode::kInvalidArgument, "policy does not cover every state");
  }
  RewardChain chain;
  chain.transition = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  chain.expected_bits.assign(n, 0.0);
  chain.expected_symbols.assign(n, 0.0);
  chain.start = graph.graph().all_gap();
  for (std::size_t s = 0; s < n; ++s) {
    const ContinuationTree& tree = graph.tree(s);
    if (policy.actions[s].choices.empty()) {
      throw Error(ErrorCode::kInvalidArgument, "policy has an empty action");
    }
    for (const CodewordChoice& c : policy.actions[s].choices) {
      const ContinuationNode& node = tree.node(c.node);
      const double p = std::ldexp(1.0, -c.length);
      chain.transition(static_cast<Eigen::Index>(s), static_cast<Eigen::Index>(node.dest)) += p;
      chain.expected_bits[s] += p * c.length;
      chain.expected_symbols[s] += p * static_cast<double>(node.length());
    }
  }
  return chain;
}

std::vector<double> stationary_distribution(const DepthGraph& graph, const Policy& policy) {
  const RewardChain chain = policy_chain(graph, policy);
  return stationary_distribution(chain.transition, chain.start);
}

double analytic_rate(const DepthGraph& graph, const Policy& policy, std::span<const double> pi) {
  return analytic_rate(policy_chain(graph, policy), pi);
}

ModulationCode policy_to_code(const DepthGraph& graph, const Policy& policy, double rate) {
  ModulationCode code;
  code.spec = graph.spec();
  code.depth = graph.depth();
  code.start = graph.graph().all_gap();
  code.rate = rate;
  code.states.resize(graph.size());
  for (std::size_t s = 0; s < graph.size(); ++s) {
    CodeState& st = code.states[s];
    st.window = graph.graph().state(s);
    st.name = format_state(st.window);
    std::vector<CodewordChoice> order = policy.actions.at(s).choices;
    std::stable_sort(order.begin(), order.end(),
                     [](const CodewordChoice& a, const CodewordChoice& b) {
                       return a.length < b.length;
                     });
    std::string bits;
    for (std::size_t i = 0; i < order.size(); ++i) {
      const std::size_t len = static_cast<std::size_t>(order[i].length);
      bits = i == 0 ? std::string(len, '0') : next_codeword(bits, len);
      const ContinuationNode& node = graph.tree(s).node(order[i].node);
      st.entries.push_back(CodeEntry{bits, node.label, node.dest});
    }
  }
  return code;
}

SynthesisResult synthesize(const ChannelSpec& spec, int depth, const SynthesisOptions& options) {
  spec.validate();
  if (depth < 1) throw Error(ErrorCode::kInvalidArgument, "depth must be >= 1");
  if (!(options.tol > 0.0)) throw Error(ErrorCode::kInvalidArgument, "tolerance must be positive");

  const DepthGraph graph(spec, depth, options.state_limit);
  GainSolver solver(graph, options.optimizer);

  SynthesisResult result;
  result.spec = spec;
  result.depth = depth;
  result.capacity_bound = graph_capacity(graph.graph()).capacity_bits;

  double best_rate = -1.0;
  std::vector<double> best_pi;
  auto offer = [&](const Policy& policy) {
    try {
      const RewardChain chain = policy_chain(graph, policy);
      std::vector<double> pi = stationary_distribution(chain.transition, chain.start);
      const double rho = analytic_rate(chain, pi);
      if (rho > best_rate) {
        best_rate = rho;
        best_pi = std::move(pi);
        result.policy = policy;
      }
    } catch (const Error&) {
      // Multichain greedy policy: it still brackets the root through G, but
      // contributes no feasible rate.
    }
  };

  GainResult g0 = solver.solve(0.0, options.gain, {});
  result.exact_search = g0.exact;
  if (!(g0.gain > 0.0)) {
    throw Error(ErrorCode::kInternal, "G(0) is not positive; bisection bracket is invalid");
  }
  offer(g0.policy);
  std::vector<double> warm = g0.cost;

  double lo = std::max(0.0, best_rate);
  double hi = result.capacity_bound + 0.01;
  int steps = 0;
  while (hi - lo > options.tol && steps < options.max_bisection_steps) {
    const double mid = 0.5 * (lo + hi);
    GainResult g = solver.solve(mid, options.gain, warm);
    result.exact_search = result.exact_search && g.exact;
    warm = g.cost;
    if (g.gain >= 0.0) {
      offer(g.policy);
      lo = std::max(mid, best_rate);
    } else {
      hi = mid;
    }
    ++steps;
  }
  if (best_rate < 0.0) {
    throw Error(ErrorCode::kNotConverged, "no greedy policy had a unique stationary distribution");
  }
  result.bisection_steps = steps;
  result.bisection_root = 0.5 * (lo + hi);
  result.rate = best_rate;
  result.stationary = std::move(best_pi);
  if (std::abs(result.bisection_root - result.rate) > 10.0 * options.tol) {
    throw Error(ErrorCode::kNotConverged,
                "bisection root " + std::to_string(result.bisection_root) +
                    " disagrees with the analytic rate " + std::to_string(result.rate));
  }
  result.code = policy_to_code(graph, result.policy, result.rate);
  return result;
}

}  // namespace isifree
