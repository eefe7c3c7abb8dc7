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

#include "isifree/markov.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "isifree/error.hpp"

namespace isifree {

namespace {

constexpr double kEdgeEps = 1e-15;

// Tarjan's SCC over the subgraph reachable from `start`; returns the states
// of the unique closed class or throws.
std::vector<std::size_t> recurrent_class(const Eigen::MatrixXd& p, std::size_t start) {
  const std::size_t n = static_cast<std::size_t>(p.rows());
  constexpr std::size_t kUnset = std::numeric_limits<std::size_t>::max();
  std::vector<std::size_t> index(n, kUnset), low(n, 0), comp(n, kUnset);
  std::vector<bool> on_stack(n, false);
  std::vector<std::size_t> stack;
  std::size_t counter = 0, components = 0;

  struct Frame {
    std::size_t v;
    std::size_t next;
  };
  std::vector<Frame> call{{start, 0}};
  index[start] = low[start] = counter++;
  stack.push_back(start);
  on_stack[start] = true;
  while (!call.empty()) {
    Frame& f = call.back();
    bool descended = false;
    while (f.next < n) {
      const std::size_t w = f.next++;
      if (p(static_cast<Eigen::Index>(f.v), static_cast<Eigen::Index>(w)) <= kEdgeEps) continue;
      if (index[w] == kUnset) {
        index[w] = low[w] = counter++;
        stack.push_back(w);
        on_stack[w] = true;
        call.push_back(Frame{w, 0});
        descended = true;
        break;
      }
      if (on_stack[w]) low[f.v] = std::min(low[f.v], index[w]);
    }
    if (descended) continue;
    const std::size_t v = f.v;
    if (low[v] == index[v]) {
      std::size_t w;
      do {
        w = stack.back();
        stack.pop_back();
        on_stack[w] = false;
        comp[w] = components;
      } while (w != v);
      ++components;
    }
    call.pop_back();
    if (!call.empty()) low[call.back().v] = std::min(low[call.back().v], low[v]);
  }

  std::vector<bool> closed(components, true);
  for (std::size_t v = 0; v < n; ++v) {
    if (comp[v] == kUnset) continue;
    for (std::size_t w = 0; w < n; ++w) {
      if (p(static_cast<Eigen::Index>(v), static_cast<Eigen::Index>(w)) > kEdgeEps &&
          comp[w] != comp[v]) {
        closed[comp[v]] = false;
      }
    }
  }
  const auto n_closed = std::count(closed.begin(), closed.end(), true);
  if (n_closed != 1) {
    throw Error(ErrorCode::kNotConverged,
                "chain has " + std::to_string(n_closed) +
                    " recurrent classes reachable from the start state; no unique "
                    "stationary distribution");
  }
  const std::size_t target =
      static_cast<std::size_t>(std::find(closed.begin(), closed.end(), true) - closed.begin());
  std::vector<std::size_t> members;
  for (std::size_t v = 0; v < n; ++v) {
    if (comp[v] == target) members.push_back(v);
  }
  return members;
}

std::vector<double> cesaro_average(const Eigen::MatrixXd& q) {
  const Eigen::Index m = q.rows();
  Eigen::RowVectorXd x = Eigen::RowVectorXd::Zero(m);
  x(0) = 1.0;
  Eigen::RowVectorXd sum = Eigen::RowVectorXd::Zero(m);
  Eigen::RowVectorXd previous = sum;
  constexpr int kMaxSteps = 1'000'000;
  for (int t = 1; t <= kMaxSteps; ++t) {
    sum += x;
    x = x * q;
    if (t % 1000 == 0) {
      Eigen::RowVectorXd avg = sum / static_cast<double>(t);
      if ((avg - previous).cwiseAbs().maxCoeff() < 1e-13) {
        return std::vector<double>(avg.data(), avg.data() + m);
      }
      previous = avg;
    }
  }
  throw Error(ErrorCode::kNotConverged, "stationary distribution did not converge");
}

}  // namespace

std::vector<double> stationary_distribution(const Eigen::MatrixXd& transition,
                                            std::size_t start) {
  const std::size_t n = static_cast<std::size_t>(transition.rows());
  if (transition.cols() != transition.rows() || n == 0) {
    throw Error(ErrorCode::kInvalidArgument, "transition matrix must be square and nonempty");
  }
  if (start >= n) throw Error(ErrorCode::kInvalidArgument, "start state out of range");

  const std::vector<std::size_t> members = recurrent_class(transition, start);
  const Eigen::Index m = static_cast<Eigen::Index>(members.size());
  Eigen::MatrixXd q(m, m);
  for (Eigen::Index i = 0; i < m; ++i) {
    for (Eigen::Index j = 0; j < m; ++j) {
      q(i, j) = transition(static_cast<Eigen::Index>(members[static_cast<std::size_t>(i)]),
                           static_cast<Eigen::Index>(members[static_cast<std::size_t>(j)]));
    }
  }

  // [Q^T - I; 1^T] pi = [0; 1]
  Eigen::MatrixXd system(m + 1, m);
  system.topRows(m) = q.transpose() - Eigen::MatrixXd::Identity(m, m);
  system.row(m).setOnes();
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(m + 1);
  rhs(m) = 1.0;

  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(system);
  std::vector<double> local;
  if (qr.rank() == m) {
    Eigen::VectorXd pi = qr.solve(rhs);
    if ((system * pi - rhs).cwiseAbs().maxCoeff() < 1e-9 && pi.minCoeff() > -1e-12) {
      local.assign(pi.data(), pi.data() + m);
    }
  }
  if (local.empty()) local = cesaro_average(q);

  std::vector<double> pi(n, 0.0);
  double total = 0.0;
  for (std::size_t i = 0; i < members.size(); ++i) {
    pi[members[i]] = std::max(0.0, local[i]);
    total += pi[members[i]];
  }
  for (double& v : pi) v /= total;
  return pi;
}

double analytic_rate(const RewardChain& chain, std::span<const double> pi) {
  double bits = 0.0, symbols = 0.0;
  for (std::size_t s = 0; s < pi.size(); ++s) {
    bits += pi[s] * chain.expected_bits.at(s);
    symbols += pi[s] * chain.expected_symbols.at(s);
  }
  if (!(symbols > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "chain emits no symbols in steady state");
  }
  return bits / symbols;
}

std::vector<double> per_state_rates(const RewardChain& chain) {
  std::vector<double> out(chain.expected_bits.size(), 0.0);
  for (std::size_t s = 0; s < out.size(); ++s) {
    if (chain.expected_symbols[s] > 0.0) out[s] = chain.expected_bits[s] / chain.expected_symbols[s];
  }
  return out;
}

}  // namespace isifree
