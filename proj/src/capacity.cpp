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

#include "isifree/capacity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "isifree/error.hpp"

namespace isifree {

AdjacencyMatrix::AdjacencyMatrix(
    std::initializer_list<std::initializer_list<std::uint32_t>> rows)
    : n_(rows.size()), data_(rows.size() * rows.size(), 0) {
  std::size_t r = 0;
  for (const auto& row : rows) {
    if (row.size() != n_) {
      throw Error(ErrorCode::kInvalidArgument, "adjacency matrix must be square");
    }
    std::size_t c = 0;
    for (std::uint32_t v : row) data_[r * n_ + c++] = v;
    ++r;
  }
}

std::uint64_t AdjacencyMatrix::row_sum(std::size_t row) const {
  std::uint64_t sum = 0;
  for (std::size_t c = 0; c < n_; ++c) sum += (*this)(row, c);
  return sum;
}

AdjacencyMatrix adjacency_matrix(const ConstraintGraph& graph) {
  AdjacencyMatrix a(graph.size());
  for (std::size_t s = 0; s < graph.size(); ++s) {
    for (const Edge& e : graph.out_edges(s)) ++a(e.from, e.to);
  }
  return a;
}

namespace {

std::vector<bool> reachable(const AdjacencyMatrix& a, bool transpose) {
  const std::size_t n = a.size();
  std::vector<bool> seen(n, false);
  if (n == 0) return seen;
  std::vector<std::size_t> stack{0};
  seen[0] = true;
  while (!stack.empty()) {
    const std::size_t u = stack.back();
    stack.pop_back();
    for (std::size_t v = 0; v < n; ++v) {
      const std::uint32_t w = transpose ? a(v, u) : a(u, v);
      if (w != 0 && !seen[v]) {
        seen[v] = true;
        stack.push_back(v);
      }
    }
  }
  return seen;
}

}  // namespace

bool is_strongly_connected(const AdjacencyMatrix& a) {
  if (a.size() == 0) return false;
  auto all = [](const std::vector<bool>& v) {
    return std::all_of(v.begin(), v.end(), [](bool b) { return b; });
  };
  return all(reachable(a, false)) && all(reachable(a, true));
}

CapacityResult spectral_radius(const AdjacencyMatrix& a,
                               const PowerIterationOptions& options) {
  const std::size_t n = a.size();
  if (n == 0) throw Error(ErrorCode::kInvalidArgument, "empty adjacency matrix");
  if (!(options.tol > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "tolerance must be positive");
  }

  // The unit shift keeps the iteration convergent on periodic irreducible
  // matrices and keeps every coordinate of x strictly positive.
  std::vector<double> x(n, 1.0), y(n);
  double lo = 0.0, hi = 0.0;
  for (int it = 1; it <= options.max_iterations; ++it) {
    lo = std::numeric_limits<double>::infinity();
    hi = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      double sum = x[i];
      for (std::size_t j = 0; j < n; ++j) {
        if (a(i, j) != 0) sum += a(i, j) * x[j];
      }
      y[i] = sum;
      const double ratio = sum / x[i];
      lo = std::min(lo, ratio);
      hi = std::max(hi, ratio);
    }
    const double scale = *std::max_element(y.begin(), y.end());
    for (std::size_t i = 0; i < n; ++i) x[i] = y[i] / scale;
    if (hi - lo < options.tol) {
      CapacityResult result;
      result.lambda = 0.5 * (lo + hi) - 1.0;
      result.capacity_bits = std::log2(result.lambda);
      result.iterations = it;
      result.residual = hi - lo;
      return result;
    }
  }
  throw Error(ErrorCode::kNotConverged,
              "power iteration did not converge after " +
                  std::to_string(options.max_iterations) +
                  " iterations (bracket width " + std::to_string(hi - lo) + ")");
}

CapacityResult graph_capacity(const ConstraintGraph& graph,
                              const PowerIterationOptions& options) {
  const AdjacencyMatrix a = adjacency_matrix(graph);
  if (!is_strongly_connected(a)) {
    throw Error(ErrorCode::kInvalidArgument, "constraint graph is not irreducible");
  }
  return spectral_radius(a, options);
}

CapacityResult channel_capacity(const ChannelSpec& spec,
                                const PowerIterationOptions& options) {
  return graph_capacity(ConstraintGraph::build(spec), options);
}

std::vector<BigInt> path_count_table(const ConstraintGraph& graph,
                                     std::size_t start, int max_m) {
  if (max_m < 0) throw Error(ErrorCode::kInvalidArgument, "path length must be >= 0");
  if (start >= graph.size()) throw Error(ErrorCode::kInvalidArgument, "start state out of range");
  // counts[v] = N_v(t); N_v(t) = sum over v->w of N_w(t-1).
  std::vector<BigInt> counts(graph.size(), BigInt(1)), next(graph.size());
  std::vector<BigInt> table{counts[start]};
  for (int t = 1; t <= max_m; ++t) {
    for (std::size_t v = 0; v < graph.size(); ++v) {
      BigInt sum = 0;
      for (const Edge& e : graph.out_edges(v)) sum += counts[e.to];
      next[v] = std::move(sum);
    }
    counts.swap(next);
    table.push_back(counts[start]);
  }
  return table;
}

BigInt count_paths(const ConstraintGraph& graph, std::size_t start, int m) {
  return path_count_table(graph, start, m).back();
}

double log2_big(const BigInt& value) {
  if (value <= 0) return -std::numeric_limits<double>::infinity();
  const std::size_t bits = boost::multiprecision::msb(value) + 1;
  if (bits <= 60) return std::log2(value.convert_to<double>());
  // Keep the top 60 bits for the mantissa.
  const std::size_t shift = bits - 60;
  const BigInt top = value >> shift;
  return std::log2(top.convert_to<double>()) + static_cast<double>(shift);
}

}  // namespace isifree
