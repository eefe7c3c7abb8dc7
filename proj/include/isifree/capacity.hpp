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

#ifndef ISIFREE_CAPACITY_HPP_
#define ISIFREE_CAPACITY_HPP_

#include <cstddef>
#include <cstdint>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "isifree/graph.hpp"

namespace isifree {

using BigInt = boost::multiprecision::cpp_int;

// Dense square matrix of edge multiplicities, rows/columns in canonical
// state order.
class AdjacencyMatrix {
 public:
  AdjacencyMatrix() = default;
  explicit AdjacencyMatrix(std::size_t n) : n_(n), data_(n * n, 0) {}
  AdjacencyMatrix(std::initializer_list<std::initializer_list<std::uint32_t>> rows);

  std::size_t size() const { return n_; }
  std::uint32_t operator()(std::size_t row, std::size_t col) const {
    return data_[row * n_ + col];
  }
  std::uint32_t& operator()(std::size_t row, std::size_t col) {
    return data_[row * n_ + col];
  }
  std::uint64_t row_sum(std::size_t row) const;

  friend bool operator==(const AdjacencyMatrix&, const AdjacencyMatrix&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<std::uint32_t> data_;
};

AdjacencyMatrix adjacency_matrix(const ConstraintGraph& graph);

bool is_strongly_connected(const AdjacencyMatrix& a);

struct CapacityResult {
  double lambda = 0.0;
  double capacity_bits = 0.0;  // log2(lambda), bits per symbol
  int iterations = 0;
  double residual = 0.0;  // width of the final Collatz-Wielandt bracket
};

struct PowerIterationOptions {
  double tol = 1e-10;
  int max_iterations = 100'000;
};

// Perron root of a nonnegative matrix by power iteration on A + I. Stops when
// the Collatz-Wielandt bracket min_i (Ax)_i/x_i <= lambda <= max_i (Ax)_i/x_i
// is narrower than tol. Throws Error(kNotConverged) at the iteration cap.
CapacityResult spectral_radius(const AdjacencyMatrix& a,
                               const PowerIterationOptions& options = {});

// Unconstrained-delay capacity of a constraint graph. Verifies irreducibility
// first.
CapacityResult graph_capacity(const ConstraintGraph& graph,
                              const PowerIterationOptions& options = {});
CapacityResult channel_capacity(const ChannelSpec& spec,
                                const PowerIterationOptions& options = {});

// Exact number of length-m walks leaving `start`.
BigInt count_paths(const ConstraintGraph& graph, std::size_t start, int m);

// N(1..max_m) from `start`, sharing one recursion.
std::vector<BigInt> path_count_table(const ConstraintGraph& graph,
                                     std::size_t start, int max_m);

double log2_big(const BigInt& value);

}  // namespace isifree

#endif  // ISIFREE_CAPACITY_HPP_
