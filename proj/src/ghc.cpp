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

#include "isifree/ghc.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <queue>
#include <string>
#include <utility>

#include "isifree/error.hpp"

namespace isifree {

std::size_t GhcResult::retained() const {
  return static_cast<std::size_t>(
      std::count_if(lengths.begin(), lengths.end(), [](int l) { return l != kDropped; }));
}

GhcResult geometric_huffman_log2(std::span<const double> log2_weights) {
  const std::size_t n = log2_weights.size();
  if (n == 0) throw Error(ErrorCode::kInvalidArgument, "GHC needs at least one weight");
  for (double w : log2_weights) {
    if (std::isnan(w) || std::isinf(w)) {
      throw Error(ErrorCode::kInvalidArgument, "GHC weights must be finite and positive");
    }
  }

  // Merge forest: ids [0, n) are the items, later ids are merged nodes.
  struct Node {
    int left = -1;
    int right = -1;
  };
  std::vector<Node> forest(n);
  forest.reserve(2 * n);
  std::vector<bool> dropped(n, false);
  dropped.reserve(2 * n);

  using Entry = std::pair<double, int>;  // (log2 weight, node id)
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> heap;
  for (std::size_t i = 0; i < n; ++i) heap.emplace(log2_weights[i], static_cast<int>(i));

  while (heap.size() > 1) {
    const Entry a = heap.top();
    heap.pop();
    const Entry b = heap.top();
    heap.pop();
    if (b.first >= a.first + 2.0) {
      dropped[static_cast<std::size_t>(a.second)] = true;
      heap.push(b);
    } else {
      const int id = static_cast<int>(forest.size());
      forest.push_back(Node{a.second, b.second});
      dropped.push_back(false);
      heap.emplace(1.0 + 0.5 * (a.first + b.first), id);
    }
  }

  GhcResult result;
  result.lengths.assign(n, kDropped);
  result.score = heap.top().first;

  // Depth of each retained leaf under the surviving root. Dropped subtrees
  // were detached from the forest when they were discarded.
  std::vector<std::pair<int, int>> stack{{heap.top().second, 0}};
  while (!stack.empty()) {
    auto [id, depth] = stack.back();
    stack.pop_back();
    if (static_cast<std::size_t>(id) < n) {
      result.lengths[static_cast<std::size_t>(id)] = depth;
      continue;
    }
    const Node& node = forest[static_cast<std::size_t>(id)];
    stack.emplace_back(node.left, depth + 1);
    stack.emplace_back(node.right, depth + 1);
  }
  return result;
}

GhcResult geometric_huffman(std::span<const double> weights) {
  std::vector<double> logs;
  logs.reserve(weights.size());
  for (double w : weights) {
    if (!(w > 0.0) || std::isinf(w)) {
      throw Error(ErrorCode::kInvalidArgument,
                  "GHC weights must be finite and positive, got " + std::to_string(w));
    }
    logs.push_back(std::log2(w));
  }
  if (logs.empty()) throw Error(ErrorCode::kInvalidArgument, "GHC needs at least one weight");
  return geometric_huffman_log2(logs);
}

double geometric_huffman_score_log2(std::span<const double> log2_weights,
                                    std::vector<double>& scratch) {
  scratch.assign(log2_weights.begin(), log2_weights.end());
  auto cmp = std::greater<>();
  std::make_heap(scratch.begin(), scratch.end(), cmp);
  std::size_t size = scratch.size();
  while (size > 1) {
    std::pop_heap(scratch.begin(), scratch.begin() + static_cast<std::ptrdiff_t>(size), cmp);
    const double a = scratch[--size];
    std::pop_heap(scratch.begin(), scratch.begin() + static_cast<std::ptrdiff_t>(size), cmp);
    const double b = scratch[size - 1];
    scratch[size - 1] = (b >= a + 2.0) ? b : 1.0 + 0.5 * (a + b);
    std::push_heap(scratch.begin(), scratch.begin() + static_cast<std::ptrdiff_t>(size), cmp);
  }
  return scratch.front();
}

double dyadic_score_log2(std::span<const double> log2_weights,
                         std::span<const int> lengths) {
  double score = 0.0;
  for (std::size_t i = 0; i < lengths.size(); ++i) {
    if (lengths[i] == kDropped) continue;
    const double p = std::ldexp(1.0, -lengths[i]);
    score += p * (log2_weights[i] + lengths[i]);
  }
  return score;
}

}  // namespace isifree
