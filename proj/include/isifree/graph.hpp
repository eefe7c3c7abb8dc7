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

#ifndef ISIFREE_GRAPH_HPP_
#define ISIFREE_GRAPH_HPP_

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace isifree {

// One transmission slot: either a gap (nothing released) or molecule type
// M1..MN. Index 0 is the gap; ordering puts the gap first, then M1 < M2 < ...
struct Symbol {
  std::uint16_t index = 0;

  static constexpr Symbol gap() { return Symbol{0}; }
  static constexpr Symbol molecule(int type) {
    return Symbol{static_cast<std::uint16_t>(type)};
  }

  constexpr bool is_gap() const { return index == 0; }

  friend constexpr auto operator<=>(Symbol, Symbol) = default;
};

using SymbolString = std::vector<Symbol>;

// Diffusion channel parameters: memory k (slots before a molecule type may be
// reused) and the number of molecule types N.
struct ChannelSpec {
  int k = 1;
  int num_types = 1;

  // Throws Error(kInvalidArgument) unless k >= 1 and 1 <= N <= 65535.
  void validate() const;

  friend bool operator==(const ChannelSpec&, const ChannelSpec&) = default;
};

// A constraint-graph node: the last k transmitted symbols, most recent last.
struct State {
  SymbolString window;

  friend auto operator<=>(const State&, const State&) = default;
};

// Text forms: "-" for the gap, "M<i>" for molecules. Strings are space
// separated, states comma joined ("M1,-").
std::string to_string(Symbol symbol);
std::string format_symbols(std::span<const Symbol> symbols);
std::string format_state(const State& state);

// Parsing accepts both space and comma separators. num_types == 0 disables
// the range check on molecule indices.
Symbol parse_symbol(std::string_view text, int num_types = 0);
SymbolString parse_symbols(std::string_view text, int num_types = 0);
State parse_state(std::string_view text, const ChannelSpec& spec);

// True iff no molecule symbol occurs twice inside any window of k+1
// consecutive symbols. Gaps repeat freely.
bool is_isi_free(std::span<const Symbol> sequence, int k);

// Window reached after appending `appended` to `from`.
State advance(const State& from, std::span<const Symbol> appended, int k);

inline constexpr std::size_t kDefaultStateLimit = 1'000'000;

// Number of valid states, saturating at UINT64_MAX.
std::uint64_t count_states(const ChannelSpec& spec);

// All valid windows in canonical (lexicographic, gap first) order. Throws
// Error(kCapacityExhausted) when the count exceeds `limit`.
std::vector<State> enumerate_states(const ChannelSpec& spec,
                                    std::size_t limit = kDefaultStateLimit);

struct Edge {
  std::size_t from = 0;
  std::size_t to = 0;
  Symbol label;
};

struct StateHash {
  std::size_t operator()(const State& state) const noexcept;
};

// Single-step constraint graph: one edge per symbol that may follow a window
// without violating the ISI constraint. Immutable after construction.
class ConstraintGraph {
 public:
  static ConstraintGraph build(const ChannelSpec& spec,
                               std::size_t state_limit = kDefaultStateLimit);

  const ChannelSpec& spec() const { return spec_; }
  const std::vector<State>& states() const { return states_; }
  std::size_t size() const { return states_.size(); }
  const State& state(std::size_t index) const { return states_.at(index); }

  std::span<const Edge> out_edges(std::size_t state) const;
  std::size_t edge_count() const { return edges_.size(); }

  std::optional<std::size_t> index_of(const State& state) const;
  std::size_t index_of_or_throw(const State& state) const;

  // Index of the all-gap window (always 0 in canonical order).
  std::size_t all_gap() const { return 0; }

 private:
  ChannelSpec spec_;
  std::vector<State> states_;
  std::vector<Edge> edges_;  // grouped by source state
  std::vector<std::size_t> edge_offsets_;
  std::unordered_map<State, std::size_t, StateHash> index_;
};

// Node of a continuation tree. The path from the root spells `label`; the
// node is an edge of the depth-d graph from the root state to `dest`.
struct ContinuationNode {
  SymbolString label;
  std::size_t dest = 0;
  int parent = -1;  // -1 for children of the root
  std::vector<int> children;

  std::size_t length() const { return label.size(); }
};

inline constexpr std::size_t kDefaultTreeNodeLimit = 2'000'000;

// All ISI-free continuations of length 1..depth from one state, organized as
// a prefix tree. Nodes are stored in depth-first canonical order.
class ContinuationTree {
 public:
  ContinuationTree(const ConstraintGraph& graph, std::size_t root_state,
                   int depth, std::size_t node_limit = kDefaultTreeNodeLimit);

  std::size_t root_state() const { return root_state_; }
  int depth() const { return depth_; }
  const std::vector<ContinuationNode>& nodes() const { return nodes_; }
  const ContinuationNode& node(int id) const { return nodes_.at(static_cast<std::size_t>(id)); }
  const std::vector<int>& roots() const { return roots_; }
  std::size_t size() const { return nodes_.size(); }

  // Nodes whose label has length exactly depth().
  const std::vector<int>& full_depth_nodes() const { return full_depth_; }

 private:
  std::size_t root_state_;
  int depth_;
  std::vector<ContinuationNode> nodes_;
  std::vector<int> roots_;
  std::vector<int> full_depth_;
};

}  // namespace isifree

#endif  // ISIFREE_GRAPH_HPP_
