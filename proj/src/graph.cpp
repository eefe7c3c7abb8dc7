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

#include "isifree/graph.hpp"

#include <algorithm>
#include <charconv>
#include <limits>
#include <sstream>

#include "isifree/error.hpp"

namespace isifree {

void ChannelSpec::validate() const {
  if (k < 1) {
    throw Error(ErrorCode::kInvalidArgument,
                "channel memory k must be >= 1, got " + std::to_string(k));
  }
  if (num_types < 1 || num_types > std::numeric_limits<std::uint16_t>::max()) {
    throw Error(ErrorCode::kInvalidArgument,
                "number of molecule types must be in [1, 65535], got " +
                    std::to_string(num_types));
  }
}

std::string to_string(Symbol symbol) {
  if (symbol.is_gap()) return "-";
  return "M" + std::to_string(symbol.index);
}

std::string format_symbols(std::span<const Symbol> symbols) {
  std::string out;
  for (std::size_t i = 0; i < symbols.size(); ++i) {
    if (i) out += ' ';
    out += to_string(symbols[i]);
  }
  return out;
}

std::string format_state(const State& state) {
  std::string out;
  for (std::size_t i = 0; i < state.window.size(); ++i) {
    if (i) out += ',';
    out += to_string(state.window[i]);
  }
  return out;
}

Symbol parse_symbol(std::string_view text, int num_types) {
  if (text == "-") return Symbol::gap();
  if (text.size() >= 2 && (text[0] == 'M' || text[0] == 'm')) {
    int value = 0;
    auto [ptr, ec] =
        std::from_chars(text.data() + 1, text.data() + text.size(), value);
    if (ec == std::errc() && ptr == text.data() + text.size() && value >= 1 &&
        value <= std::numeric_limits<std::uint16_t>::max() &&
        (num_types == 0 || value <= num_types)) {
      return Symbol::molecule(value);
    }
  }
  throw Error(ErrorCode::kParse, "invalid symbol '" + std::string(text) + "'");
}

SymbolString parse_symbols(std::string_view text, int num_types) {
  SymbolString out;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() &&
           (text[i] == ' ' || text[i] == ',' || text[i] == '\t' ||
            text[i] == '\n' || text[i] == '\r')) {
      ++i;
    }
    std::size_t j = i;
    while (j < text.size() && text[j] != ' ' && text[j] != ',' &&
           text[j] != '\t' && text[j] != '\n' && text[j] != '\r') {
      ++j;
    }
    if (j > i) out.push_back(parse_symbol(text.substr(i, j - i), num_types));
    i = j;
  }
  return out;
}

State parse_state(std::string_view text, const ChannelSpec& spec) {
  State state{parse_symbols(text, spec.num_types)};
  if (state.window.size() != static_cast<std::size_t>(spec.k)) {
    throw Error(ErrorCode::kParse, "state '" + std::string(text) +
                                       "' does not have k=" +
                                       std::to_string(spec.k) + " symbols");
  }
  if (!is_isi_free(state.window, spec.k)) {
    throw Error(ErrorCode::kParse,
                "state '" + std::string(text) + "' repeats a molecule type");
  }
  return state;
}

bool is_isi_free(std::span<const Symbol> sequence, int k) {
  const std::size_t reach = static_cast<std::size_t>(std::max(k, 0));
  for (std::size_t i = 0; i < sequence.size(); ++i) {
    if (sequence[i].is_gap()) continue;
    const std::size_t end = std::min(sequence.size(), i + reach + 1);
    for (std::size_t j = i + 1; j < end; ++j) {
      if (sequence[j] == sequence[i]) return false;
    }
  }
  return true;
}

State advance(const State& from, std::span<const Symbol> appended, int k) {
  SymbolString joined = from.window;
  joined.insert(joined.end(), appended.begin(), appended.end());
  const std::size_t keep = static_cast<std::size_t>(k);
  if (joined.size() > keep) {
    joined.erase(joined.begin(),
                 joined.begin() + static_cast<std::ptrdiff_t>(joined.size() - keep));
  }
  return State{std::move(joined)};
}

std::uint64_t count_states(const ChannelSpec& spec) {
  spec.validate();
  constexpr std::uint64_t kMax = std::numeric_limits<std::uint64_t>::max();
  auto mul = [](std::uint64_t a, std::uint64_t b) -> std::uint64_t {
    if (a != 0 && b > kMax / a) return kMax;
    return a * b;
  };
  // Choose j molecule positions out of k, fill them with distinct types.
  std::uint64_t total = 0;
  std::uint64_t binom = 1;  // C(k, j)
  std::uint64_t perm = 1;   // N! / (N-j)!
  const int top = std::min(spec.k, spec.num_types);
  for (int j = 0; j <= top; ++j) {
    if (j > 0) {
      // C(k, j) = C(k, j-1) * (k-j+1) / j, computed in long double to stay
      // saturating instead of overflowing.
      long double next = static_cast<long double>(binom) * (spec.k - j + 1) / j;
      binom = next >= static_cast<long double>(kMax) ? kMax
                                                     : static_cast<std::uint64_t>(next + 0.5L);
      perm = mul(perm, static_cast<std::uint64_t>(spec.num_types - j + 1));
    }
    std::uint64_t term = mul(binom, perm);
    total = (term > kMax - total) ? kMax : total + term;
  }
  return total;
}

namespace {

void enumerate_windows(const ChannelSpec& spec, SymbolString& prefix,
                       std::vector<bool>& used, std::vector<State>& out) {
  if (prefix.size() == static_cast<std::size_t>(spec.k)) {
    out.push_back(State{prefix});
    return;
  }
  for (int s = 0; s <= spec.num_types; ++s) {
    if (s != 0 && used[static_cast<std::size_t>(s)]) continue;
    prefix.push_back(Symbol::molecule(s));
    if (s != 0) used[static_cast<std::size_t>(s)] = true;
    enumerate_windows(spec, prefix, used, out);
    if (s != 0) used[static_cast<std::size_t>(s)] = false;
    prefix.pop_back();
  }
}

}  // namespace

std::vector<State> enumerate_states(const ChannelSpec& spec, std::size_t limit) {
  const std::uint64_t count = count_states(spec);
  if (count > limit) {
    throw Error(ErrorCode::kCapacityExhausted,
                "k=" + std::to_string(spec.k) + ", N=" +
                    std::to_string(spec.num_types) + " has " +
                    (count == std::numeric_limits<std::uint64_t>::max()
                         ? std::string("too many")
                         : std::to_string(count)) +
                    " states, limit is " + std::to_string(limit));
  }
  std::vector<State> out;
  out.reserve(static_cast<std::size_t>(count));
  SymbolString prefix;
  std::vector<bool> used(static_cast<std::size_t>(spec.num_types) + 1, false);
  enumerate_windows(spec, prefix, used, out);
  return out;
}

std::size_t StateHash::operator()(const State& state) const noexcept {
  std::size_t h = 1469598103934665603ull;
  for (Symbol s : state.window) {
    h ^= s.index;
    h *= 1099511628211ull;
  }
  return h;
}

ConstraintGraph ConstraintGraph::build(const ChannelSpec& spec,
                                       std::size_t state_limit) {
  ConstraintGraph g;
  g.spec_ = spec;
  g.states_ = enumerate_states(spec, state_limit);
  g.index_.reserve(g.states_.size());
  for (std::size_t i = 0; i < g.states_.size(); ++i) g.index_.emplace(g.states_[i], i);

  g.edge_offsets_.reserve(g.states_.size() + 1);
  g.edge_offsets_.push_back(0);
  for (std::size_t i = 0; i < g.states_.size(); ++i) {
    const State& from = g.states_[i];
    for (int s = 0; s <= spec.num_types; ++s) {
      const Symbol label = Symbol::molecule(s);
      if (!label.is_gap() &&
          std::find(from.window.begin(), from.window.end(), label) != from.window.end()) {
        continue;
      }
      const Symbol appended[] = {label};
      g.edges_.push_back(Edge{i, g.index_.at(advance(from, appended, spec.k)), label});
    }
    g.edge_offsets_.push_back(g.edges_.size());
  }
  return g;
}

std::span<const Edge> ConstraintGraph::out_edges(std::size_t state) const {
  const std::size_t begin = edge_offsets_.at(state);
  const std::size_t end = edge_offsets_.at(state + 1);
  return std::span<const Edge>(edges_).subspan(begin, end - begin);
}

std::optional<std::size_t> ConstraintGraph::index_of(const State& state) const {
  auto it = index_.find(state);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::size_t ConstraintGraph::index_of_or_throw(const State& state) const {
  auto idx = index_of(state);
  if (!idx) {
    throw Error(ErrorCode::kInvalidArgument,
                "'" + format_state(state) + "' is not a state of this graph");
  }
  return *idx;
}

ContinuationTree::ContinuationTree(const ConstraintGraph& graph,
                                   std::size_t root_state, int depth,
                                   std::size_t node_limit)
    : root_state_(root_state), depth_(depth) {
  if (depth < 1) {
    throw Error(ErrorCode::kInvalidArgument,
                "continuation depth must be >= 1, got " + std::to_string(depth));
  }
  const ChannelSpec& spec = graph.spec();
  const std::size_t k = static_cast<std::size_t>(spec.k);

  // Iterative DFS over (window ++ path); children are visited in canonical
  // symbol order so node ids follow a preorder walk.
  SymbolString sequence = graph.state(root_state).window;
  SymbolString path;

  struct Frame {
    int node;
    int next_symbol;
  };
  std::vector<Frame> stack{{-1, 0}};
  while (!stack.empty()) {
    Frame& top = stack.back();
    if (static_cast<int>(path.size()) == depth || top.next_symbol > spec.num_types) {
      stack.pop_back();
      if (!path.empty()) {
        path.pop_back();
        sequence.pop_back();
      }
      continue;
    }
    const Symbol candidate = Symbol::molecule(top.next_symbol++);
    if (!candidate.is_gap()) {
      const std::size_t from = sequence.size() >= k ? sequence.size() - k : 0;
      if (std::find(sequence.begin() + static_cast<std::ptrdiff_t>(from), sequence.end(),
                    candidate) != sequence.end()) {
        continue;
      }
    }
    if (nodes_.size() >= node_limit) {
      throw Error(ErrorCode::kCapacityExhausted,
                  "continuation tree exceeds " + std::to_string(node_limit) + " nodes");
    }
    sequence.push_back(candidate);
    path.push_back(candidate);

    ContinuationNode node;
    node.label = path;
    node.parent = top.node;
    node.dest = graph.index_of_or_throw(
        State{SymbolString(sequence.end() - static_cast<std::ptrdiff_t>(k), sequence.end())});
    const int id = static_cast<int>(nodes_.size());
    if (top.node < 0) {
      roots_.push_back(id);
    } else {
      nodes_[static_cast<std::size_t>(top.node)].children.push_back(id);
    }
    if (static_cast<int>(path.size()) == depth) full_depth_.push_back(id);
    nodes_.push_back(std::move(node));
    stack.push_back(Frame{id, 0});
  }
}

}  // namespace isifree
