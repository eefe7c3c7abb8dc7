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

#include "isifree/codec.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <string>

#include "isifree/error.hpp"

namespace isifree {

std::optional<std::size_t> ModulationCode::find_state(std::string_view name) const {
  for (std::size_t i = 0; i < states.size(); ++i) {
    if (states[i].name == name) return i;
  }
  return std::nullopt;
}

namespace {

std::string quoted(std::string_view s) { return "'" + std::string(s) + "'"; }

bool is_prefix(std::string_view a, std::string_view b) {
  return a.size() <= b.size() && b.substr(0, a.size()) == a;
}

bool is_prefix(const SymbolString& a, const SymbolString& b) {
  return a.size() <= b.size() && std::equal(a.begin(), a.end(), b.begin());
}

}  // namespace

std::vector<std::string> validate_code(const ModulationCode& code) {
  std::vector<std::string> out;
  if (code.spec.k < 1 || code.spec.num_types < 1) {
    out.push_back("spec: k and N must be >= 1");
    return out;
  }
  if (code.depth < 1) out.push_back("depth must be >= 1");
  if (code.states.empty()) {
    out.push_back("code has no states");
    return out;
  }
  if (code.start >= code.states.size()) out.push_back("start state out of range");

  const int k = code.spec.k;
  std::set<std::string> names;
  for (const CodeState& st : code.states) {
    const std::string where = "state " + quoted(st.name) + ": ";
    if (!names.insert(st.name).second) out.push_back(where + "duplicate state name");
    if (st.window.window.size() != static_cast<std::size_t>(k)) {
      out.push_back(where + "window does not have k symbols");
      continue;
    }
    if (!is_isi_free(st.window.window, k)) out.push_back(where + "window is not ISI-free");
    for (Symbol s : st.window.window) {
      if (s.index > code.spec.num_types) out.push_back(where + "window uses unknown molecule");
    }
    if (st.entries.empty()) {
      out.push_back(where + "no codebook entries");
      continue;
    }

    // Kraft sum in units of 2^-kMaxBits.
    constexpr int kMaxBits = 120;
    unsigned __int128 kraft = 0;
    bool kraft_ok = true;
    for (const CodeEntry& e : st.entries) {
      const std::string what = where + "entry " + quoted(e.bits) + " -> " +
                               quoted(format_symbols(e.symbols)) + ": ";
      if (e.bits.find_first_not_of("01") != std::string::npos) {
        out.push_back(what + "bit string contains characters other than 0/1");
        kraft_ok = false;
      } else if (e.bits.size() > static_cast<std::size_t>(kMaxBits)) {
        out.push_back(what + "bit string too long");
        kraft_ok = false;
      } else {
        kraft += static_cast<unsigned __int128>(1) << (kMaxBits - static_cast<int>(e.bits.size()));
      }
      if (e.symbols.empty()) {
        out.push_back(what + "empty symbol string");
      } else if (e.symbols.size() > static_cast<std::size_t>(code.depth)) {
        out.push_back(what + "symbol string longer than depth " + std::to_string(code.depth));
      }
      bool known = true;
      for (Symbol s : e.symbols) {
        if (s.index > code.spec.num_types) known = false;
      }
      if (!known) out.push_back(what + "unknown molecule type");
      SymbolString joined = st.window.window;
      joined.insert(joined.end(), e.symbols.begin(), e.symbols.end());
      if (!is_isi_free(joined, k)) out.push_back(what + "continuation violates the ISI constraint");
      if (e.next >= code.states.size()) {
        out.push_back(what + "next state out of range");
      } else if (code.states[e.next].window != advance(st.window, e.symbols, k)) {
        out.push_back(what + "next state " + quoted(code.states[e.next].name) +
                      " does not match the last k symbols");
      }
    }
    if (kraft_ok && kraft != (static_cast<unsigned __int128>(1) << kMaxBits)) {
      out.push_back(where + "bit strings are not a full code (Kraft sum != 1)");
    }

    for (std::size_t i = 0; i < st.entries.size(); ++i) {
      for (std::size_t j = 0; j < st.entries.size(); ++j) {
        if (i == j) continue;
        const CodeEntry& a = st.entries[i];
        const CodeEntry& b = st.entries[j];
        if (is_prefix(a.bits, b.bits) && (a.bits != b.bits || i < j)) {
          out.push_back(where + "bit strings " + quoted(a.bits) + " and " + quoted(b.bits) +
                        " are not prefix-free");
        }
        if (!a.symbols.empty() && is_prefix(a.symbols, b.symbols) &&
            (a.symbols != b.symbols || i < j)) {
          out.push_back(where + "symbol strings " + quoted(format_symbols(a.symbols)) +
                        " and " + quoted(format_symbols(b.symbols)) + " are not prefix-free");
        }
      }
    }
  }
  return out;
}

ModulationCode mcsk_code(const ChannelSpec& spec) {
  if (spec.k != 1 || spec.num_types != 2) {
    throw Error(ErrorCode::kInvalidArgument, "MCSK is defined for k=1, N=2 only");
  }
  const Symbol gap = Symbol::gap(), m1 = Symbol::molecule(1), m2 = Symbol::molecule(2);
  ModulationCode code;
  code.spec = spec;
  code.depth = 1;
  code.start = 0;
  // 0: odd|-  1: odd|M2  2: even|-  3: even|M1
  code.states = {
      {"odd|-", State{{gap}}, {{"0", {gap}, 2}, {"1", {m1}, 3}}},
      {"odd|M2", State{{m2}}, {{"0", {gap}, 2}, {"1", {m1}, 3}}},
      {"even|-", State{{gap}}, {{"0", {gap}, 0}, {"1", {m2}, 1}}},
      {"even|M1", State{{m1}}, {{"0", {gap}, 0}, {"1", {m2}, 1}}},
  };
  code.rate = 1.0;
  return code;
}

RewardChain code_chain(const ModulationCode& code) {
  const Eigen::Index n = static_cast<Eigen::Index>(code.states.size());
  RewardChain chain;
  chain.transition = Eigen::MatrixXd::Zero(n, n);
  chain.expected_bits.assign(code.states.size(), 0.0);
  chain.expected_symbols.assign(code.states.size(), 0.0);
  chain.start = code.start;
  for (std::size_t s = 0; s < code.states.size(); ++s) {
    for (const CodeEntry& e : code.states[s].entries) {
      if (e.next >= code.states.size()) {
        throw Error(ErrorCode::kMalformedCode, "next state out of range");
      }
      const double p = std::ldexp(1.0, -static_cast<int>(e.bits.size()));
      chain.transition(static_cast<Eigen::Index>(s), static_cast<Eigen::Index>(e.next)) += p;
      chain.expected_bits[s] += p * static_cast<double>(e.bits.size());
      chain.expected_symbols[s] += p * static_cast<double>(e.symbols.size());
    }
  }
  return chain;
}

std::vector<double> code_stationary(const ModulationCode& code) {
  return stationary_distribution(code_chain(code).transition, code.start);
}

double code_analytic_rate(const ModulationCode& code) {
  const RewardChain chain = code_chain(code);
  const std::vector<double> pi = stationary_distribution(chain.transition, chain.start);
  return analytic_rate(chain, pi);
}

std::vector<double> code_state_rates(const ModulationCode& code) {
  return per_state_rates(code_chain(code));
}

namespace detail {

struct BitTrieNode {
  int child[2] = {-1, -1};
  int entry = -1;
};

struct SymbolTrieNode {
  std::vector<std::pair<std::uint16_t, int>> children;
  int entry = -1;

  int find(std::uint16_t s) const {
    for (const auto& [sym, id] : children) {
      if (sym == s) return id;
    }
    return -1;
  }
};

struct CodeTables {
  struct PerState {
    std::vector<BitTrieNode> bits{BitTrieNode{}};
    std::vector<SymbolTrieNode> symbols{SymbolTrieNode{}};
    int forced = -1;  // single entry with an empty bit string
  };
  std::vector<PerState> states;
  std::vector<std::vector<CodeEntry>> entries;
  std::size_t start = 0;
  std::size_t k = 0;
  std::size_t depth = 0;

  explicit CodeTables(const ModulationCode& code) {
    if (code.states.empty() || code.start >= code.states.size()) {
      throw Error(ErrorCode::kMalformedCode, "code has no valid start state");
    }
    start = code.start;
    k = static_cast<std::size_t>(code.spec.k);
    depth = static_cast<std::size_t>(code.depth);
    states.resize(code.states.size());
    entries.resize(code.states.size());
    for (std::size_t s = 0; s < code.states.size(); ++s) {
      const CodeState& st = code.states[s];
      PerState& t = states[s];
      entries[s] = st.entries;
      if (st.entries.empty()) {
        throw Error(ErrorCode::kMalformedCode, "state '" + st.name + "' has no entries");
      }
      if (st.entries.size() == 1 && st.entries[0].bits.empty()) t.forced = 0;
      for (std::size_t i = 0; i < st.entries.size(); ++i) {
        const CodeEntry& e = st.entries[i];
        const std::string where = "state '" + st.name + "', entry '" + e.bits + "': ";
        if (e.next >= code.states.size()) {
          throw Error(ErrorCode::kMalformedCode, where + "next state out of range");
        }
        if (e.symbols.empty()) throw Error(ErrorCode::kMalformedCode, where + "empty symbol string");

        int node = 0;
        for (char c : e.bits) {
          if (c != '0' && c != '1') throw Error(ErrorCode::kMalformedCode, where + "bad bit");
          if (t.bits[static_cast<std::size_t>(node)].entry >= 0) {
            throw Error(ErrorCode::kMalformedCode, where + "bit strings not prefix-free");
          }
          int child = t.bits[static_cast<std::size_t>(node)].child[c - '0'];
          if (child < 0) {
            child = static_cast<int>(t.bits.size());
            t.bits[static_cast<std::size_t>(node)].child[c - '0'] = child;
            t.bits.emplace_back();
          }
          node = child;
        }
        BitTrieNode& leaf = t.bits[static_cast<std::size_t>(node)];
        if (leaf.entry >= 0 || leaf.child[0] >= 0 || leaf.child[1] >= 0) {
          throw Error(ErrorCode::kMalformedCode, where + "bit strings not prefix-free");
        }
        leaf.entry = static_cast<int>(i);

        node = 0;
        for (Symbol sym : e.symbols) {
          if (t.symbols[static_cast<std::size_t>(node)].entry >= 0) {
            throw Error(ErrorCode::kMalformedCode, where + "symbol strings not prefix-free");
          }
          int child = t.symbols[static_cast<std::size_t>(node)].find(sym.index);
          if (child < 0) {
            child = static_cast<int>(t.symbols.size());
            t.symbols[static_cast<std::size_t>(node)].children.emplace_back(sym.index, child);
            t.symbols.emplace_back();
          }
          node = child;
        }
        SymbolTrieNode& sleaf = t.symbols[static_cast<std::size_t>(node)];
        if (sleaf.entry >= 0 || !sleaf.children.empty()) {
          throw Error(ErrorCode::kMalformedCode, where + "symbol strings not prefix-free");
        }
        sleaf.entry = static_cast<int>(i);
      }
    }
  }
};

}  // namespace detail

Encoder::Encoder(const ModulationCode& code)
    : tables_(std::make_shared<const detail::CodeTables>(code)), state_(code.start) {}

void Encoder::emit(std::size_t entry, SymbolString& out) {
  const CodeEntry& e = tables_->entries[state_][entry];
  out.insert(out.end(), e.symbols.begin(), e.symbols.end());
  symbols_emitted_ += e.symbols.size();
  state_ = e.next;
  trie_node_ = 0;
}

void Encoder::take_forced_moves(SymbolString& out) {
  std::size_t guard = 0;
  while (tables_->states[state_].forced >= 0) {
    if (++guard > tables_->states.size()) {
      throw Error(ErrorCode::kMalformedCode, "code has a cycle of zero-bit moves");
    }
    emit(static_cast<std::size_t>(tables_->states[state_].forced), out);
  }
}

void Encoder::push_bit(bool bit, SymbolString& out) {
  if (trie_node_ == 0) take_forced_moves(out);
  const auto& trie = tables_->states[state_].bits;
  const int child = trie[static_cast<std::size_t>(trie_node_)].child[bit ? 1 : 0];
  if (child < 0) {
    throw Error(ErrorCode::kMalformedCode,
                "no codeword matches the input at state index " + std::to_string(state_));
  }
  ++bits_consumed_;
  trie_node_ = child;
  const int entry = trie[static_cast<std::size_t>(child)].entry;
  if (entry >= 0) emit(static_cast<std::size_t>(entry), out);
}

void Encoder::push_bits(std::string_view bits, SymbolString& out) {
  for (char c : bits) {
    if (c != '0' && c != '1') {
      throw Error(ErrorCode::kInvalidArgument, "bit string contains characters other than 0/1");
    }
    push_bit(c == '1', out);
  }
}

std::size_t Encoder::finish(SymbolString& out) {
  std::size_t padded = 0;
  while (trie_node_ != 0) {
    push_bit(false, out);
    --bits_consumed_;
    ++padded;
  }
  return padded;
}

Decoder::Decoder(const ModulationCode& code)
    : tables_(std::make_shared<const detail::CodeTables>(code)),
      state_(code.start),
      window_size_(static_cast<std::size_t>(code.spec.k)),
      buffer_limit_(static_cast<std::size_t>(code.depth + code.spec.k)),
      max_occupancy_(static_cast<std::size_t>(code.spec.k)) {}

void Decoder::push_symbol(Symbol symbol, std::string& bits_out) {
  const auto& trie = tables_->states[state_].symbols;
  const int child = trie[static_cast<std::size_t>(trie_node_)].find(symbol.index);
  if (child < 0) {
    throw Error(ErrorCode::kDesync, "symbol " + to_string(symbol) +
                                        " matches no codeword at state index " +
                                        std::to_string(state_));
  }
  ++pending_;
  max_occupancy_ = std::max(max_occupancy_, window_size_ + pending_);
  if (window_size_ + pending_ > buffer_limit_) {
    throw Error(ErrorCode::kDesync, "decoder buffer exceeded depth + k symbols");
  }
  trie_node_ = child;
  const int entry = trie[static_cast<std::size_t>(child)].entry;
  if (entry >= 0) {
    const CodeEntry& e = tables_->entries[state_][static_cast<std::size_t>(entry)];
    bits_out += e.bits;
    state_ = e.next;
    trie_node_ = 0;
    pending_ = 0;
  }
}

EncodeResult encode(const ModulationCode& code, std::string_view bits) {
  Encoder encoder(code);
  EncodeResult result;
  encoder.push_bits(bits, result.symbols);
  result.padded_bits = encoder.finish(result.symbols);
  return result;
}

std::string decode(const ModulationCode& code, std::span<const Symbol> symbols,
                   std::size_t n_bits) {
  Decoder decoder(code);
  std::string bits;
  for (Symbol s : symbols) decoder.push_symbol(s, bits);
  if (!decoder.at_boundary()) {
    throw Error(ErrorCode::kDesync, "symbol stream ends inside a codeword");
  }
  if (bits.size() < n_bits) {
    throw Error(ErrorCode::kDesync, "stream decodes to " + std::to_string(bits.size()) +
                                        " bits, expected " + std::to_string(n_bits));
  }
  bits.resize(n_bits);
  return bits;
}

}  // namespace isifree
