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

#ifndef ISIFREE_CODEC_HPP_
#define ISIFREE_CODEC_HPP_

#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "isifree/graph.hpp"
#include "isifree/markov.hpp"

namespace isifree {

// One codebook row: reading `bits` in the owning state emits `symbols` and
// moves the encoder to state `next` (an index into ModulationCode::states).
struct CodeEntry {
  std::string bits;
  SymbolString symbols;
  std::size_t next = 0;
};

// A code state. For synthesized codes the name is the window itself
// ("M1,-"); codes that track extra context (MCSK slot parity) use other
// names but still carry the window they guarantee.
struct CodeState {
  std::string name;
  State window;
  std::vector<CodeEntry> entries;
};

// Delay-limited modulation code: per state, a full prefix-free binary code
// mapped onto a prefix-free set of ISI-free symbol strings of length <= depth.
struct ModulationCode {
  ChannelSpec spec;
  int depth = 1;
  std::size_t start = 0;
  std::vector<CodeState> states;
  double rate = 0.0;  // metadata; recomputed by code_analytic_rate

  std::optional<std::size_t> find_state(std::string_view name) const;
};

// Every broken invariant, as a human-readable line. Empty iff the code is
// valid: full prefix-free bit strings, prefix-free symbol strings of length
// <= depth, ISI-free continuations and consistent next states.
std::vector<std::string> validate_code(const ModulationCode& code);

// Parity-alternating MCSK for k=1, N=2: bit 0 sends a gap, bit 1 sends M1
// in odd slots and M2 in even slots. Exactly 1 bit per symbol.
ModulationCode mcsk_code(const ChannelSpec& spec = ChannelSpec{1, 2});

// Rate model of a code under uniform i.i.d. input bits.
RewardChain code_chain(const ModulationCode& code);
std::vector<double> code_stationary(const ModulationCode& code);
double code_analytic_rate(const ModulationCode& code);
std::vector<double> code_state_rates(const ModulationCode& code);

namespace detail {
struct CodeTables;
}

// Streaming encoder. Single owner; a shared code may feed many encoders.
class Encoder {
 public:
  explicit Encoder(const ModulationCode& code);

  void push_bit(bool bit, SymbolString& out);
  void push_bits(std::string_view bits, SymbolString& out);
  // Pads the pending partial codeword with 0-bits. Returns the pad count.
  std::size_t finish(SymbolString& out);

  std::size_t state() const { return state_; }
  std::size_t bits_consumed() const { return bits_consumed_; }
  std::size_t symbols_emitted() const { return symbols_emitted_; }

 private:
  void take_forced_moves(SymbolString& out);
  void emit(std::size_t entry, SymbolString& out);

  std::shared_ptr<const detail::CodeTables> tables_;
  std::size_t state_;
  int trie_node_ = 0;
  std::size_t bits_consumed_ = 0;
  std::size_t symbols_emitted_ = 0;
};

// Streaming decoder. Holds the k-symbol window plus the symbols of the
// codeword being parsed; occupancy never exceeds depth + k for valid codes.
class Decoder {
 public:
  explicit Decoder(const ModulationCode& code);

  void push_symbol(Symbol symbol, std::string& bits_out);

  bool at_boundary() const { return pending_ == 0; }
  std::size_t state() const { return state_; }
  std::size_t buffer_occupancy() const { return window_size_ + pending_; }
  std::size_t max_buffer_occupancy() const { return max_occupancy_; }
  std::size_t buffer_limit() const { return buffer_limit_; }

 private:
  std::shared_ptr<const detail::CodeTables> tables_;
  std::size_t state_;
  int trie_node_ = 0;
  std::size_t pending_ = 0;
  std::size_t window_size_;
  std::size_t buffer_limit_;
  std::size_t max_occupancy_;
};

struct EncodeResult {
  SymbolString symbols;
  std::size_t padded_bits = 0;
};

// Greedy per-state parse from the start state. Throws Error(kMalformedCode)
// if a bit prefix matches no codeword.
EncodeResult encode(const ModulationCode& code, std::string_view bits);

// Inverse of encode, truncated to n_bits. Throws Error(kDesync) when the
// stream does not parse.
std::string decode(const ModulationCode& code, std::span<const Symbol> symbols,
                   std::size_t n_bits);

}  // namespace isifree

#endif  // ISIFREE_CODEC_HPP_
