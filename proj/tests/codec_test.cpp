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

#include <algorithm>
#include <random>
#include <string>

#include <gtest/gtest.h>

#include "isifree/code_io.hpp"
#include "isifree/codec.hpp"
#include "isifree/error.hpp"
#include "isifree/synthesis.hpp"
#include "test_util.hpp"

namespace isifree {
namespace {

ModulationCode depth2() { return load_code(testing::fixture("depth2_code.json")); }
ModulationCode modified_mcsk() { return load_code(testing::fixture("modified_mcsk_code.json")); }

std::string encoded(const ModulationCode& code, const std::string& bits) {
  return format_symbols(encode(code, bits).symbols);
}

bool has_violation(const ModulationCode& code, const std::string& needle) {
  for (const auto& v : validate_code(code))
    if (v.find(needle) != std::string::npos) return true;
  return false;
}

TEST(Encode, DepthTwoCodeRows) {
  const auto code = depth2();
  EXPECT_EQ(encoded(code, "01"), "M2 -");
  EXPECT_EQ(encoded(code, "110"), "M1 M2");
  EXPECT_EQ(encoded(code, "110" "11"), "M1 M2 M1 M2");
  EXPECT_EQ(encoded(code, ""), "");
  EXPECT_EQ(encode(code, "").padded_bits, 0u);

  Encoder enc(code);
  SymbolString out;
  enc.push_bits("110", out);
  EXPECT_EQ(code.states[enc.state()].name, "M2");
}

TEST(Encode, PadsPartialCodeword) {
  const auto r = encode(modified_mcsk(), "1");
  EXPECT_EQ(format_symbols(r.symbols), "M1");
  EXPECT_EQ(r.padded_bits, 1u);
  EXPECT_EQ(decode(modified_mcsk(), r.symbols, 1), "1");
}

TEST(Encode, RejectsNonBinary) {
  EXPECT_THROW(encode(modified_mcsk(), "10x"), Error);
}

TEST(Decode, Examples) {
  EXPECT_EQ(decode(depth2(), parse_symbols("M2 -"), 2), "01");
  EXPECT_EQ(decode(modified_mcsk(), parse_symbols("M1 M2 -"), 4), "1010");
}

TEST(Decode, DesyncOnForbiddenSymbol) {
  try {
    decode(modified_mcsk(), parse_symbols("M1 M1"), 3);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kDesync);
  }
  EXPECT_THROW(decode(modified_mcsk(), parse_symbols("M1"), 5), Error);
}

TEST(Mcsk, Examples) {
  const auto code = mcsk_code();
  EXPECT_TRUE(validate_code(code).empty());
  EXPECT_EQ(encoded(code, "101"), "M1 - M1");
  EXPECT_EQ(encoded(code, "011"), "- M2 M1");
  EXPECT_EQ(encoded(code, "000"), "- - -");
  EXPECT_EQ(encoded(code, "11"), "M1 M2");
  EXPECT_NEAR(code_analytic_rate(code), 1.0, 1e-12);
  EXPECT_THROW(mcsk_code({2, 2}), Error);
}

TEST(Validate, FixturesAreValid) {
  EXPECT_TRUE(validate_code(depth2()).empty());
  EXPECT_TRUE(validate_code(modified_mcsk()).empty());
  EXPECT_NEAR(code_analytic_rate(depth2()), 1.25, 1e-12);
  EXPECT_NEAR(code_analytic_rate(modified_mcsk()), 1.25, 1e-12);
}

TEST(Validate, ModifiedMcskRates) {
  const auto rates = code_state_rates(modified_mcsk());
  EXPECT_NEAR(rates[0], 1.5, 1e-12);
  EXPECT_NEAR(rates[1], 1.0, 1e-12);
  EXPECT_NEAR(rates[2], 1.0, 1e-12);
  const auto pi = code_stationary(modified_mcsk());
  EXPECT_NEAR(pi[0], 0.5, 1e-12);
  EXPECT_NEAR(pi[1], 0.25, 1e-12);
  EXPECT_NEAR(pi[2], 0.25, 1e-12);
}

TEST(Validate, ReportsViolations) {
  auto code = modified_mcsk();
  code.states[0].entries[1].bits = "01";
  code.states[0].entries[0].bits = "0";
  EXPECT_TRUE(has_violation(code, "prefix"));

  code = modified_mcsk();
  code.states[1].entries[1].symbols = parse_symbols("M1 M1");
  EXPECT_TRUE(has_violation(code, "ISI"));

  code = modified_mcsk();
  code.states[0].entries.pop_back();
  EXPECT_TRUE(has_violation(code, "Kraft"));

  code = modified_mcsk();
  code.states[0].entries[1].next = 0;
  EXPECT_TRUE(has_violation(code, "next"));

  code = modified_mcsk();
  code.states[0].entries[0].symbols = parse_symbols("- - -");
  code.states[0].entries[0].next = 0;
  EXPECT_TRUE(has_violation(code, "depth"));

  code = modified_mcsk();
  code.states[0].entries[1].symbols = parse_symbols("-");
  code.states[0].entries[1].next = 0;
  EXPECT_TRUE(has_violation(code, "prefix"));

  code = modified_mcsk();
  code.states[2].name = "M1";
  EXPECT_FALSE(validate_code(code).empty());
}

TEST(Codec, MalformedCodeRejectedByEncoder) {
  auto code = modified_mcsk();
  code.states[0].entries[1].bits = "0";
  EXPECT_THROW(Encoder{code}, Error);
}

TEST(Codec, StreamingMatchesBatch) {
  std::mt19937_64 rng(17);
  const auto code = synthesize({2, 3}, 3).code;
  const std::string bits = testing::random_bits(rng, 5000);
  const auto batch = encode(code, bits);

  Encoder enc(code);
  SymbolString streamed;
  std::size_t pos = 0;
  while (pos < bits.size()) {
    const std::size_t n = std::min<std::size_t>(1 + rng() % 37, bits.size() - pos);
    enc.push_bits(std::string_view(bits).substr(pos, n), streamed);
    pos += n;
  }
  EXPECT_EQ(enc.finish(streamed), batch.padded_bits);
  EXPECT_EQ(streamed, batch.symbols);
  EXPECT_EQ(enc.symbols_emitted(), streamed.size());

  Decoder dec(code);
  std::string out;
  for (Symbol s : streamed) dec.push_symbol(s, out);
  EXPECT_TRUE(dec.at_boundary());
  EXPECT_EQ(out.substr(0, bits.size()), bits);
  EXPECT_LE(dec.max_buffer_occupancy(), dec.buffer_limit());
  EXPECT_EQ(dec.buffer_limit(), 5u);
}

TEST(Codec, RoundTripRandomCodes) {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 200; ++trial) {
    const int k = 1 + static_cast<int>(rng() % 3);
    const int n = 1 + static_cast<int>(rng() % 4);
    const int d = 1 + static_cast<int>(rng() % 3);
    const DepthGraph g({k, n}, d);
    const auto code = policy_to_code(g, testing::random_policy(rng, g), 0.0);
    ASSERT_TRUE(validate_code(code).empty());
    const std::string bits = testing::random_bits(rng, 1 + rng() % 1000);
    const auto enc = encode(code, bits);
    EXPECT_TRUE(is_isi_free(enc.symbols, k));
    EXPECT_EQ(decode(code, enc.symbols, bits.size()), bits);

    Decoder dec(code);
    std::string out;
    for (Symbol s : enc.symbols) dec.push_symbol(s, out);
    EXPECT_LE(dec.max_buffer_occupancy(), static_cast<std::size_t>(d + k));
  }
}

}  // namespace
}  // namespace isifree
