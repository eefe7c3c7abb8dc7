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

#include <cstdio>
#include <filesystem>
#include <string>

#include <gtest/gtest.h>

#include "isifree/code_io.hpp"
#include "isifree/error.hpp"
#include "isifree/synthesis.hpp"
#include "test_util.hpp"

namespace isifree {
namespace {

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::kInternal;
}

bool same_code(const ModulationCode& a, const ModulationCode& b) {
  if (!(a.spec == b.spec) || a.depth != b.depth || a.start != b.start ||
      a.states.size() != b.states.size())
    return false;
  for (std::size_t i = 0; i < a.states.size(); ++i) {
    const auto& x = a.states[i];
    const auto& y = b.states[i];
    if (x.name != y.name || x.window != y.window || x.entries.size() != y.entries.size())
      return false;
    for (std::size_t j = 0; j < x.entries.size(); ++j) {
      if (x.entries[j].bits != y.entries[j].bits || x.entries[j].symbols != y.entries[j].symbols ||
          x.entries[j].next != y.entries[j].next)
        return false;
    }
  }
  return true;
}

TEST(CodeJson, RoundTripSynthesized) {
  for (int d = 1; d <= 3; ++d) {
    const auto code = synthesize({2, 3}, d).code;
    const auto back = code_from_json(code_to_json(code));
    EXPECT_TRUE(same_code(code, back));
    EXPECT_DOUBLE_EQ(back.rate, code.rate);
  }
  const auto mcsk = mcsk_code();
  const auto back = code_from_json(code_to_json(mcsk));
  EXPECT_TRUE(same_code(mcsk, back));
  EXPECT_EQ(back.states[back.start].name, mcsk.states[mcsk.start].name);
}

TEST(CodeJson, SaveAndLoad) {
  const auto path = std::filesystem::temp_directory_path() / "isifree_code_io_test.json";
  const auto code = load_code(testing::fixture("depth2_code.json"));
  save_code(code, path.string());
  EXPECT_TRUE(same_code(code, load_code(path.string())));
  std::filesystem::remove(path);
}

TEST(CodeJson, Errors) {
  EXPECT_EQ(code_of([] { code_from_json("{not json"); }), ErrorCode::kParse);
  EXPECT_EQ(code_of([] { code_from_json(R"({"spec":{"k":1,"N":2}})"); }), ErrorCode::kParse);
  EXPECT_EQ(code_of([] {
              code_from_json(R"({"spec":{"k":1,"N":2},"depth":1,"start_state":"X",
                                 "states":[{"state":"-","entries":[]}]})");
            }),
            ErrorCode::kParse);
  EXPECT_EQ(code_of([] {
              code_from_json(R"({"spec":{"k":0,"N":2},"depth":1,"start_state":"-","states":[]})");
            }),
            ErrorCode::kInvalidArgument);
  EXPECT_EQ(code_of([] { load_code("/nonexistent/dir/code.json"); }), ErrorCode::kIo);
  EXPECT_EQ(code_of([] { write_file("/nonexistent/dir/out", "x"); }), ErrorCode::kIo);
}

TEST(Stream, FormatAndParse) {
  const SymbolStream s{5, parse_symbols("M1 - M2")};
  const std::string text = format_stream(s);
  EXPECT_EQ(text, "n_bits=5\nM1 - M2\n");
  const auto back = parse_stream(text, 2);
  EXPECT_EQ(back.n_bits, 5u);
  EXPECT_EQ(back.symbols, s.symbols);
  EXPECT_EQ(parse_stream("n_bits=0\n").symbols.size(), 0u);
  EXPECT_EQ(code_of([] { parse_stream("bits=3\n-"); }), ErrorCode::kParse);
  EXPECT_EQ(code_of([] { parse_stream("n_bits=x\n-"); }), ErrorCode::kParse);
  EXPECT_THROW(parse_stream("n_bits=1\nM3", 2), Error);
}

TEST(Bits, Parse) {
  EXPECT_EQ(parse_bits("01 1\n0\r\n"), "0110");
  EXPECT_EQ(code_of([] { parse_bits("012"); }), ErrorCode::kParse);
}

}  // namespace
}  // namespace isifree
