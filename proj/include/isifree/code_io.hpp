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

#ifndef ISIFREE_CODE_IO_HPP_
#define ISIFREE_CODE_IO_HPP_

#include <cstddef>
#include <span>
#include <string>
#include <string_view>

#include "isifree/codec.hpp"

namespace isifree {

// Code files are JSON:
//   {
//     "spec": {"k": 1, "N": 2},
//     "depth": 1,
//     "start_state": "-",
//     "states": [
//       {"state": "-", "window": "-",
//        "entries": [{"bits": "0", "symbols": "-", "next": "-"}, ...]},
//       ...
//     ],
//     "metadata": {"rate": 1.25}
//   }
// "window" may be omitted when the state name is the window itself.
std::string code_to_json(const ModulationCode& code);
ModulationCode code_from_json(std::string_view text);

ModulationCode load_code(const std::string& path);
void save_code(const ModulationCode& code, const std::string& path);

// Encoded-stream container: "n_bits=<int>" line, then the symbols separated
// by spaces.
struct SymbolStream {
  std::size_t n_bits = 0;
  SymbolString symbols;
};

std::string format_stream(const SymbolStream& stream);
SymbolStream parse_stream(std::string_view text, int num_types = 0);

// Bit files hold '0'/'1' characters; whitespace is ignored.
std::string parse_bits(std::string_view text);

std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view contents);

}  // namespace isifree

#endif  // ISIFREE_CODE_IO_HPP_
