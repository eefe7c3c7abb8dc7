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

#include "isifree/code_io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "isifree/error.hpp"

namespace isifree {

using nlohmann::json;

std::string code_to_json(const ModulationCode& code) {
  json doc;
  doc["spec"] = {{"k", code.spec.k}, {"N", code.spec.num_types}};
  doc["depth"] = code.depth;
  doc["start_state"] = code.states.at(code.start).name;
  json states = json::array();
  for (const CodeState& st : code.states) {
    json entries = json::array();
    for (const CodeEntry& e : st.entries) {
      entries.push_back({{"bits", e.bits},
                         {"symbols", format_symbols(e.symbols)},
                         {"next", code.states.at(e.next).name}});
    }
    states.push_back({{"state", st.name}, {"window", format_state(st.window)}, {"entries", entries}});
  }
  doc["states"] = std::move(states);
  doc["metadata"] = {{"rate", code.rate}};
  return doc.dump(2) + "\n";
}

ModulationCode code_from_json(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kParse, std::string("code file is not valid JSON: ") + e.what());
  }
  try {
    ModulationCode code;
    code.spec.k = doc.at("spec").at("k").get<int>();
    code.spec.num_types = doc.at("spec").at("N").get<int>();
    code.spec.validate();
    code.depth = doc.at("depth").get<int>();
    if (doc.contains("metadata") && doc["metadata"].contains("rate") &&
        doc["metadata"]["rate"].is_number()) {
      code.rate = doc["metadata"]["rate"].get<double>();
    }

    const json& states = doc.at("states");
    if (!states.is_array() || states.empty()) {
      throw Error(ErrorCode::kParse, "code file has no states");
    }
    code.states.resize(states.size());
    for (std::size_t i = 0; i < states.size(); ++i) {
      CodeState& st = code.states[i];
      st.name = states[i].at("state").get<std::string>();
      const std::string window =
          states[i].contains("window") ? states[i]["window"].get<std::string>() : st.name;
      st.window = parse_state(window, code.spec);
    }
    auto lookup = [&](const std::string& name) {
      auto idx = code.find_state(name);
      if (!idx) throw Error(ErrorCode::kParse, "unknown state '" + name + "'");
      return *idx;
    };
    code.start = lookup(doc.at("start_state").get<std::string>());
    for (std::size_t i = 0; i < states.size(); ++i) {
      for (const json& e : states[i].at("entries")) {
        CodeEntry entry;
        entry.bits = e.at("bits").get<std::string>();
        entry.symbols = parse_symbols(e.at("symbols").get<std::string>(), code.spec.num_types);
        entry.next = lookup(e.at("next").get<std::string>());
        code.states[i].entries.push_back(std::move(entry));
      }
    }
    return code;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kParse, std::string("malformed code file: ") + e.what());
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot open '" + path + "' for reading");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_file(const std::string& path, std::string_view contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::kIo, "cannot open '" + path + "' for writing");
  out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
  if (!out) throw Error(ErrorCode::kIo, "write to '" + path + "' failed");
}

ModulationCode load_code(const std::string& path) { return code_from_json(read_file(path)); }

void save_code(const ModulationCode& code, const std::string& path) {
  write_file(path, code_to_json(code));
}

std::string format_stream(const SymbolStream& stream) {
  return "n_bits=" + std::to_string(stream.n_bits) + "\n" + format_symbols(stream.symbols) + "\n";
}

SymbolStream parse_stream(std::string_view text, int num_types) {
  const std::size_t eol = text.find('\n');
  std::string_view header = text.substr(0, eol);
  while (!header.empty() && (header.back() == '\r' || header.back() == ' ')) header.remove_suffix(1);
  constexpr std::string_view kKey = "n_bits=";
  if (header.substr(0, kKey.size()) != kKey) {
    throw Error(ErrorCode::kParse, "stream header must be 'n_bits=<int>'");
  }
  SymbolStream stream;
  const std::string_view digits = header.substr(kKey.size());
  auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), stream.n_bits);
  if (ec != std::errc() || ptr != digits.data() + digits.size() || digits.empty()) {
    throw Error(ErrorCode::kParse, "bad n_bits value '" + std::string(digits) + "'");
  }
  if (eol != std::string_view::npos) stream.symbols = parse_symbols(text.substr(eol + 1), num_types);
  return stream;
}

std::string parse_bits(std::string_view text) {
  std::string bits;
  bits.reserve(text.size());
  for (char c : text) {
    if (c == '0' || c == '1') {
      bits.push_back(c);
    } else if (c != ' ' && c != '\n' && c != '\r' && c != '\t') {
      throw Error(ErrorCode::kParse, std::string("bit file contains '") + c + "'");
    }
  }
  return bits;
}

}  // namespace isifree
