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
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "isifree/isifree.h"

namespace {

struct CliFailure {
  isf_status status;
  std::string message;
};

void check(isf_status status) {
  if (status != ISF_OK) throw CliFailure{status, isf_last_error()};
}

std::string quote(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c == '\n' ? ' ' : c;
  }
  return out;
}

std::string take(char* s) {
  std::string out = s ? s : "";
  isf_string_free(s);
  return out;
}

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CliFailure{ISF_ERR_IO, "cannot open " + path};
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out || !(out << text)) throw CliFailure{ISF_ERR_IO, "cannot write " + path};
}

struct CodeHandle {
  explicit CodeHandle(const std::string& path) { check(isf_code_load(path.c_str(), &ptr)); }
  CodeHandle(const CodeHandle&) = delete;
  CodeHandle& operator=(const CodeHandle&) = delete;
  ~CodeHandle() { isf_code_free(ptr); }
  isf_code* ptr = nullptr;
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Design and evaluate ISI-free modulation codes for molecular channels"};
  app.set_version_flag("--version", std::string(isf_version()));
  app.require_subcommand(1);

  int k = 1, num_types = 2, depth = 1, paths = 0;
  double tol = 1e-6;
  std::string actions = "full-depth";
  std::string code_path, in_path, out_path, config_path;
  std::uint64_t n_bits = 1000000, seed = 1;

  auto* cap = app.add_subcommand("capacity", "Constraint-graph capacity and path counts");
  cap->add_option("--k", k, "Memory length")->required();
  cap->add_option("--num-types", num_types, "Number of molecule types")->required();
  cap->add_option("--paths", paths, "Print exact path counts N(m) for m = 1..M");

  auto* syn = app.add_subcommand("synthesize", "Synthesize a code by bisection on the rate");
  syn->add_option("--k", k, "Memory length")->required();
  syn->add_option("--num-types", num_types, "Number of molecule types")->required();
  syn->add_option("--depth", depth, "Continuation depth d")->required();
  syn->add_option("--tol", tol, "Bisection tolerance");
  syn->add_option("--actions", actions, "Action set")
      ->check(CLI::IsMember({"full-depth", "prefix-free"}));
  syn->add_option("--out", out_path, "Write the code as JSON");

  auto* enc = app.add_subcommand("encode", "Encode a bit file into a symbol stream");
  enc->add_option("--code", code_path, "Code JSON")->required();
  enc->add_option("--in", in_path, "Bit file of 0/1 characters")->required();
  enc->add_option("--out", out_path, "Output stream (default stdout)");

  auto* dec = app.add_subcommand("decode", "Decode a symbol stream into bits");
  dec->add_option("--code", code_path, "Code JSON")->required();
  dec->add_option("--in", in_path, "Symbol stream")->required();
  dec->add_option("--out", out_path, "Output bit file (default stdout)");

  auto* rate = app.add_subcommand("rate", "Analytic and Monte-Carlo rate of a code");
  rate->add_option("--code", code_path, "Code JSON (omit with --mcsk)");
  auto* mcsk_flag = rate->add_flag("--mcsk", "Use the built-in MCSK baseline");
  rate->add_option("--bits", n_bits, "Bits to simulate");
  rate->add_option("--seed", seed, "PRNG seed");

  auto* table = app.add_subcommand("table2", "Rates of MCSK, d = 1..5 and capacity for k=1, N=2");

  auto* sw = app.add_subcommand("sweep", "Synthesize over a grid of (k, N, d)");
  sw->add_option("--config", config_path, "Sweep JSON config")->required();
  sw->add_option("--out", out_path, "Output CSV (default: config \"out\", else stdout)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*cap) {
      isf_capacity_result r{};
      check(isf_capacity(k, num_types, 0.0, &r));
      std::printf("k=%d\nN=%d\nlambda=%.12f\ncapacity=%.12f\niterations=%d\nresidual=%.3e\n",
                  k, num_types, r.lambda, r.capacity_bits, r.iterations, r.residual);
      if (paths > 0) {
        char* csv = nullptr;
        check(isf_path_counts_csv(k, num_types, paths, &csv));
        std::cout << take(csv);
      }
    } else if (*syn) {
      isf_synthesis_options o = isf_synthesis_options_default();
      o.k = k;
      o.num_types = num_types;
      o.depth = depth;
      o.tol = tol;
      o.actions = actions == "prefix-free" ? ISF_ACTIONS_PREFIX_FREE : ISF_ACTIONS_FULL_DEPTH;
      isf_synthesis_report r{};
      isf_code* code = nullptr;
      check(isf_synthesize(&o, &r, out_path.empty() ? nullptr : &code));
      std::unique_ptr<isf_code, decltype(&isf_code_free)> guard(code, isf_code_free);
      std::printf("k=%d\nN=%d\nd=%d\nrate=%.10f\nbisection_root=%.10f\ncapacity=%.10f\n"
                  "gap=%.10f\nbisection_steps=%d\n",
                  k, num_types, depth, r.rate, r.bisection_root, r.capacity_bound, r.gap,
                  r.bisection_steps);
      if (!r.exact_search) std::printf("search=heuristic\n");
      if (code) check(isf_code_save(code, out_path.c_str()));
    } else if (*enc) {
      CodeHandle code(code_path);
      const std::string bits = read_text(in_path);
      char* out = nullptr;
      check(isf_encode_stream(code.ptr, bits.c_str(), &out));
      write_text(out_path, take(out));
    } else if (*dec) {
      CodeHandle code(code_path);
      const std::string stream = read_text(in_path);
      char* out = nullptr;
      check(isf_decode_stream(code.ptr, stream.c_str(), &out));
      write_text(out_path, take(out) + "\n");
    } else if (*rate) {
      isf_code* raw = nullptr;
      if (*mcsk_flag) {
        check(isf_mcsk_code(&raw));
      } else if (!code_path.empty()) {
        check(isf_code_load(code_path.c_str(), &raw));
      } else {
        throw CliFailure{ISF_ERR_INVALID_ARGUMENT, "rate needs --code or --mcsk"};
      }
      std::unique_ptr<isf_code, decltype(&isf_code_free)> code(raw, isf_code_free);
      isf_rate_report r{};
      check(isf_monte_carlo(code.get(), n_bits, seed, &r));
      std::printf("analytic_rate=%.10f\nmonte_carlo_rate=%.10f\ncapacity=%.10f\ngap=%.10f\n"
                  "n_bits=%llu\nsymbols=%llu\nseed=%llu\nprng=%s\n",
                  r.analytic_rate, r.monte_carlo_rate, r.capacity, r.gap,
                  static_cast<unsigned long long>(r.n_bits_simulated),
                  static_cast<unsigned long long>(r.symbols_emitted),
                  static_cast<unsigned long long>(r.seed), r.prng);
    } else if (*table) {
      char* csv = nullptr;
      check(isf_table2_csv(&csv));
      std::cout << take(csv);
    } else if (*sw) {
      const std::string config = read_text(config_path);
      char* csv = nullptr;
      char* errors = nullptr;
      check(isf_sweep_csv(config.c_str(), &csv, &errors));
      const std::string err = take(errors);
      const std::string table = take(csv);
      if (!out_path.empty() || config.find("\"out\"") == std::string::npos) {
        write_text(out_path, table);
      }
      std::cerr << err;
    }
  } catch (const CliFailure& f) {
    std::fprintf(stderr, "error code=%s message=\"%s\"\n", isf_status_name(f.status),
                 quote(f.message).c_str());
    return 1;
  }
  return 0;
}
