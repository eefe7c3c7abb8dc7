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

#include "isifree/isifree.h"

#include <cstdlib>
#include <cstring>
#include <new>
#include <sstream>
#include <iomanip>
#include <string>

#include "isifree/capacity.hpp"
#include "isifree/code_io.hpp"
#include "isifree/codec.hpp"
#include "isifree/error.hpp"
#include "isifree/eval.hpp"
#include "isifree/synthesis.hpp"

struct isf_code {
  isifree::ModulationCode code;
};

struct isf_encoder {
  explicit isf_encoder(const isifree::ModulationCode& c) : encoder(c) {}
  isifree::Encoder encoder;
};

struct isf_decoder {
  explicit isf_decoder(const isifree::ModulationCode& c) : decoder(c) {}
  isifree::Decoder decoder;
};

namespace {

thread_local std::string g_last_error;

isf_status fail(isf_status status, std::string message) {
  g_last_error = std::move(message);
  return status;
}

// Runs `body`, mapping exceptions onto status codes.
template <class F>
isf_status guarded(F&& body) {
  g_last_error.clear();
  try {
    body();
    return ISF_OK;
  } catch (const isifree::Error& e) {
    return fail(static_cast<isf_status>(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return fail(ISF_ERR_CAPACITY_EXHAUSTED, "out of memory");
  } catch (const std::exception& e) {
    return fail(ISF_ERR_INTERNAL, e.what());
  }
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.data(), s.size() + 1);
  return out;
}

void require(const void* p, const char* what) {
  if (!p) throw isifree::Error(isifree::ErrorCode::kInvalidArgument, std::string(what) + " is NULL");
}

}  // namespace

extern "C" {

const char* isf_version(void) { return "0.1.0"; }

const char* isf_status_name(isf_status status) {
  if (status == ISF_OK) return "OK";
  static thread_local std::string name;
  name = std::string(isifree::error_code_name(static_cast<isifree::ErrorCode>(status)));
  return name.c_str();
}

const char* isf_last_error(void) { return g_last_error.c_str(); }

void isf_string_free(char* s) { std::free(s); }

isf_status isf_capacity(int k, int num_types, double tol, isf_capacity_result* out) {
  return guarded([&] {
    require(out, "out");
    isifree::PowerIterationOptions opts;
    if (tol > 0.0) opts.tol = tol;
    const auto r = isifree::channel_capacity(isifree::ChannelSpec{k, num_types}, opts);
    *out = isf_capacity_result{r.lambda, r.capacity_bits, r.iterations, r.residual};
  });
}

isf_status isf_path_counts_csv(int k, int num_types, int max_m, char** csv) {
  return guarded([&] {
    require(csv, "csv");
    if (max_m < 1) throw isifree::Error(isifree::ErrorCode::kInvalidArgument, "max_m must be >= 1");
    const auto graph = isifree::ConstraintGraph::build(isifree::ChannelSpec{k, num_types});
    const auto table = isifree::path_count_table(graph, graph.all_gap(), max_m);
    std::ostringstream out;
    out << "m,N(m),log2N/m\n" << std::setprecision(10);
    for (int m = 1; m <= max_m; ++m) {
      const auto& n = table[static_cast<std::size_t>(m)];
      out << m << ',' << n << ',' << isifree::log2_big(n) / m << '\n';
    }
    *csv = dup_string(out.str());
  });
}

isf_synthesis_options isf_synthesis_options_default(void) {
  return isf_synthesis_options{1, 2, 1, 1e-6, ISF_ACTIONS_FULL_DEPTH};
}

isf_status isf_synthesize(const isf_synthesis_options* options, isf_synthesis_report* report,
                          isf_code** code_out) {
  return guarded([&] {
    require(options, "options");
    require(report, "report");
    isifree::SynthesisOptions opts;
    opts.tol = options->tol;
    opts.optimizer.action_set = options->actions == ISF_ACTIONS_PREFIX_FREE
                                    ? isifree::ActionSet::kPrefixFree
                                    : isifree::ActionSet::kFullDepth;
    auto r = isifree::synthesize(isifree::ChannelSpec{options->k, options->num_types},
                                 options->depth, opts);
    *report = isf_synthesis_report{r.rate,
                                   r.bisection_root,
                                   r.capacity_bound,
                                   r.capacity_bound - r.rate,
                                   r.bisection_steps,
                                   r.exact_search ? 1 : 0};
    if (code_out) *code_out = new isf_code{std::move(r.code)};
  });
}

isf_status isf_code_load(const char* path, isf_code** out) {
  return guarded([&] {
    require(path, "path");
    require(out, "out");
    *out = new isf_code{isifree::load_code(path)};
  });
}

isf_status isf_code_parse(const char* json, isf_code** out) {
  return guarded([&] {
    require(json, "json");
    require(out, "out");
    *out = new isf_code{isifree::code_from_json(json)};
  });
}

isf_status isf_code_save(const isf_code* code, const char* path) {
  return guarded([&] {
    require(code, "code");
    require(path, "path");
    isifree::save_code(code->code, path);
  });
}

isf_status isf_code_to_json(const isf_code* code, char** json) {
  return guarded([&] {
    require(code, "code");
    require(json, "json");
    *json = dup_string(isifree::code_to_json(code->code));
  });
}

isf_status isf_mcsk_code(isf_code** out) {
  return guarded([&] {
    require(out, "out");
    *out = new isf_code{isifree::mcsk_code()};
  });
}

void isf_code_free(isf_code* code) { delete code; }

isf_status isf_code_info_get(const isf_code* code, isf_code_info* info) {
  return guarded([&] {
    require(code, "code");
    require(info, "info");
    const auto& c = code->code;
    *info = isf_code_info{c.spec.k, c.spec.num_types, c.depth, c.states.size(), c.rate};
  });
}

isf_status isf_code_validate(const isf_code* code, size_t* n_violations, char** report) {
  return guarded([&] {
    require(code, "code");
    const auto violations = isifree::validate_code(code->code);
    if (n_violations) *n_violations = violations.size();
    if (report) {
      std::string text;
      for (const auto& v : violations) text += v + "\n";
      *report = dup_string(text);
    }
  });
}

isf_status isf_code_analytic_rate(const isf_code* code, double* rate) {
  return guarded([&] {
    require(code, "code");
    require(rate, "rate");
    *rate = isifree::code_analytic_rate(code->code);
  });
}

isf_status isf_encode_stream(const isf_code* code, const char* bits, char** container) {
  return guarded([&] {
    require(code, "code");
    require(bits, "bits");
    require(container, "container");
    const std::string clean = isifree::parse_bits(bits);
    const auto result = isifree::encode(code->code, clean);
    *container = dup_string(isifree::format_stream({clean.size(), result.symbols}));
  });
}

isf_status isf_decode_stream(const isf_code* code, const char* container, char** bits) {
  return guarded([&] {
    require(code, "code");
    require(container, "container");
    require(bits, "bits");
    const auto stream = isifree::parse_stream(container, code->code.spec.num_types);
    *bits = dup_string(isifree::decode(code->code, stream.symbols, stream.n_bits));
  });
}

isf_status isf_encoder_new(const isf_code* code, isf_encoder** out) {
  return guarded([&] {
    require(code, "code");
    require(out, "out");
    *out = new isf_encoder(code->code);
  });
}

isf_status isf_encoder_push_bits(isf_encoder* enc, const char* bits, char** symbols) {
  return guarded([&] {
    require(enc, "encoder");
    require(bits, "bits");
    require(symbols, "symbols");
    isifree::SymbolString out;
    enc->encoder.push_bits(isifree::parse_bits(bits), out);
    *symbols = dup_string(isifree::format_symbols(out));
  });
}

isf_status isf_encoder_finish(isf_encoder* enc, char** symbols, size_t* padded_bits) {
  return guarded([&] {
    require(enc, "encoder");
    require(symbols, "symbols");
    isifree::SymbolString out;
    const std::size_t padded = enc->encoder.finish(out);
    if (padded_bits) *padded_bits = padded;
    *symbols = dup_string(isifree::format_symbols(out));
  });
}

void isf_encoder_free(isf_encoder* enc) { delete enc; }

isf_status isf_decoder_new(const isf_code* code, isf_decoder** out) {
  return guarded([&] {
    require(code, "code");
    require(out, "out");
    *out = new isf_decoder(code->code);
  });
}

isf_status isf_decoder_push_symbols(isf_decoder* dec, const char* symbols, char** bits) {
  return guarded([&] {
    require(dec, "decoder");
    require(symbols, "symbols");
    require(bits, "bits");
    std::string out;
    for (auto s : isifree::parse_symbols(symbols)) dec->decoder.push_symbol(s, out);
    *bits = dup_string(out);
  });
}

isf_status isf_decoder_buffer(const isf_decoder* dec, size_t* max_occupancy, size_t* limit) {
  return guarded([&] {
    require(dec, "decoder");
    if (max_occupancy) *max_occupancy = dec->decoder.max_buffer_occupancy();
    if (limit) *limit = dec->decoder.buffer_limit();
  });
}

void isf_decoder_free(isf_decoder* dec) { delete dec; }

isf_status isf_monte_carlo(const isf_code* code, uint64_t n_bits, uint64_t seed,
                           isf_rate_report* out) {
  return guarded([&] {
    require(code, "code");
    require(out, "out");
    const auto r = isifree::run_monte_carlo(code->code, n_bits, seed);
    *out = isf_rate_report{r.analytic_rate,    r.monte_carlo_rate, r.capacity,
                           r.gap,              r.n_bits_simulated, r.symbols_emitted,
                           r.seed,             isifree::kPrngName.data()};
  });
}

isf_status isf_table2_csv(char** csv) {
  return guarded([&] {
    require(csv, "csv");
    *csv = dup_string(isifree::table2_csv(isifree::reproduce_table2()));
  });
}

isf_status isf_sweep_csv(const char* config_json, char** csv, char** errors) {
  return guarded([&] {
    require(config_json, "config");
    require(csv, "csv");
    const auto config = isifree::parse_sweep_config(config_json);
    const auto rows = isifree::sweep(config);
    std::string err;
    for (const auto& r : rows) {
      if (r.error.empty()) continue;
      err += "error k=" + std::to_string(r.k) + " N=" + std::to_string(r.n) +
             " d=" + std::to_string(r.depth) + " message=\"" + r.error + "\"\n";
    }
    const std::string table = isifree::sweep_csv(rows);
    if (!config.output_path.empty()) isifree::write_file(config.output_path, table);
    *csv = dup_string(table);
    if (errors) *errors = dup_string(err);
  });
}

}  // extern "C"
