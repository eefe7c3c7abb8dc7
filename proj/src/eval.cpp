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

#include "isifree/eval.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <iomanip>
#include <random>
#include <sstream>
#include <thread>

#include <nlohmann/json.hpp>

#include "isifree/capacity.hpp"
#include "isifree/error.hpp"

namespace isifree {

RateReport run_monte_carlo(const ModulationCode& code, std::size_t n_bits, std::uint64_t seed) {
  if (n_bits < 1000) {
    throw Error(ErrorCode::kInvalidArgument, "Monte-Carlo run needs at least 1000 bits");
  }
  RateReport report;
  report.spec = code.spec;
  report.depth = code.depth;
  report.seed = seed;
  report.n_bits_simulated = n_bits;
  report.analytic_rate = code_analytic_rate(code);
  report.capacity = channel_capacity(code.spec).capacity_bits;
  report.gap = report.capacity - report.analytic_rate;

  std::mt19937_64 rng(seed);
  Encoder encoder(code);
  SymbolString sink;
  std::size_t remaining = n_bits;
  while (remaining > 0) {
    std::uint64_t word = rng();
    const std::size_t take = std::min<std::size_t>(remaining, 64);
    for (std::size_t i = 0; i < take; ++i, word >>= 1) encoder.push_bit(word & 1u, sink);
    remaining -= take;
    sink.clear();
  }
  report.padded_bits = encoder.finish(sink);
  report.symbols_emitted = encoder.symbols_emitted();
  report.monte_carlo_rate =
      static_cast<double>(n_bits) / static_cast<double>(report.symbols_emitted);
  return report;
}

std::vector<Table2Row> reproduce_table2(const SynthesisOptions& options) {
  struct Reference {
    const char* scheme;
    int depth;  // 0: MCSK, -1: capacity
    double rate;
  };
  static constexpr Reference kReference[] = {
      {"MCSK", 0, 1.0},    {"d=1", 1, 1.25},   {"d=2", 2, 1.25},           {"d=3", 3, 1.2604},
      {"d=4", 4, 1.2617},  {"d=5", 5, 1.2640}, {"capacity", -1, 1.2716},
  };
  const ChannelSpec spec{1, 2};
  std::vector<Table2Row> rows;
  for (const Reference& ref : kReference) {
    Table2Row row;
    row.scheme = ref.scheme;
    row.reference = ref.rate;
    if (ref.depth == 0) {
      row.rate = code_analytic_rate(mcsk_code(spec));
    } else if (ref.depth < 0) {
      row.rate = channel_capacity(spec).capacity_bits;
    } else {
      row.rate = synthesize(spec, ref.depth, options).rate;
    }
    row.abs_diff = std::abs(row.rate - row.reference);
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string table2_csv(const std::vector<Table2Row>& rows) {
  std::ostringstream out;
  out << "scheme,rate,reference,abs_diff\n" << std::setprecision(10);
  for (const Table2Row& r : rows) {
    out << r.scheme << ',' << r.rate << ',' << r.reference << ',' << r.abs_diff << '\n';
  }
  return out.str();
}

namespace {

std::vector<int> parse_range(const nlohmann::json& doc, const char* key) {
  if (!doc.contains(key)) return {};
  const auto& v = doc.at(key);
  std::vector<int> out;
  if (v.is_array()) {
    for (const auto& x : v) out.push_back(x.get<int>());
  } else if (v.is_object()) {
    const int from = v.at("from").get<int>();
    const int to = v.at("to").get<int>();
    for (int x = from; x <= to; ++x) out.push_back(x);
  } else {
    out.push_back(v.get<int>());
  }
  if (out.empty()) {
    throw Error(ErrorCode::kInvalidArgument, std::string("sweep range '") + key + "' is empty");
  }
  return out;
}

}  // namespace

SweepConfig parse_sweep_config(std::string_view json_text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kParse, std::string("sweep config is not valid JSON: ") + e.what());
  }
  SweepConfig config;
  try {
    config.k_values = parse_range(doc, "k");
    config.n_values = parse_range(doc, "N");
    config.depth_values = parse_range(doc, "d");
    if (doc.contains("pairs")) {
      for (const auto& p : doc["pairs"]) {
        config.pairs.emplace_back(p.at(0).get<int>(), p.at(1).get<int>());
      }
    }
    if (doc.contains("tol")) config.synthesis.tol = doc["tol"].get<double>();
    if (doc.contains("actions")) {
      config.synthesis.optimizer.action_set = parse_action_set(doc["actions"].get<std::string>());
    }
    if (doc.contains("threads")) config.threads = doc["threads"].get<int>();
    if (doc.contains("state_limit")) {
      config.synthesis.state_limit = doc["state_limit"].get<std::size_t>();
    }
    if (doc.contains("out")) config.output_path = doc["out"].get<std::string>();
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kParse, std::string("malformed sweep config: ") + e.what());
  }

  if (config.pairs.empty()) {
    if (config.k_values.empty() || config.n_values.empty()) {
      throw Error(ErrorCode::kInvalidArgument, "sweep needs 'k' and 'N' ranges or 'pairs'");
    }
    for (int k : config.k_values) {
      for (int n : config.n_values) config.pairs.emplace_back(k, n);
    }
  }
  if (config.depth_values.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "sweep needs a 'd' range");
  }
  for (const auto& [k, n] : config.pairs) {
    const ChannelSpec spec{k, n};
    spec.validate();
    if (count_states(spec) > config.synthesis.state_limit) {
      throw Error(ErrorCode::kCapacityExhausted,
                  "sweep cell k=" + std::to_string(k) + ", N=" + std::to_string(n) +
                      " exceeds the state limit");
    }
  }
  for (int d : config.depth_values) {
    if (d < 1) throw Error(ErrorCode::kInvalidArgument, "sweep depths must be >= 1");
  }
  return config;
}

std::vector<SweepRow> sweep(const SweepConfig& config) {
  std::vector<std::pair<int, int>> pairs = config.pairs;
  std::sort(pairs.begin(), pairs.end());
  pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());
  std::vector<int> depths = config.depth_values;
  std::sort(depths.begin(), depths.end());
  depths.erase(std::unique(depths.begin(), depths.end()), depths.end());

  std::vector<SweepRow> rows;
  for (const auto& [k, n] : pairs) {
    for (int d : depths) rows.push_back(SweepRow{k, n, d, 0.0, 0.0, 0.0, {}});
  }

  auto run_cell = [&](SweepRow& row) {
    try {
      const SynthesisResult r = synthesize(ChannelSpec{row.k, row.n}, row.depth, config.synthesis);
      row.rate = r.rate;
      row.capacity = r.capacity_bound;
      row.gap = r.capacity_bound - r.rate;
    } catch (const std::exception& e) {
      row.rate = row.capacity = row.gap = std::nan("");
      row.error = e.what();
    }
  };

  unsigned workers = config.threads > 0 ? static_cast<unsigned>(config.threads)
                                        : std::max(1u, std::thread::hardware_concurrency());
  workers = std::min<unsigned>(workers, static_cast<unsigned>(rows.size()));
  std::atomic<std::size_t> next{0};
  {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < rows.size(); i = next++) run_cell(rows[i]);
      });
    }
  }
  return rows;
}

std::string sweep_csv(const std::vector<SweepRow>& rows) {
  std::ostringstream out;
  out << "k,N,d,rate,capacity,gap\n" << std::setprecision(10);
  for (const SweepRow& r : rows) {
    out << r.k << ',' << r.n << ',' << r.depth << ',';
    if (r.error.empty()) {
      out << r.rate << ',' << r.capacity << ',' << r.gap << '\n';
    } else {
      out << "nan,nan,nan\n";
    }
  }
  return out.str();
}

}  // namespace isifree
