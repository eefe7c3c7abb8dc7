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
#include <set>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "isifree/error.hpp"
#include "isifree/graph.hpp"

namespace isifree {
namespace {

SymbolString syms(const char* text) { return parse_symbols(text); }

// Naive definition: no molecule appears twice within any k+1 consecutive slots.
bool naive_isi_free(const SymbolString& s, int k) {
  for (std::size_t i = 0; i < s.size(); ++i) {
    for (std::size_t j = i + 1; j < s.size() && j <= i + static_cast<std::size_t>(k); ++j) {
      if (!s[i].is_gap() && s[i] == s[j]) return false;
    }
  }
  return true;
}

void all_strings(int num_types, std::size_t len, SymbolString& cur,
                 std::vector<SymbolString>& out) {
  if (cur.size() == len) {
    out.push_back(cur);
    return;
  }
  for (int t = 0; t <= num_types; ++t) {
    cur.push_back(Symbol::molecule(t));
    all_strings(num_types, len, cur, out);
    cur.pop_back();
  }
}

TEST(SymbolText, RoundTrip) {
  EXPECT_EQ(to_string(Symbol::gap()), "-");
  EXPECT_EQ(to_string(Symbol::molecule(12)), "M12");
  EXPECT_EQ(format_symbols(syms("M1 - M2")), "M1 - M2");
  EXPECT_EQ(format_symbols(syms("M1,-,M2")), "M1 - M2");
  EXPECT_EQ(format_state(State{syms("M1 -")}), "M1,-");
  EXPECT_THROW(parse_symbol("M3", 2), Error);
  EXPECT_THROW(parse_symbol("X"), Error);
  EXPECT_THROW(parse_symbol("M0"), Error);
}

TEST(IsiFree, Examples) {
  EXPECT_TRUE(is_isi_free(syms("M1 - M2 M1"), 2));
  EXPECT_FALSE(is_isi_free(syms("M1 - M1 M2"), 2));
  EXPECT_TRUE(is_isi_free(syms("- - - -"), 3));
  EXPECT_TRUE(is_isi_free(syms("M1 - - M1"), 2));
  EXPECT_FALSE(is_isi_free(syms("M1 M1"), 1));
}

TEST(IsiFree, MatchesNaiveDefinition) {
  for (int k = 1; k <= 3; ++k) {
    for (int n = 1; n <= 3; ++n) {
      std::vector<SymbolString> strings;
      SymbolString cur;
      all_strings(n, 5, cur, strings);
      for (const auto& s : strings) {
        ASSERT_EQ(is_isi_free(s, k), naive_isi_free(s, k)) << format_symbols(s) << " k=" << k;
      }
    }
  }
}

TEST(States, Enumeration) {
  auto names = [](const ChannelSpec& spec) {
    std::vector<std::string> out;
    for (const auto& s : enumerate_states(spec)) out.push_back(format_state(s));
    return out;
  };
  EXPECT_EQ(names({1, 2}), (std::vector<std::string>{"-", "M1", "M2"}));
  EXPECT_EQ(names({1, 1}), (std::vector<std::string>{"-", "M1"}));
  const auto k2 = names({2, 2});
  ASSERT_EQ(k2.size(), 7u);
  const std::set<std::string> expected{"-,-", "-,M1", "-,M2", "M1,-", "M2,-", "M1,M2", "M2,M1"};
  EXPECT_EQ(std::set<std::string>(k2.begin(), k2.end()), expected);
  EXPECT_EQ(k2.front(), "-,-");
  const auto k2n3 = enumerate_states({2, 3});
  EXPECT_TRUE(std::is_sorted(k2n3.begin(), k2n3.end()));
}

TEST(States, CountMatchesEnumerationAndLimit) {
  for (int k = 1; k <= 3; ++k) {
    for (int n = 1; n <= 4; ++n) {
      EXPECT_EQ(count_states({k, n}), enumerate_states({k, n}).size());
    }
  }
  EXPECT_THROW(enumerate_states({3, 4}, 10), Error);
  try {
    enumerate_states({3, 4}, 10);
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kCapacityExhausted);
  }
}

TEST(States, InvalidSpec) {
  EXPECT_THROW(ChannelSpec({0, 2}).validate(), Error);
  EXPECT_THROW(ChannelSpec({1, 0}).validate(), Error);
  EXPECT_THROW(ConstraintGraph::build({-1, 2}), Error);
}

TEST(ConstraintGraph, EdgesK1N2) {
  const auto g = ConstraintGraph::build({1, 2});
  ASSERT_EQ(g.size(), 3u);
  EXPECT_EQ(g.edge_count(), 7u);
  const std::size_t m1 = g.index_of_or_throw(parse_state("M1", g.spec()));
  for (const auto& e : g.out_edges(m1)) EXPECT_NE(e.to, m1);
  EXPECT_FALSE(g.index_of(State{syms("M3")}).has_value());
}

TEST(ConstraintGraph, EdgeRule) {
  for (int k = 1; k <= 3; ++k) {
    for (int n = 1; n <= 3; ++n) {
      const auto g = ConstraintGraph::build({k, n});
      for (std::size_t u = 0; u < g.size(); ++u) {
        std::set<std::size_t> seen;
        for (const auto& e : g.out_edges(u)) {
          EXPECT_EQ(e.from, u);
          SymbolString cat = g.state(u).window;
          cat.push_back(e.label);
          EXPECT_TRUE(is_isi_free(cat, k));
          EXPECT_EQ(SymbolString(cat.begin() + 1, cat.end()), g.state(e.to).window);
          seen.insert(e.label.index);
        }
        for (int t = 0; t <= n; ++t) {
          if (seen.count(static_cast<std::uint16_t>(t))) continue;
          SymbolString cat = g.state(u).window;
          cat.push_back(Symbol::molecule(t));
          EXPECT_FALSE(is_isi_free(cat, k));
        }
      }
    }
  }
}

// Walks of length m from the all-gap state correspond one-to-one with
// ISI-free strings of length m.
TEST(ConstraintGraph, WalkBijection) {
  for (int k = 1; k <= 2; ++k) {
    for (int n = 1; n <= 3; ++n) {
      const auto g = ConstraintGraph::build({k, n});
      std::set<SymbolString> frontier{{}};
      std::vector<std::pair<std::size_t, SymbolString>> walks{{g.all_gap(), {}}};
      for (int m = 1; m <= 6; ++m) {
        std::vector<std::pair<std::size_t, SymbolString>> next;
        for (const auto& [s, label] : walks) {
          for (const auto& e : g.out_edges(s)) {
            SymbolString l = label;
            l.push_back(e.label);
            next.emplace_back(e.to, std::move(l));
          }
        }
        walks = std::move(next);
        std::set<SymbolString> labels;
        for (const auto& w : walks) labels.insert(w.second);
        EXPECT_EQ(labels.size(), walks.size());
        std::vector<SymbolString> all;
        SymbolString cur;
        all_strings(n, static_cast<std::size_t>(m), cur, all);
        std::size_t valid = 0;
        for (const auto& s : all) {
          if (naive_isi_free(s, k)) {
            ++valid;
            EXPECT_TRUE(labels.count(s));
          }
        }
        EXPECT_EQ(valid, walks.size()) << "k=" << k << " N=" << n << " m=" << m;
      }
    }
  }
}

std::set<std::string> tree_labels(const ContinuationTree& t) {
  std::set<std::string> out;
  for (const auto& n : t.nodes()) out.insert(format_symbols(n.label));
  return out;
}

TEST(ContinuationTree, SevenNodesFromM1) {
  const auto g = ConstraintGraph::build({1, 2});
  const ContinuationTree t(g, g.index_of_or_throw(parse_state("M1", g.spec())), 2);
  EXPECT_EQ(t.size(), 7u);
  EXPECT_EQ(tree_labels(t), (std::set<std::string>{"-", "M2", "- -", "- M1", "- M2", "M2 -",
                                                   "M2 M1"}));
  EXPECT_EQ(t.roots().size(), 2u);
  EXPECT_EQ(t.full_depth_nodes().size(), 5u);
  for (const auto& n : t.nodes()) {
    if (n.parent >= 0) {
      const auto& p = t.node(n.parent);
      EXPECT_EQ(SymbolString(n.label.begin(), n.label.end() - 1), p.label);
    }
    EXPECT_EQ(g.state(n.dest).window, SymbolString(n.label.end() - 1, n.label.end()));
  }
}

TEST(ContinuationTree, SmallCases) {
  const auto g = ConstraintGraph::build({1, 2});
  const ContinuationTree t(g, g.index_of_or_throw(parse_state("M1", g.spec())), 1);
  EXPECT_EQ(tree_labels(t), (std::set<std::string>{"-", "M2"}));

  const auto g2 = ConstraintGraph::build({2, 2});
  const ContinuationTree t2(g2, g2.index_of_or_throw(parse_state("M1,M2", g2.spec())), 1);
  EXPECT_EQ(tree_labels(t2), (std::set<std::string>{"-"}));

  EXPECT_THROW(ContinuationTree(g, 0, 0), Error);
  EXPECT_THROW(ContinuationTree(g, 0, 8, 100), Error);
}

}  // namespace
}  // namespace isifree
