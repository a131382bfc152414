//
// Copyright 2026 The privcut Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

#include "privcut/oracle.h"

#include <set>

#include <gtest/gtest.h>

#include "brute.h"
#include "privcut/error.h"

namespace privcut {
namespace {

// Corpus of small graphs shared by the property tests.
std::vector<Graph> Corpus(int count, int max_n, bool weighted) {
  std::vector<Graph> out;
  for (int i = 0; i < count; ++i) {
    const int n = 3 + i % (max_n - 2);
    out.push_back(brute::RandomGraph(n, 0.3 + 0.1 * (i % 6), 500 + i, weighted));
  }
  return out;
}

TEST(ExactMinStCut, PathBottleneck) {
  const Graph g = GraphFromEdges(3, {{0, 1, 3.0}, {1, 2, 1.0}});
  const CutResult r = ExactMinStCut(g, 0, 2);
  EXPECT_DOUBLE_EQ(r.cost, 1.0);
  EXPECT_EQ(r.partition.label(1), r.partition.label(0));
}

TEST(ExactMinStCut, DisconnectedTerminals) {
  const Graph g = GraphFromEdges(4, {{0, 1, 2.0}, {2, 3, 5.0}});
  EXPECT_DOUBLE_EQ(ExactMinStCut(g, 0, 3).cost, 0.0);
}

TEST(ExactMinStCut, UnitK4MatchesBruteForce) {
  const Graph g = brute::Clique(4);
  EXPECT_DOUBLE_EQ(ExactMinStCut(g, 0, 1).cost, brute::MinStCut(g, 0, 1));
  EXPECT_DOUBLE_EQ(ExactMinStCut(g, 0, 1).cost, 3.0);
}

TEST(ExactMinStCut, SourceSideIsMinimal) {
  // Both {0} and {0, 1} are minimum cuts of value 1.
  const Graph g = GraphFromEdges(3, {{0, 1, 1.0}, {1, 2, 1.0}});
  const CutResult r = ExactMinStCut(g, 0, 2);
  EXPECT_EQ(r.partition.labels(), (std::vector<int>{0, 1, 1}));
}

TEST(ExactMinStCut, MatchesBruteForceAndFlowValue) {
  for (const Graph& g : Corpus(60, 8, true)) {
    const int t = g.n() - 1;
    const CutResult r = ExactMinStCut(g, 0, t);
    EXPECT_NEAR(r.cost, brute::MinStCut(g, 0, t), 1e-9);
    EXPECT_NEAR(r.cost, MaxFlowValue(g, 0, t), 1e-9);
    EXPECT_EQ(r.cost, CutCost(g, r.partition));
  }
}

TEST(ExactMinKCut, CycleExamples) {
  EXPECT_DOUBLE_EQ(ExactMinKCut(brute::Cycle(5), 2).cost, 2.0);
  EXPECT_DOUBLE_EQ(ExactMinKCut(brute::Cycle(5), 3).cost, 3.0);
}

TEST(ExactMinKCut, SeparatedCliquesCostZero) {
  std::vector<WeightedEdge> edges;
  for (int c = 0; c < 3; ++c) {
    for (int u = 0; u < 3; ++u) {
      for (int v = u + 1; v < 3; ++v) edges.push_back({3 * c + u, 3 * c + v, 1.0});
    }
  }
  const CutResult r = ExactMinKCut(GraphFromEdges(9, edges), 3);
  EXPECT_DOUBLE_EQ(r.cost, 0.0);
  EXPECT_EQ(r.partition.NonEmptyBlocks(), 3);
}

TEST(ExactMinKCut, LexicographicTieBreak) {
  // Every 2-cut of C4 that cuts two edges ties; {0} | rest is not one of
  // them. The smallest canonical labeling with cost 2 is 0,0,0,1.
  const CutResult r = ExactMinKCut(brute::Cycle(4), 2);
  EXPECT_EQ(r.partition.labels(), (std::vector<int>{0, 0, 0, 1}));
}

TEST(ExactMinKCut, MatchesBruteForceAndStoerWagner) {
  for (const Graph& g : Corpus(60, 8, true)) {
    for (int k = 2; k <= std::min(4, g.n()); ++k) {
      const CutResult r = ExactMinKCut(g, k);
      EXPECT_NEAR(r.cost, brute::MinKCut(g, k), 1e-9);
      EXPECT_EQ(r.cost, CutCost(g, r.partition));
      EXPECT_EQ(r.partition.NonEmptyBlocks(), k);
    }
    double best_st = INFINITY;
    for (int s = 0; s < g.n(); ++s) {
      for (int t = s + 1; t < g.n(); ++t) {
        best_st = std::min(best_st, ExactMinStCut(g, s, t).cost);
      }
    }
    EXPECT_NEAR(ExactMinKCut(g, 2).cost, best_st, 1e-9);
    EXPECT_NEAR(GlobalMinCutValue(g), best_st, 1e-9);
  }
}

TEST(ExactMinKCut, CapabilityErrorBeyondLimit) {
  EXPECT_THROW(ExactMinKCut(brute::Clique(30), 4), CapabilityError);
  EXPECT_THROW(ExactMinKCut(brute::Cycle(4), 5), InvalidArgumentError);
}

TEST(StirlingSecond, KnownValues) {
  EXPECT_DOUBLE_EQ(StirlingSecond(5, 2), 15.0);
  EXPECT_DOUBLE_EQ(StirlingSecond(8, 3), 966.0);
  EXPECT_DOUBLE_EQ(StirlingSecond(4, 4), 1.0);
  EXPECT_DOUBLE_EQ(StirlingSecond(3, 4), 0.0);
}

TEST(ExactMultiwayCut, StarPicksHeaviestEdge) {
  const Graph g = GraphFromEdges(4, {{0, 1, 5.0}, {0, 2, 1.0}, {0, 3, 1.0}});
  const CutResult r = ExactMultiwayCut(g, TerminalSet::Multiway({1, 2, 3}));
  EXPECT_DOUBLE_EQ(r.cost, 2.0);
  EXPECT_EQ(r.partition.label(0), r.partition.label(1));
  EXPECT_EQ(r.partition.label(1), 0);
}

TEST(ExactMultiwayCut, TwoTerminalsIsStCut) {
  for (const Graph& g : Corpus(30, 8, true)) {
    const int t = g.n() - 1;
    EXPECT_NEAR(ExactMultiwayCut(g, TerminalSet::Multiway({0, t})).cost,
                ExactMinStCut(g, 0, t).cost, 1e-9);
  }
}

TEST(ExactMultiwayCut, DisconnectedTerminalsCostZero) {
  const Graph g = GraphFromEdges(6, {{0, 3, 1.0}, {1, 4, 1.0}, {2, 5, 1.0}});
  EXPECT_DOUBLE_EQ(ExactMultiwayCut(g, TerminalSet::Multiway({0, 1, 2})).cost,
                   0.0);
}

TEST(ExactMultiwayCut, MatchesBruteForce) {
  for (const Graph& g : Corpus(40, 8, true)) {
    const TerminalSet t = TerminalSet::Multiway({0, 1, 2});
    const CutResult r = ExactMultiwayCut(g, t);
    EXPECT_NEAR(r.cost, brute::Multiway(g, {0, 1, 2}), 1e-9);
    for (int i = 0; i < 3; ++i) EXPECT_EQ(r.partition.label(i), i);
    EXPECT_EQ(r.cost, CutCost(g, r.partition));
  }
}

TEST(ExactMulticut, OnePairIsStCut) {
  for (const Graph& g : Corpus(30, 8, true)) {
    EXPECT_NEAR(ExactMulticut(g, TerminalSet::Pairs({{0, 2}})).cost,
                ExactMinStCut(g, 0, 2).cost, 1e-9);
  }
}

TEST(ExactMulticut, MatchesBruteForce) {
  for (const Graph& g : Corpus(40, 7, true)) {
    if (g.n() < 4) continue;
    const CutResult r = ExactMulticut(g, TerminalSet::Pairs({{0, 1}, {2, 3}}));
    EXPECT_NEAR(r.cost, brute::Multicut(g, {{0, 1}, {2, 3}}), 1e-9);
    EXPECT_NE(r.partition.label(0), r.partition.label(1));
    EXPECT_NE(r.partition.label(2), r.partition.label(3));
  }
}

TEST(ExactMaxCut, Examples) {
  EXPECT_DOUBLE_EQ(ExactMaxCut(brute::Clique(3)).cost, 2.0);
  EXPECT_DOUBLE_EQ(ExactMaxCut(brute::Cycle(4)).cost, 4.0);
}

TEST(ExactMaxCut, MatchesBruteForce) {
  for (const Graph& g : Corpus(40, 9, true)) {
    const CutResult r = ExactMaxCut(g);
    EXPECT_NEAR(r.cost, brute::MaxCut(g), 1e-9);
    EXPECT_EQ(r.partition.label(0), 0);
    const int t = g.n() - 1;
    EXPECT_NEAR(ExactMaxStCut(g, 0, t).cost, brute::MaxStCut(g, 0, t), 1e-9);
  }
}

TEST(EnumerateKCutsWithin, CycleCounts) {
  const CutCatalog c5 = EnumerateKCutsWithin(brute::Cycle(5), 2, 1.0);
  EXPECT_EQ(c5.cuts.size(), 10u);
  EXPECT_TRUE(c5.complete);
  EXPECT_EQ(EnumerateKCutsWithin(brute::Cycle(8), 3, 1.0).cuts.size(), 56u);
}

TEST(EnumerateKCutsWithin, UniqueMinCut) {
  const Graph g = brute::TwoCliques(4, 1.0, 1.0);
  EXPECT_EQ(EnumerateKCutsWithin(g, 2, 1.0).cuts.size(), 1u);
}

TEST(EnumerateKCutsWithin, CatalogInvariants) {
  for (const Graph& g : Corpus(30, 8, false)) {
    std::size_t previous = 0;
    for (double alpha : {1.0, 1.5, 2.0, 3.0}) {
      const CutCatalog c = EnumerateKCutsWithin(g, 2, alpha);
      EXPECT_GE(c.cuts.size(), previous);
      previous = c.cuts.size();
      EXPECT_EQ(c.cuts.size(), brute::CountKCuts(g, 2, c.threshold));
      std::set<std::string> keys;
      for (std::size_t i = 0; i < c.cuts.size(); ++i) {
        EXPECT_EQ(c.cuts[i].cost, CutCost(g, c.cuts[i].partition));
        if (i > 0) EXPECT_LE(c.cuts[i - 1].cost, c.cuts[i].cost);
        keys.insert(c.cuts[i].partition.Key());
      }
      EXPECT_EQ(keys.size(), c.cuts.size());
    }
  }
}

TEST(ContractionEnumerate, RecoversCycleCatalog) {
  const Graph g = brute::Cycle(5);
  const CutCatalog full = EnumerateKCutsWithin(g, 2, 1.0);
  std::set<std::string> expected;
  for (const auto& c : full.cuts) expected.insert(c.partition.Key());
  int complete_runs = 0;
  for (int seed = 0; seed < 100; ++seed) {
    RandomSource rng(seed);
    const CutCatalog c = ContractionEnumerateKCuts(g, 2, 1.0, rng);
    EXPECT_FALSE(c.complete);
    std::set<std::string> found;
    for (const auto& cut : c.cuts) found.insert(cut.partition.Key());
    for (const auto& key : found) EXPECT_TRUE(expected.count(key)) << key;
    complete_runs += found == expected;
  }
  EXPECT_GE(complete_runs, 99);
}

TEST(ContractionEnumerate, SubsetOfBruteForceOnCorpus) {
  int equal = 0, total = 0;
  for (const Graph& g : Corpus(20, 7, false)) {
    const CutCatalog full = EnumerateKCutsWithin(g, 2, 1.5);
    std::set<std::string> expected;
    for (const auto& c : full.cuts) expected.insert(c.partition.Key());
    RandomSource rng(total);
    const CutCatalog c = ContractionEnumerateKCuts(g, 2, 1.5, rng);
    std::set<std::string> found;
    for (const auto& cut : c.cuts) {
      EXPECT_TRUE(expected.count(cut.partition.Key()));
      found.insert(cut.partition.Key());
    }
    equal += found == expected;
    ++total;
  }
  EXPECT_GE(equal, total - 1);
}

TEST(ContractionEnumerate, AllSingletonsWhenKEqualsN) {
  RandomSource rng(3);
  const CutCatalog c = ContractionEnumerateKCuts(brute::Cycle(4), 4, 1.0, rng);
  ASSERT_EQ(c.cuts.size(), 1u);
  EXPECT_EQ(c.cuts[0].partition.labels(), (std::vector<int>{0, 1, 2, 3}));
}

TEST(ContractionEnumerate, AlphaBelowOneThrows) {
  RandomSource rng(3);
  EXPECT_THROW(ContractionEnumerateKCuts(brute::Cycle(4), 2, 0.5, rng),
               InvalidArgumentError);
}

}  // namespace
}  // namespace privcut
