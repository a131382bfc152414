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

#include "privcut/kcut.h"

#include <cmath>
#include <map>
#include <numeric>

#include <gtest/gtest.h>

#include "brute.h"
#include "privcut/error.h"
#include "privcut/instances.h"

namespace privcut {
namespace {

using Distribution = std::map<std::vector<int>, double>;

std::vector<int> Canonical(const std::vector<int>& labels) {
  std::map<int, int> relabel;
  std::vector<int> out(labels.size());
  for (std::size_t i = 0; i < labels.size(); ++i) {
    auto it = relabel.emplace(labels[i], static_cast<int>(relabel.size())).first;
    out[i] = it->second;
  }
  return out;
}

Graph AddUnitPairs(const Graph& g, int count) {
  Graph out = g;
  int seen = 0;
  for (int u = 0; u < g.n() && seen < count; ++u) {
    for (int v = u + 1; v < g.n() && seen < count; ++v, ++seen) {
      out = ApplyDelta(out, EdgeDelta{{u, v}, 1.0});
    }
  }
  return out;
}

// Two-step output law by direct enumeration: index i with weight
// exp(-eps |OPT_k(G + H_i) - anchor|), then a k-cut of G + H_i with weight
// exp(-eps cost) among cuts of cost <= threshold_factor * OPT_k(G + H_i).
Distribution ReferenceOutputLaw(const Graph& g, int k, double epsilon,
                                double anchor, double threshold_factor) {
  const int steps = g.n() * (g.n() - 1) / 2;
  std::vector<double> optima, index_weight;
  for (int i = 0; i <= steps; ++i) {
    optima.push_back(brute::MinKCut(AddUnitPairs(g, i), k));
  }
  const double best_score = [&] {
    double b = std::numeric_limits<double>::infinity();
    for (double o : optima) b = std::min(b, std::abs(o - anchor));
    return b;
  }();
  double index_total = 0.0;
  for (double o : optima) {
    index_weight.push_back(std::exp(-epsilon * (std::abs(o - anchor) - best_score)));
    index_total += index_weight.back();
  }
  Distribution law;
  for (int i = 0; i <= steps; ++i) {
    const Graph h = AddUnitPairs(g, i);
    const double limit = std::isinf(threshold_factor)
                             ? threshold_factor
                             : threshold_factor * optima[i] + 1e-9;
    Distribution cuts;
    double total = 0.0;
    brute::ForEachLabeling(g.n(), k, [&](const std::vector<int>& l) {
      if (brute::DistinctLabels(l) != k) return;
      const double c = brute::Cost(h, l);
      if (c > limit) return;
      const std::vector<int> key = Canonical(l);
      if (cuts.count(key)) return;
      cuts[key] = std::exp(-epsilon * (c - optima[i]));
      total += cuts[key];
    });
    for (const auto& [key, w] : cuts) {
      law[key] += index_weight[i] / index_total * w / total;
    }
  }
  return law;
}

double TotalVariation(const Distribution& a, const Distribution& b) {
  std::map<std::vector<int>, std::pair<double, double>> both;
  for (const auto& [key, p] : a) both[key].first = p;
  for (const auto& [key, p] : b) both[key].second = p;
  double tv = 0.0;
  for (const auto& [key, pq] : both) tv += std::abs(pq.first - pq.second);
  return tv / 2.0;
}

TEST(AugmentationChain, LexicographicOverAllPairs) {
  const AugmentationChain chain = DefaultChain(5);
  ASSERT_EQ(chain.steps(), 10);
  EXPECT_EQ(chain.order.front(), (VertexPair{0, 1}));
  EXPECT_EQ(chain.order[4], (VertexPair{1, 2}));
  EXPECT_EQ(chain.order.back(), (VertexPair{3, 4}));
}

TEST(AugmentationChain, AugmentedGraphStacksUnitWeights) {
  const Graph g = brute::RandomGraph(6, 0.5, 1, true);
  const AugmentationChain chain = DefaultChain(6);
  EXPECT_EQ(AugmentedGraph(g, chain, 0).weights(), g.weights());
  for (int i = 0; i <= chain.steps(); ++i) {
    const Graph h = AugmentedGraph(g, chain, i);
    EXPECT_NEAR(h.total_weight() - g.total_weight(), i, 1e-9);
  }
  const Graph full = AugmentedGraph(g, chain, chain.steps());
  for (int u = 0; u < 6; ++u) {
    for (int v = u + 1; v < 6; ++v) {
      EXPECT_DOUBLE_EQ(full.weight(u, v), g.weight(u, v) + 1.0);
    }
  }
  EXPECT_THROW(AugmentedGraph(g, chain, chain.steps() + 1),
               InvalidArgumentError);
  EXPECT_THROW(AugmentedGraph(g, DefaultChain(5), 0), InvalidArgumentError);
}

TEST(AugmentationChain, OptimaRiseByAtMostOnePerStep) {
  for (int seed = 0; seed < 10; ++seed) {
    const Graph g = brute::RandomGraph(7, 0.4, seed);
    for (int k : {2, 3}) {
      const std::vector<double> optima = ChainOptima(g, k, DefaultChain(7));
      ASSERT_EQ(optima.size(), 22u);
      for (std::size_t i = 0; i < optima.size(); ++i) {
        EXPECT_NEAR(optima[i], brute::MinKCut(AddUnitPairs(g, i), k), 1e-9);
        if (i > 0) {
          EXPECT_GE(optima[i], optima[i - 1] - 1e-12);
          EXPECT_LE(optima[i], optima[i - 1] + 1.0 + 1e-12);
        }
      }
    }
  }
}

TEST(AugmentationChain, IndexProbabilitiesFollowDistanceToAnchor) {
  const std::vector<double> optima = {0, 1, 2, 3, 4, 5};
  const std::vector<double> p = AugmentationProbabilities(optima, 2.5, 1.0);
  double total = 0.0;
  for (double o : optima) total += std::exp(-std::abs(o - 2.5));
  for (std::size_t i = 0; i < optima.size(); ++i) {
    EXPECT_NEAR(p[i], std::exp(-std::abs(optima[i] - 2.5)) / total, 1e-15);
  }
}

TEST(AugmentationChain, ChooseAugmentationIsSeeded) {
  const Graph g = brute::RandomGraph(6, 0.5, 4);
  RandomSource a(9), b(9);
  const double anchor = KCutBoundProfile::Chekuri(2).Anchor(6, 1.0);
  EXPECT_EQ(ChooseAugmentation(g, 2, DefaultChain(6), anchor, 1.0, a),
            ChooseAugmentation(g, 2, DefaultChain(6), anchor, 1.0, b));
}

TEST(AugmentationChain, StackingIndexAndUnitWeights) {
  const Graph empty(5);
  EXPECT_EQ(FirstStackedIndex(empty, DefaultChain(5)), 10);
  EXPECT_TRUE(HasUnitWeights(empty));
  const Graph g = GraphFromEdges(5, {{1, 2, 1.0}, {3, 4, 1.0}});
  EXPECT_EQ(FirstStackedIndex(g, DefaultChain(5)), 4);
  EXPECT_TRUE(HasUnitWeights(g));
  EXPECT_FALSE(HasUnitWeights(AugmentedGraph(g, DefaultChain(5), 5)));
  EXPECT_TRUE(HasUnitWeights(AugmentedGraph(g, DefaultChain(5), 4)));
  EXPECT_FALSE(HasUnitWeights(GraphFromEdges(3, {{0, 1, 0.5}})));
}

TEST(KCutBoundProfile, ChekuriValues) {
  const KCutBoundProfile p = KCutBoundProfile::Chekuri(3);
  EXPECT_DOUBLE_EQ(p.f, 4.0);
  EXPECT_NEAR(p.LogCount(10), 4.0 * std::log(10.0), 1e-12);
  EXPECT_NEAR(p.Target(10, 2.0), 4.0 * std::log(10.0), 1e-12);
  EXPECT_NEAR(p.Anchor(10, 1.0), 16.0 * std::log(10.0), 1e-12);
  const KCutBoundProfile q{1.0, 3.0, 2.0};
  EXPECT_NEAR(q.LogCount(5), std::log(5.0) + 2.0 * std::log(3.0), 1e-12);
}

TEST(KCutExponentialMechanism, OutputLawMatchesEnumeration) {
  for (int seed = 0; seed < 4; ++seed) {
    const Graph g = brute::RandomGraph(5, 0.6, 10 + seed);
    for (int k : {2, 3}) {
      KCutExponentialMechanism m(g, k, 1.0);
      const Distribution law = m.OutputDistribution();
      const Distribution reference =
          ReferenceOutputLaw(g, k, 1.0, m.anchor(),
                             std::numeric_limits<double>::infinity());
      ASSERT_EQ(law.size(), reference.size());
      for (const auto& [key, p] : reference) {
        ASSERT_TRUE(law.count(key));
        EXPECT_NEAR(law.at(key), p, 1e-12);
      }
    }
  }
}

TEST(KCutExponentialMechanism, RestrictedLawMatchesEnumeration) {
  const Graph g = brute::RandomGraph(6, 0.5, 3);
  KCutMechanismOptions options;
  options.support = KCutSupport::kRestricted;
  KCutExponentialMechanism m(g, 2, 1.0, options);
  EXPECT_DOUBLE_EQ(m.alpha(), 3.0);
  const Distribution law = m.OutputDistribution();
  const Distribution reference = ReferenceOutputLaw(g, 2, 1.0, m.anchor(), 3.0);
  ASSERT_EQ(law.size(), reference.size());
  for (const auto& [key, p] : reference) EXPECT_NEAR(law.at(key), p, 1e-12);
}

TEST(KCutExponentialMechanism, SamplesFollowExactLaw) {
  const Graph g = brute::RandomGraph(5, 0.7, 21);
  KCutExponentialMechanism m(g, 2, 1.0);
  const Distribution law = m.OutputDistribution();
  const int draws = 40000;
  std::map<std::vector<int>, int> counts;
  RandomSource rng(5);
  for (int i = 0; i < draws; ++i) ++counts[m.Sample(rng).labels()];
  for (const auto& [key, p] : law) {
    const double sd = std::sqrt(p * (1 - p) / draws);
    EXPECT_NEAR(static_cast<double>(counts[key]) / draws, p, 5 * sd + 1e-4);
  }
}

TEST(KCutExponentialMechanism, NeighborRatioWithinTwiceEpsilon) {
  for (int seed = 0; seed < 6; ++seed) {
    const Graph g = brute::RandomGraph(5, 0.5, 30 + seed);
    const double epsilon = 0.7;
    for (int u = 0; u < 5; ++u) {
      for (int v = u + 1; v < 5; ++v) {
        const Graph h = ApplyDelta(g, EdgeDelta{{u, v}, 1.0});
        KCutExponentialMechanism a(g, 2, epsilon), b(h, 2, epsilon);
        const Distribution p = a.OutputDistribution();
        const Distribution q = b.OutputDistribution();
        for (const auto& [key, pk] : p) {
          const double ratio = std::abs(std::log(pk / q.at(key)));
          EXPECT_LE(ratio, 2 * epsilon + 1e-9);
        }
      }
    }
  }
}

TEST(KCutExponentialMechanism, LedgerComposesToTwiceEpsilon) {
  const Graph g = brute::Cycle(5);
  KCutExponentialMechanism pure(g, 2, 0.5);
  const PrivacyBudget b = Compose(pure.Ledger());
  EXPECT_DOUBLE_EQ(b.epsilon, 1.0);
  EXPECT_DOUBLE_EQ(b.delta, 0.0);
  KCutMechanismOptions options;
  options.support = KCutSupport::kRestricted;
  KCutExponentialMechanism restricted(g, 2, 0.5, options);
  EXPECT_DOUBLE_EQ(Compose(restricted.Ledger()).delta, 1.0 / 25.0);
}

TEST(KCutExponentialMechanism, RestrictedCloseToPure) {
  const int n = 7;
  for (int seed = 0; seed < 3; ++seed) {
    const Graph g = brute::RandomGraph(n, 0.5, 50 + seed);
    KCutExponentialMechanism pure(g, 2, 1.0);
    KCutMechanismOptions options;
    options.support = KCutSupport::kRestricted;
    KCutExponentialMechanism restricted(g, 2, 1.0, options);
    EXPECT_LE(TotalVariation(pure.OutputDistribution(),
                             restricted.OutputDistribution()),
              0.02 + 1.0 / (n * n));
  }
}

TEST(KCutExponentialMechanism, ContractionCatalogSamplesValidCuts) {
  const Graph g = brute::RandomGraph(8, 0.5, 8);
  KCutMechanismOptions options;
  options.support = KCutSupport::kRestricted;
  options.catalog = CatalogSource::kContraction;
  options.alpha = 1.5;
  options.contraction.repetitions = 400;
  KCutExponentialMechanism m(g, 3, 1.0, options);
  RandomSource rng(2);
  for (int i = 0; i < 20; ++i) {
    const Partition p = m.Sample(rng);
    EXPECT_EQ(brute::DistinctLabels(p.labels()), 3);
  }
  EXPECT_THROW(m.CutDistribution(0), CapabilityError);
}

TEST(KCutExponentialMechanism, UtilityAtModerateSize) {
  const int n = 10, k = 3;
  const double epsilon = 1.0;
  const double slack = 8.0 * k * std::log(n) / epsilon + 4.0 * std::log(n) / epsilon;
  int within = 0;
  for (int trial = 0; trial < 20; ++trial) {
    const Graph g = brute::RandomGraph(n, 0.5, 100 + trial);
    const double opt = ExactMinKCut(g, k).cost;
    RandomSource rng(trial);
    within += CutCost(g, PrivateKCutExponential(g, k, epsilon, rng)) <= opt + slack;
  }
  EXPECT_GE(within, 18);
}

TEST(KCutExponentialMechanism, Errors) {
  const Graph g = brute::Cycle(5);
  EXPECT_THROW(KCutExponentialMechanism(g, 1, 1.0), InvalidArgumentError);
  EXPECT_THROW(KCutExponentialMechanism(g, 6, 1.0), InvalidArgumentError);
  EXPECT_THROW(KCutExponentialMechanism(g, 2, 0.0), InvalidArgumentError);
  EXPECT_THROW(KCutExponentialMechanism(brute::Clique(30), 4, 1.0),
               CapabilityError);
  KCutMechanismOptions options;
  options.support = KCutSupport::kRestricted;
  options.alpha = 0.5;
  EXPECT_THROW(KCutExponentialMechanism(g, 2, 1.0, options),
               InvalidArgumentError);
  KCutExponentialMechanism m(g, 2, 1.0);
  RandomSource rng(1);
  EXPECT_THROW(m.SampleCut(-1, rng), InvalidArgumentError);
}

TEST(PrivateMinCut, HeavyBridgeIsFound) {
  // Bridge weight 20 sits above the anchor 16 ln 10 / 2 = 18.4.
  const Graph g = brute::TwoCliques(5, 30.0, 20.0);
  const std::vector<int> bridge = {0, 0, 0, 0, 0, 1, 1, 1, 1, 1};
  KCutExponentialMechanism m(g, 2, 1.0, PrivateMinCutOptions(1e-3));
  EXPECT_GE(m.OutputDistribution()[bridge], 0.9);
  int hits = 0;
  for (int trial = 0; trial < 100; ++trial) {
    RandomSource rng(trial);
    hits += PrivateMinCut(g, 2.0, 1e-3, rng).labels() == bridge;
  }
  EXPECT_GE(hits, 90);
}

TEST(PrivateMinCut, ZeroCutUnderVanishingNoise) {
  Graph g = brute::Clique(8);
  for (int u = 0; u < 4; ++u) {
    for (int v = 4; v < 8; ++v) g = ApplyDelta(g, EdgeDelta{{u, v}, -1.0});
  }
  int hits = 0;
  for (int trial = 0; trial < 100; ++trial) {
    RandomSource rng(trial);
    hits += CutCost(g, PrivateMinCut(g, 1e6, 1e-3, rng)) == 0.0;
  }
  EXPECT_GE(hits, 99);
}

TEST(PrivateMinCut, UnitBridgeBelowAnchorIsRarelyChosen) {
  // Augmentation lifts the optimum toward the anchor, after which singleton
  // cuts dominate the bridge.
  const Graph g = brute::TwoCliques(4, 1.0, 1.0);
  const std::vector<int> bridge = {0, 0, 0, 0, 1, 1, 1, 1};
  KCutExponentialMechanism m(g, 2, 1.0, PrivateMinCutOptions(1e-3));
  const double p = m.OutputDistribution()[bridge];
  const Distribution reference = ReferenceOutputLaw(g, 2, 1.0, m.anchor(), 3.0);
  EXPECT_NEAR(p, reference.at(bridge), 1e-12);
  EXPECT_LT(p, 1e-3);
}

TEST(PrivateMinCut, ZeroCutIsRareAtModerateEpsilon) {
  // Disconnected input at epsilon = 2: the augmentation reconnects the halves
  // before the anchor is reached.
  Graph g = brute::Clique(8);
  for (int u = 0; u < 4; ++u) {
    for (int v = 4; v < 8; ++v) g = ApplyDelta(g, EdgeDelta{{u, v}, -1.0});
  }
  KCutExponentialMechanism m(g, 2, 1.0, PrivateMinCutOptions(1e-3));
  const Distribution reference = ReferenceOutputLaw(g, 2, 1.0, m.anchor(), 3.0);
  const std::vector<int> halves = {0, 0, 0, 0, 1, 1, 1, 1};
  const double p = m.OutputDistribution()[halves];
  EXPECT_NEAR(p, reference.count(halves) ? reference.at(halves) : 0.0, 1e-12);
  EXPECT_LT(p, 1e-2);
}

TEST(PrivateMinCut, TwoVerticesHaveOneCut) {
  const Graph g = GraphFromEdges(2, {{0, 1, 4.0}});
  RandomSource rng(1);
  EXPECT_EQ(PrivateMinCut(g, 1.0, 1e-3, rng).labels(), (std::vector<int>{0, 1}));
  EXPECT_THROW(PrivateMinCut(Graph(1), 1.0, 1e-3, rng), InvalidArgumentError);
  EXPECT_THROW(PrivateMinCut(g, 1.0, 1.5, rng), InvalidArgumentError);
}

TEST(PrivateMinCut, OptionsUseAlphaThree) {
  const KCutMechanismOptions o = PrivateMinCutOptions(1e-4);
  EXPECT_EQ(o.support, KCutSupport::kRestricted);
  EXPECT_DOUBLE_EQ(o.alpha, 3.0);
  EXPECT_DOUBLE_EQ(o.delta, 1e-4);
}

TEST(Split, BudgetAndLedgerClosedForm) {
  for (int k : {2, 3, 5, 8}) {
    for (double epsilon : {0.5, 1.0, 4.0}) {
      for (double delta : {1e-6, 1e-3, 0.1}) {
        const SplitBudget b = SplitBudget::For(k, epsilon, delta);
        const double e0 = epsilon / (6.0 * std::sqrt(k * std::log(2.0 / delta)));
        EXPECT_NEAR(b.epsilon0, e0, 1e-15);
        EXPECT_NEAR(b.delta0, delta / (2.0 * k), 1e-18);
        const PrivacyBudget total = Compose(SplitLedger(k, epsilon, delta));
        const double step = 3.0 * e0;
        const double closed =
            std::sqrt(2.0 * (k - 1) * std::log(2.0 / delta)) * step +
            (k - 1) * step * (std::exp(step) - 1.0);
        EXPECT_NEAR(total.epsilon, closed, 1e-12);
        EXPECT_NEAR(total.delta, (k - 1) * delta / (2.0 * k) + delta / 2.0,
                    1e-15);
        EXPECT_LE(total.delta, delta);
      }
    }
  }
  EXPECT_THROW(SplitBudget::For(3, 1.0, 0.0), InvalidArgumentError);
  EXPECT_THROW(SplitBudget::For(3, 0.0, 0.1), InvalidArgumentError);
}

TEST(Split, NoiselessWithinTwiceOptimum) {
  for (int seed = 0; seed < 40; ++seed) {
    const int n = 5 + seed % 4;
    const int k = 2 + seed % 3;
    const Graph g = brute::RandomGraph(n, 0.5, 300 + seed, seed % 2 == 1);
    RandomSource rng(seed);
    SplitOptions options;
    options.noiseless = true;
    const Partition p = PrivateSplitKCut(g, k, 1.0, 1e-6, rng, options);
    EXPECT_EQ(brute::DistinctLabels(p.labels()), k);
    EXPECT_LE(CutCost(g, p), 2.0 * brute::MinKCut(g, k) + 1e-9) << seed;
  }
}

TEST(Split, PathOfCliquesCutsBridges) {
  const PathOfCliques base = GenPathOfCliques(3, 4, 2);
  RandomSource rng(0);
  SplitOptions options;
  options.noiseless = true;
  const Partition p = PrivateSplitKCut(base.graph, 3, 1.0, 1e-6, rng, options);
  EXPECT_DOUBLE_EQ(CutCost(base.graph, p), 4.0);
  EXPECT_GE(brute::MinKCut(base.graph, 3), 2.0);
}

TEST(Split, TraceRecordsPieces) {
  const Graph g = GraphFromEdges(4, {{0, 1, 1.0}, {0, 2, 1.0}, {0, 3, 5.0}});
  RandomSource rng(0);
  SplitOptions options;
  options.noiseless = true;
  SplitTrace trace;
  const Partition p = PrivateSplitKCut(g, 3, 1.0, 1e-6, rng, options, &trace);
  ASSERT_EQ(trace.iterations.size(), 2u);
  // The first split isolates a leaf; that singleton is never chosen again.
  EXPECT_EQ(trace.iterations[0].split_off.size(), 1u);
  EXPECT_TRUE(std::isinf(trace.iterations[1].piece_optima[1]));
  EXPECT_EQ(trace.iterations[1].chosen, 0);
  EXPECT_DOUBLE_EQ(CutCost(g, p), 2.0);
  const nlohmann::json j = trace.ToJson();
  EXPECT_TRUE(j["iterations"][1]["piece_optima"][1].is_null());
  EXPECT_DOUBLE_EQ(j["epsilon0"].get<double>(), trace.budget.epsilon0);
}

TEST(Split, PrivateRunsPartitionVertices) {
  for (int seed = 0; seed < 5; ++seed) {
    const int n = 12, k = 3;
    const Graph g = brute::RandomGraph(n, 0.5, 400 + seed);
    RandomSource rng(seed);
    SplitTrace trace;
    const Partition p = PrivateSplitKCut(g, k, 1.0, 1e-6, rng, {}, &trace);
    EXPECT_EQ(brute::DistinctLabels(p.labels()), k);
    EXPECT_EQ(trace.iterations.size(), 2u);
    const double slack = 156.0 * std::pow(k, 1.5) * std::log(n) *
                         std::sqrt(std::log(2.0 / 1e-6));
    EXPECT_LE(CutCost(g, p), 2.0 * ExactMinKCut(g, k).cost + slack);
  }
}

TEST(CutCounts, CyclesAndBridges) {
  const CutCountReport c5 = VerifyCutCountBound(brute::Cycle(5), 2, 1.0);
  EXPECT_EQ(c5.count, 10u);
  EXPECT_TRUE(c5.within);
  const CutCountReport c8 = VerifyCutCountBound(brute::Cycle(8), 3, 1.0);
  EXPECT_EQ(c8.count, 56u);
  EXPECT_DOUBLE_EQ(c8.bound, std::pow(8.0, 4.0));
  EXPECT_EQ(VerifyCutCountBound(brute::TwoCliques(4, 1.0, 1.0), 2, 1.0).count, 1u);
}

TEST(CutCounts, WithinBoundOnRandomGraphs) {
  for (int seed = 0; seed < 20; ++seed) {
    const Graph g = brute::RandomGraph(7, 0.6, 500 + seed, true, 0.5, 2.0);
    for (int k : {2, 3}) {
      for (double alpha : {1.0, 1.5}) {
        const CutCountReport r = VerifyCutCountBound(g, k, alpha);
        const double opt = brute::MinKCut(g, k);
        EXPECT_EQ(r.count, brute::CountKCuts(g, k, alpha * opt));
        EXPECT_TRUE(r.within);
      }
    }
  }
}

TEST(SaranVazirani, IsolatingWeightsSumToTwiceOptimum) {
  for (int seed = 0; seed < 20; ++seed) {
    const Graph g = brute::RandomGraph(7, 0.5, 600 + seed, seed % 2 == 0);
    for (int k : {2, 3, 4}) {
      const std::vector<double> a = IsolatingCutWeights(g, k);
      ASSERT_EQ(a.size(), static_cast<std::size_t>(k));
      EXPECT_TRUE(std::is_sorted(a.begin(), a.end()));
      EXPECT_NEAR(std::accumulate(a.begin(), a.end(), 0.0),
                  2.0 * brute::MinKCut(g, k), 1e-9);
    }
  }
}

TEST(SaranVazirani, SequenceDominatedByIsolatingCuts) {
  for (int seed = 0; seed < 30; ++seed) {
    const Graph g = brute::RandomGraph(7, 0.45, 700 + seed, seed % 2 == 0);
    for (int k : {2, 3, 4}) {
      const std::vector<double> b = SaranVaziraniSequence(g, k);
      ASSERT_EQ(b.size(), static_cast<std::size_t>(k - 1));
      EXPECT_TRUE(std::is_sorted(b.begin(), b.end()));
      const std::vector<double> a = IsolatingCutWeights(g, k);
      EXPECT_LE(std::accumulate(b.begin(), b.end(), 0.0),
                std::accumulate(a.begin(), a.end() - 1, 0.0) + 1e-9)
          << "seed " << seed << " k " << k;
    }
  }
}

TEST(SaranVazirani, NoiselessSplitStepsStayBelowSequence) {
  for (int seed = 0; seed < 40; ++seed) {
    const int n = 6 + seed % 4;
    const int k = 2 + seed % 3;
    const Graph g = brute::RandomGraph(n, 0.5, 800 + seed, seed % 2 == 0);
    const std::vector<double> b = SaranVaziraniSequence(g, k);
    RandomSource rng(seed);
    SplitOptions options;
    options.noiseless = true;
    SplitTrace trace;
    PrivateSplitKCut(g, k, 1.0, 1e-6, rng, options, &trace);
    for (int i = 0; i + 1 < k; ++i) {
      EXPECT_LE(trace.iterations[i].removed_weight, b[i] + 1e-9)
          << "seed " << seed << " step " << i;
    }
  }
}

TEST(SaranVazirani, DisconnectedGraphsStartWithZeros) {
  const PathOfCliques base = GenPathOfCliques(3, 3, 1);
  const Graph g = GenRemovedBridges(base, {0});
  const std::vector<double> b = SaranVaziraniSequence(g, 3);
  EXPECT_EQ(b, (std::vector<double>{0.0, 1.0}));
  EXPECT_EQ(SaranVaziraniSequence(Graph(4), 3), (std::vector<double>{0.0, 0.0}));
}

TEST(LowerBoundFamily, SmallCutsOnOneMemberAreCostlyOnAnother) {
  // Four 4-cliques with bridges of width 2; members drop bridge 0 or 2.
  const PathOfCliques base = GenPathOfCliques(4, 4, 2);
  const Graph gs = GenRemovedBridges(base, {0});
  const Graph gt = GenRemovedBridges(base, {2});
  const double d = 2.0, k = 2.0;
  EXPECT_GE(brute::MinKCut(base.graph, 2), (k - 1) * d / 2.0);
  int small = 0;
  brute::ForEachLabeling(16, 2, [&](const std::vector<int>& l) {
    if (brute::DistinctLabels(l) != 2) return;
    if (brute::Cost(gs, l) < (k - 1) * d / 6.0) {
      ++small;
      EXPECT_GE(brute::Cost(gt, l), (k - 1) * d / 6.0);
    }
  });
  EXPECT_EQ(small, 2);
}

}  // namespace
}  // namespace privcut
