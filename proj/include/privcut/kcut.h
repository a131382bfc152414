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

#ifndef PRIVCUT_KCUT_H_
#define PRIVCUT_KCUT_H_

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "privcut/dp.h"
#include "privcut/graph.h"
#include "privcut/oracle.h"
#include "privcut/random.h"

namespace privcut {

// Nested edge sets H_0 = {} < H_1 < ... < H_N over all N = C(n, 2) pairs.
// H_i holds the first i pairs of `order`.
struct AugmentationChain {
  int n = 0;
  std::vector<VertexPair> order;
  std::string rule;

  int steps() const { return static_cast<int>(order.size()); }
};

// Lexicographic pair order. Depends on n only.
AugmentationChain DefaultChain(int n);
AugmentationChain DefaultChain(const Graph& g);

// g with weight 1 stacked on each pair of H_index.
Graph AugmentedGraph(const Graph& g, const AugmentationChain& chain,
                     int index);

// First chain step that lands on a pair already carrying weight, or
// chain.steps() when none does. From there on G + H_i has weights above 1.
int FirstStackedIndex(const Graph& g, const AugmentationChain& chain);

// True when every pair weight is 0 or 1.
bool HasUnitWeights(const Graph& g);

// Cut-counting profile: at most n^(alpha f) g^(alpha h) k-cuts within a
// factor alpha of the optimum.
struct KCutBoundProfile {
  double f = 0.0;
  double g = 0.0;
  double h = 0.0;

  // f = 2(k - 1), g = h = 0.
  static KCutBoundProfile Chekuri(int k);

  // f ln n + h ln g, where the second term is dropped when h = 0.
  double LogCount(int n) const;
  // Raised minimum the augmentation aims to exceed: 2 LogCount / epsilon.
  double Target(int n, double epsilon) const;
  // Score center of the augmentation step: 4 LogCount / epsilon. For the
  // Chekuri profile this is 8(k - 1) ln n / epsilon.
  double Anchor(int n, double epsilon) const;
};

// OPT_k(G + H_i) for i = 0 .. N. Stoer-Wagner when k = 2, exhaustive search
// otherwise.
std::vector<double> ChainOptima(const Graph& g, int k,
                                const AugmentationChain& chain);

// P(i) proportional to exp(-epsilon |optima[i] - anchor|).
std::vector<double> AugmentationProbabilities(
    const std::vector<double>& optima, double anchor, double epsilon);

int ChooseAugmentation(const Graph& g, int k, const AugmentationChain& chain,
                       double anchor, double epsilon, RandomSource& rng);

enum class KCutSupport { kAll, kRestricted };
enum class CatalogSource { kExhaustive, kContraction };

struct KCutMechanismOptions {
  KCutSupport support = KCutSupport::kAll;
  // Restricted mode keeps k-cuts within alpha * OPT_k(G + H_i). 0 selects
  // 1 + k / (k - 1).
  double alpha = 0.0;
  CatalogSource catalog = CatalogSource::kExhaustive;
  ContractionOptions contraction;
  // Delta charged for the restricted support. Negative selects 1 / n^2.
  double delta = -1.0;
  // Defaults to the Chekuri anchor.
  std::optional<double> anchor;
  // Defaults to DefaultChain(n).
  std::optional<AugmentationChain> chain;
};

// Two-step k-cut mechanism: pick an augmentation index, then a k-cut of the
// augmented graph with probability proportional to exp(-epsilon cost). The
// object caches the chain optima and, for small supports, the per-index
// distributions, so repeated sampling on one graph is cheap.
class KCutExponentialMechanism {
 public:
  KCutExponentialMechanism(const Graph& g, int k, double epsilon,
                           KCutMechanismOptions options = {});

  int k() const { return k_; }
  double epsilon() const { return epsilon_; }
  double anchor() const { return anchor_; }
  double alpha() const { return alpha_; }
  const AugmentationChain& chain() const { return chain_; }
  const std::vector<double>& chain_optima() const { return optima_; }
  const std::vector<double>& index_probabilities() const {
    return index_probabilities_;
  }

  int SampleAugmentation(RandomSource& rng) const;
  Partition SampleCut(int index, RandomSource& rng);
  Partition Sample(RandomSource& rng);

  // Exact distribution of the second step at one index, keyed by labeling.
  std::map<std::vector<int>, double> CutDistribution(int index);
  // Exact output distribution. Needs an exhaustive catalog.
  std::map<std::vector<int>, double> OutputDistribution();

  // Pure: two entries of (epsilon, 0). Restricted: the second carries delta.
  CompositionLedger Ledger() const;

 private:
  struct IndexCuts {
    std::vector<std::int8_t> labels;  // candidates x n, row-major
    std::vector<double> cumulative;
  };

  double Threshold(int index) const;
  const IndexCuts* Cached(int index);
  Partition StreamSample(int index, RandomSource& rng);
  Partition ContractionSample(int index, RandomSource& rng);

  Graph graph_;
  int k_;
  double epsilon_;
  KCutMechanismOptions options_;
  double alpha_;
  double anchor_;
  double delta_;
  AugmentationChain chain_;
  std::vector<double> optima_;
  std::vector<double> index_probabilities_;
  std::map<int, std::unique_ptr<IndexCuts>> cache_;
  std::map<int, bool> too_large_;
};

Partition PrivateKCutExponential(const Graph& g, int k, double epsilon,
                                 RandomSource& rng,
                                 const KCutMechanismOptions& options = {});

// Private global minimum cut: the k = 2 two-step mechanism with epsilon / 2
// per step over the restricted support with alpha = 3, so the total is
// (epsilon, delta).
Partition PrivateMinCut(const Graph& g, double epsilon, double delta,
                        RandomSource& rng);
KCutMechanismOptions PrivateMinCutOptions(double delta);

struct SplitBudget {
  double epsilon0 = 0.0;
  double delta0 = 0.0;

  // epsilon0 = epsilon / (6 sqrt(k ln(2 / delta))), delta0 = delta / (2k).
  static SplitBudget For(int k, double epsilon, double delta);
};

// k - 1 blocks of (3 epsilon0, delta0) under advanced composition with
// slack delta / 2.
CompositionLedger SplitLedger(int k, double epsilon, double delta);

struct SplitIteration {
  std::vector<std::vector<Vertex>> pieces;
  std::vector<double> piece_optima;
  int chosen = 0;
  std::vector<Vertex> split_off;
  double removed_weight = 0.0;
};

struct SplitTrace {
  SplitBudget budget;
  std::vector<SplitIteration> iterations;

  nlohmann::json ToJson() const;
};

struct SplitOptions {
  // Exact piece choice and exact minimum cuts in place of both mechanisms.
  bool noiseless = false;
};

// Output labels are piece indices; the k supports partition the vertices.
Partition PrivateSplitKCut(const Graph& g, int k, double epsilon, double delta,
                           RandomSource& rng, const SplitOptions& options = {},
                           SplitTrace* trace = nullptr);

struct CutCountReport {
  std::uint64_t count = 0;
  double bound = 0.0;
  bool within = false;
};

// Counts k-cuts within alpha * OPT_k against n^floor(2 alpha (k - 1)).
CutCountReport VerifyCutCountBound(const Graph& g, int k, double alpha);

// Weights of the cuts isolating each block of an optimal k-cut, sorted
// nondecreasingly.
std::vector<double> IsolatingCutWeights(const Graph& g, int k);

// Comparison sequence b_1 .. b_{k-1}: minimum cuts separating the endpoints
// of each edge, taken greedily by weight while they add new edges, each
// repeated once per component it creates. Returns the cut weights.
std::vector<double> SaranVaziraniSequence(const Graph& g, int k);

}  // namespace privcut

#endif  // PRIVCUT_KCUT_H_
