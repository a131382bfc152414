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

#ifndef PRIVCUT_ORACLE_H_
#define PRIVCUT_ORACLE_H_

#include <cstdint>
#include <functional>
#include <vector>

#include "privcut/graph.h"
#include "privcut/random.h"

namespace privcut {

// Exhaustive routines refuse to evaluate more labelings than this.
inline constexpr double kMaxLabelings = 3e7;

struct CutResult {
  Partition partition;
  // Always equal to CutCost(g, partition).
  double cost = 0.0;
};

// Number of surjective labelings of n vertices onto k unlabeled blocks.
double StirlingSecond(int n, int k);

// Minimum s-t cut by max-flow. Labels: 0 = source side, 1 = sink side. Among
// several minima returns the one with the smallest source side. Pairs that
// touch s or t may carry negative weights; other pairs must be nonnegative.
CutResult ExactMinStCut(const Graph& g, Vertex s, Vertex t);

// Max-flow value plus the constant contributed by the {s, t} pair and by the
// signed terminal edges. Equals ExactMinStCut(...).cost up to rounding.
double MaxFlowValue(const Graph& g, Vertex s, Vertex t);

// Global minimum cut value (Stoer-Wagner). +infinity when n < 2.
double GlobalMinCutValue(const Graph& g);

// Minimum over surjective k-labelings; ties go to the lexicographically
// smallest canonical labeling.
CutResult ExactMinKCut(const Graph& g, int k);

// Terminal i is pinned to block i.
CutResult ExactMultiwayCut(const Graph& g, const TerminalSet& terminals);

// Every pair (s_i, t_i) is separated and every block holds a terminal. The
// labeling is canonical (first-occurrence order).
CutResult ExactMulticut(const Graph& g, const TerminalSet& pairs);

// Maximum cut over all bipartitions; vertex 0 sits in block 0.
CutResult ExactMaxCut(const Graph& g);

// Maximum s-t cut. Labels: 0 = s side, 1 = t side.
CutResult ExactMaxStCut(const Graph& g, Vertex s, Vertex t);

struct CutCatalog {
  double threshold = 0.0;
  // Sorted by cost, then by labeling.
  std::vector<CutResult> cuts;
  bool complete = false;
};

// All k-cuts with cost <= alpha * OPT_k.
CutCatalog EnumerateKCutsWithin(const Graph& g, int k, double alpha);

// Visits every canonical k-labeling with cost <= threshold in lexicographic
// order. Pruning on partial cost is applied only to nonnegative graphs.
void ForEachKCut(const Graph& g, int k, double threshold,
                 const std::function<void(const std::vector<int>&, double)>& fn);

struct ContractionOptions {
  // 0 selects ceil(constant * n^(2 alpha (k-1)) * ln n).
  std::uint64_t repetitions = 0;
  double constant = 4.0;
};

std::uint64_t DefaultContractionRepetitions(int n, int k, double alpha,
                                            double constant = 4.0);

// Repeated random contraction down to max(k, ceil(2 alpha (k-1))) super
// vertices, keeping every k-cut of the contracted graph within alpha times
// the best cost seen. complete = false.
CutCatalog ContractionEnumerateKCuts(const Graph& g, int k, double alpha,
                                     RandomSource& rng,
                                     const ContractionOptions& options = {});

}  // namespace privcut

#endif  // PRIVCUT_ORACLE_H_
