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

// Independent reference computations for the tests. Everything here works
// from adjacency lookups and plain labeling enumeration, and shares no code
// with the library algorithms it checks.

#ifndef PRIVCUT_TESTS_BRUTE_H_
#define PRIVCUT_TESTS_BRUTE_H_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <random>
#include <set>
#include <vector>

#include "privcut/graph.h"

namespace privcut::brute {

inline double Cost(const Graph& g, const std::vector<int>& labels) {
  double total = 0.0;
  for (int u = 0; u < g.n(); ++u) {
    for (int v = u + 1; v < g.n(); ++v) {
      if (labels[u] != labels[v]) total += g.weight(u, v);
    }
  }
  return total;
}

// Calls fn on every labeling in [0, k)^n.
inline void ForEachLabeling(int n, int k,
                            const std::function<void(const std::vector<int>&)>& fn) {
  std::vector<int> labels(n, 0);
  while (true) {
    fn(labels);
    int i = 0;
    while (i < n && ++labels[i] == k) labels[i++] = 0;
    if (i == n) return;
  }
}

inline int DistinctLabels(const std::vector<int>& labels) {
  return static_cast<int>(std::set<int>(labels.begin(), labels.end()).size());
}

inline double MinKCut(const Graph& g, int k) {
  double best = std::numeric_limits<double>::infinity();
  ForEachLabeling(g.n(), k, [&](const std::vector<int>& l) {
    if (DistinctLabels(l) == k) best = std::min(best, Cost(g, l));
  });
  return best;
}

// Number of unordered k-partitions (all blocks nonempty) of cost <= bound.
inline std::uint64_t CountKCuts(const Graph& g, int k, double bound) {
  std::uint64_t ordered = 0;
  ForEachLabeling(g.n(), k, [&](const std::vector<int>& l) {
    if (DistinctLabels(l) == k && Cost(g, l) <= bound + 1e-9) ++ordered;
  });
  std::uint64_t factorial = 1;
  for (int i = 2; i <= k; ++i) factorial *= i;
  return ordered / factorial;
}

inline double MinStCut(const Graph& g, int s, int t) {
  double best = std::numeric_limits<double>::infinity();
  ForEachLabeling(g.n(), 2, [&](const std::vector<int>& l) {
    if (l[s] == 0 && l[t] == 1) best = std::min(best, Cost(g, l));
  });
  return best;
}

inline double MaxStCut(const Graph& g, int s, int t) {
  double best = -std::numeric_limits<double>::infinity();
  ForEachLabeling(g.n(), 2, [&](const std::vector<int>& l) {
    if (l[s] == 0 && l[t] == 1) best = std::max(best, Cost(g, l));
  });
  return best;
}

inline double MaxCut(const Graph& g) {
  double best = 0.0;
  ForEachLabeling(g.n(), 2, [&](const std::vector<int>& l) {
    best = std::max(best, Cost(g, l));
  });
  return best;
}

inline double Multiway(const Graph& g, const std::vector<int>& terminals) {
  const int k = static_cast<int>(terminals.size());
  double best = std::numeric_limits<double>::infinity();
  ForEachLabeling(g.n(), k, [&](const std::vector<int>& l) {
    for (int i = 0; i < k; ++i) {
      if (l[terminals[i]] != i) return;
    }
    best = std::min(best, Cost(g, l));
  });
  return best;
}

inline double Multicut(const Graph& g,
                       const std::vector<std::pair<int, int>>& pairs) {
  const int blocks = std::min<int>(g.n(), 2 * static_cast<int>(pairs.size()));
  double best = std::numeric_limits<double>::infinity();
  ForEachLabeling(g.n(), std::max(2, blocks), [&](const std::vector<int>& l) {
    for (const auto& [s, t] : pairs) {
      if (l[s] == l[t]) return;
    }
    best = std::min(best, Cost(g, l));
  });
  return best;
}

// Seeded corpus graph: each pair present with probability p, weight 1 or
// uniform in [lo, hi].
inline Graph RandomGraph(int n, double p, std::uint64_t seed,
                         bool weighted = false, double lo = 0.1,
                         double hi = 3.0) {
  std::mt19937_64 gen(seed * 7919 + 17);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_real_distribution<double> w(lo, hi);
  std::vector<WeightedEdge> edges;
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) {
      if (unit(gen) < p) edges.push_back({u, v, weighted ? w(gen) : 1.0});
    }
  }
  return GraphFromEdges(n, edges);
}

inline Graph Cycle(int n) {
  std::vector<WeightedEdge> edges;
  for (int i = 0; i < n; ++i) edges.push_back({i, (i + 1) % n, 1.0});
  return GraphFromEdges(n, edges);
}

inline Graph Clique(int n, double w = 1.0) {
  std::vector<WeightedEdge> edges;
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) edges.push_back({u, v, w});
  }
  return GraphFromEdges(n, edges);
}

// Two cliques of `size` on [0, size) and [size, 2 size) plus a bridge
// between vertex size - 1 and vertex size.
inline Graph TwoCliques(int size, double inner, double bridge) {
  std::vector<WeightedEdge> edges;
  for (int c = 0; c < 2; ++c) {
    for (int u = 0; u < size; ++u) {
      for (int v = u + 1; v < size; ++v) {
        edges.push_back({c * size + u, c * size + v, inner});
      }
    }
  }
  if (bridge > 0.0) edges.push_back({size - 1, size, bridge});
  return GraphFromEdges(2 * size, edges);
}

}  // namespace privcut::brute

#endif  // PRIVCUT_TESTS_BRUTE_H_
