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

#ifndef PRIVCUT_INSTANCES_H_
#define PRIVCUT_INSTANCES_H_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "privcut/graph.h"

namespace privcut {

// Star family for multiway cut. Terminals are vertices 0 .. k-1; the
// non-terminal k + i is joined to terminal assignment[i] only.
struct StarInstance {
  Graph graph;
  TerminalSet terminals;
  std::vector<int> assignment;
  double edge_weight = 0.0;
};

// ln(k / 6) / (2 epsilon). Negative for k < 6.
double StarEdgeWeight(int k, double epsilon);

// Throws unless the edge weight is nonnegative; pass `weight` to override
// the formula.
StarInstance GenStarMultiway(int n, int k, double epsilon,
                             const std::vector<int>& assignment,
                             std::optional<double> weight = std::nullopt);

// Cliques 0 .. count-1 of `clique_size` vertices each; clique c holds the
// vertices [c * size, (c + 1) * size). Bridge c joins cliques c and c + 1
// with the `bridge_width` lexicographically first cross pairs.
struct PathOfCliques {
  Graph graph;
  int clique_count = 0;
  int clique_size = 0;
  int bridge_width = 0;
  std::vector<std::vector<VertexPair>> bridges;
};

PathOfCliques GenPathOfCliques(int clique_count, int clique_size,
                               int bridge_width);

// Removes the listed bridges.
Graph GenRemovedBridges(const PathOfCliques& base,
                        const std::vector<int>& bridges);

Graph GenGnp(int n, double p, std::uint64_t seed);
// G(n, p) with weights uniform in [lo, hi].
Graph GenRandomWeighted(int n, double p, double lo, double hi,
                        std::uint64_t seed);
// Complete graph with weights uniform in [lo, hi].
Graph GenCompleteUniform(int n, double lo, double hi, std::uint64_t seed);
Graph GenCycle(int n, double weight = 1.0);
// k contiguous blocks of near-equal size. Pairs inside a block are present
// with probability p and weigh `inner`; pairs across blocks weigh `outer`.
Graph GenPlantedKCut(int n, int k, double inner, double outer, double p,
                     std::uint64_t seed);

// Family tag, numeric parameters and seed. Generation is a pure function of
// the spec.
struct InstanceSpec {
  std::string family;
  nlohmann::json params = nlohmann::json::object();
  std::uint64_t seed = 0;

  nlohmann::json ToJson() const;
  static InstanceSpec FromJson(const nlohmann::json& j);
};

struct Instance {
  InstanceSpec spec;
  Graph graph;
  std::optional<TerminalSet> terminals;
};

// Registered family tags, in help order.
const std::vector<std::string>& InstanceFamilies();

// Parameters per family (defaults in brackets):
//   star-multiway   n, k, epsilon [1], weight [formula]; assignment drawn
//                   from the seed unless given as an array
//   path-of-cliques cliques, size, width, removed [[]]
//   random-gnp      n, p
//   random-weighted n, p, lo [0.1], hi [3]
//   complete-uniform n, lo [0.1], hi [3]
//   cycle           n, weight [1]
//   planted-kcut    n, k, inner [1], outer [0], p [1]
//   file            path (edge list, or dense binary for *.bin)
Instance Generate(const InstanceSpec& spec);

}  // namespace privcut

#endif  // PRIVCUT_INSTANCES_H_
