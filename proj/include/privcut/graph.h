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

#ifndef PRIVCUT_GRAPH_H_
#define PRIVCUT_GRAPH_H_

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace privcut {

using Vertex = int;

// Unordered vertex pair stored with u < v.
struct VertexPair {
  Vertex u = 0;
  Vertex v = 1;

  VertexPair() = default;
  VertexPair(Vertex a, Vertex b) : u(a < b ? a : b), v(a < b ? b : a) {}
  bool operator==(const VertexPair&) const = default;
  bool Contains(Vertex x) const { return x == u || x == v; }
};

inline std::size_t PairCount(int n) {
  return n < 2 ? 0 : static_cast<std::size_t>(n) * (n - 1) / 2;
}

// Position of {i, j} in the lexicographic order of pairs (i < j).
inline std::size_t PairIndex(int n, Vertex i, Vertex j) {
  if (i > j) std::swap(i, j);
  return static_cast<std::size_t>(i) * n -
         static_cast<std::size_t>(i) * (i + 1) / 2 + (j - i - 1);
}

VertexPair PairAt(int n, std::size_t index);

// Weighted undirected graph on vertices [0, n) stored as a dense vector over
// all C(n, 2) pairs in lexicographic order. Zero weight means no edge.
//
// Graphs built through the public constructor carry nonnegative weights.
// `WithSignedWeights` admits negative entries; it exists for the noisy inputs
// handed to the exact solvers by the shifting mechanism.
class Graph {
 public:
  Graph() = default;
  explicit Graph(int n);
  Graph(int n, Eigen::VectorXd weights, std::string name = {});

  static Graph WithSignedWeights(int n, Eigen::VectorXd weights,
                                 std::string name = {});

  int n() const { return n_; }
  std::size_t pair_count() const { return PairCount(n_); }
  const Eigen::VectorXd& weights() const { return weights_; }
  const std::string& name() const { return name_; }

  double weight(Vertex u, Vertex v) const;
  double total_weight() const { return weights_.sum(); }
  double min_weight() const;
  bool has_negative_weights() const { return min_weight() < 0.0; }

  // True when every weight is 0 or 1.
  bool IsUnweighted() const;

  // Symmetric n x n matrix with a zero diagonal.
  Eigen::MatrixXd Adjacency() const;

  // Weighted degree of every vertex.
  Eigen::VectorXd Degrees() const;

  // Copy with one pair overwritten. Keeps the sign policy of this graph.
  Graph WithWeight(Vertex u, Vertex v, double w) const;
  Graph WithName(std::string name) const;

  // Induced subgraph on `vertices`, relabelled to [0, vertices.size()) in the
  // given order.
  Graph Induced(const std::vector<Vertex>& vertices) const;

  bool operator==(const Graph& other) const {
    return n_ == other.n_ && weights_ == other.weights_;
  }

 private:
  int n_ = 0;
  Eigen::VectorXd weights_;
  std::string name_;
};

// Builds a nonnegative graph from (u, v, w) triples. Repeated pairs add up.
struct WeightedEdge {
  Vertex u;
  Vertex v;
  double w;
};
Graph GraphFromEdges(int n, const std::vector<WeightedEdge>& edges,
                     std::string name = {});

// Assignment of vertices to blocks [0, k).
class Partition {
 public:
  Partition() = default;
  Partition(std::vector<int> labels, int k);

  // Relabels blocks in first-occurrence order; k becomes the number of
  // distinct labels.
  static Partition Canonical(const std::vector<int>& labels);

  int size() const { return static_cast<int>(labels_.size()); }
  int k() const { return k_; }
  int label(Vertex v) const { return labels_[v]; }
  const std::vector<int>& labels() const { return labels_; }

  int NonEmptyBlocks() const;
  std::vector<std::vector<Vertex>> Blocks() const;
  Partition Canonicalized() const { return Canonical(labels_); }

  // Compact text key of the canonical labeling, e.g. "0,1,1,0".
  std::string Key() const;

  bool operator==(const Partition& other) const = default;

 private:
  std::vector<int> labels_;
  int k_ = 0;
};

bool SamePartition(const Partition& a, const Partition& b);

struct TerminalSet {
  enum class Kind { kMultiway, kPairs, kSt };

  Kind kind = Kind::kSt;
  std::vector<Vertex> terminals;
  std::vector<std::pair<Vertex, Vertex>> pairs;

  static TerminalSet Multiway(std::vector<Vertex> terminals);
  static TerminalSet Pairs(std::vector<std::pair<Vertex, Vertex>> pairs);
  static TerminalSet St(Vertex s, Vertex t);

  int k() const {
    return kind == Kind::kMultiway ? static_cast<int>(terminals.size())
                                   : static_cast<int>(pairs.size());
  }
  // Distinct vertices named by the set, sorted.
  std::vector<Vertex> Vertices() const;
  bool IsTerminal(Vertex v) const;
  void Validate(int n) const;
};

struct EdgeDelta {
  VertexPair pair;
  double amount = 0.0;
};

double CutCost(const Graph& g, const Partition& p);
double UncutCost(const Graph& g, const Partition& p);

// Returns the neighbouring graph. Requires |amount| <= 1 and a nonnegative
// result.
Graph ApplyDelta(const Graph& g, const EdgeDelta& d);

// Every legal (pair, amount) combination for amounts in `grid`.
std::vector<EdgeDelta> EnumerateNeighborDeltas(const Graph& g,
                                               const std::vector<double>& grid);

// Components of the graph whose edges are the pairs with weight > threshold.
Partition ConnectedComponents(const Graph& g, double support_threshold = 0.0);

}  // namespace privcut

#endif  // PRIVCUT_GRAPH_H_
