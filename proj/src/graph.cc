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

#include "privcut/graph.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "privcut/error.h"

namespace privcut {

VertexPair PairAt(int n, std::size_t index) {
  if (index >= PairCount(n)) {
    throw InvalidArgumentError("pair index out of range");
  }
  Vertex i = 0;
  std::size_t row = static_cast<std::size_t>(n - 1);
  while (index >= row) {
    index -= row;
    ++i;
    --row;
  }
  return VertexPair(i, i + 1 + static_cast<Vertex>(index));
}

namespace {

void CheckShape(int n, const Eigen::VectorXd& w) {
  if (n < 0) throw InvalidArgumentError("vertex count must be nonnegative");
  if (static_cast<std::size_t>(w.size()) != PairCount(n)) {
    throw InvalidArgumentError("weight vector length " +
                               std::to_string(w.size()) + " does not match " +
                               std::to_string(PairCount(n)) + " pairs");
  }
  for (Eigen::Index p = 0; p < w.size(); ++p) {
    if (!std::isfinite(w[p])) throw InvalidArgumentError("non-finite weight");
  }
}

void CheckVertex(int n, Vertex v) {
  if (v < 0 || v >= n) {
    throw InvalidArgumentError("vertex " + std::to_string(v) +
                               " out of range for n=" + std::to_string(n));
  }
}

}  // namespace

Graph::Graph(int n) : n_(n), weights_(Eigen::VectorXd::Zero(PairCount(n))) {
  if (n < 0) throw InvalidArgumentError("vertex count must be nonnegative");
}

Graph::Graph(int n, Eigen::VectorXd weights, std::string name)
    : n_(n), weights_(std::move(weights)), name_(std::move(name)) {
  CheckShape(n_, weights_);
  if (weights_.size() > 0 && weights_.minCoeff() < 0.0) {
    throw InvalidArgumentError("negative edge weight");
  }
}

Graph Graph::WithSignedWeights(int n, Eigen::VectorXd weights,
                               std::string name) {
  CheckShape(n, weights);
  Graph g;
  g.n_ = n;
  g.weights_ = std::move(weights);
  g.name_ = std::move(name);
  return g;
}

double Graph::weight(Vertex u, Vertex v) const {
  CheckVertex(n_, u);
  CheckVertex(n_, v);
  if (u == v) return 0.0;
  return weights_[PairIndex(n_, u, v)];
}

double Graph::min_weight() const {
  return weights_.size() == 0 ? 0.0 : weights_.minCoeff();
}

bool Graph::IsUnweighted() const {
  for (Eigen::Index p = 0; p < weights_.size(); ++p) {
    if (weights_[p] != 0.0 && weights_[p] != 1.0) return false;
  }
  return true;
}

Eigen::MatrixXd Graph::Adjacency() const {
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n_, n_);
  std::size_t p = 0;
  for (Vertex i = 0; i < n_; ++i) {
    for (Vertex j = i + 1; j < n_; ++j, ++p) {
      a(i, j) = weights_[p];
      a(j, i) = weights_[p];
    }
  }
  return a;
}

Eigen::VectorXd Graph::Degrees() const { return Adjacency().rowwise().sum(); }

Graph Graph::WithWeight(Vertex u, Vertex v, double w) const {
  CheckVertex(n_, u);
  CheckVertex(n_, v);
  if (u == v) throw InvalidArgumentError("self-loop");
  Eigen::VectorXd next = weights_;
  next[PairIndex(n_, u, v)] = w;
  if (min_weight() < 0.0) return WithSignedWeights(n_, std::move(next), name_);
  return Graph(n_, std::move(next), name_);
}

Graph Graph::WithName(std::string name) const {
  Graph g = *this;
  g.name_ = std::move(name);
  return g;
}

Graph Graph::Induced(const std::vector<Vertex>& vertices) const {
  const int m = static_cast<int>(vertices.size());
  Eigen::VectorXd w(PairCount(m));
  std::size_t p = 0;
  for (int i = 0; i < m; ++i) {
    for (int j = i + 1; j < m; ++j, ++p) w[p] = weight(vertices[i], vertices[j]);
  }
  if (min_weight() < 0.0) return WithSignedWeights(m, std::move(w));
  return Graph(m, std::move(w));
}

Graph GraphFromEdges(int n, const std::vector<WeightedEdge>& edges,
                     std::string name) {
  Eigen::VectorXd w = Eigen::VectorXd::Zero(PairCount(n));
  for (const WeightedEdge& e : edges) {
    CheckVertex(n, e.u);
    CheckVertex(n, e.v);
    if (e.u == e.v) throw InvalidArgumentError("self-loop");
    w[PairIndex(n, e.u, e.v)] += e.w;
  }
  return Graph(n, std::move(w), std::move(name));
}

Partition::Partition(std::vector<int> labels, int k)
    : labels_(std::move(labels)), k_(k) {
  if (k_ < 0) throw InvalidArgumentError("block count must be nonnegative");
  for (int l : labels_) {
    if (l < 0 || l >= k_) {
      throw InvalidArgumentError("label " + std::to_string(l) +
                                 " outside [0, " + std::to_string(k_) + ")");
    }
  }
}

Partition Partition::Canonical(const std::vector<int>& labels) {
  std::vector<int> out(labels.size());
  std::vector<std::pair<int, int>> seen;
  for (std::size_t v = 0; v < labels.size(); ++v) {
    int id = -1;
    for (const auto& [from, to] : seen) {
      if (from == labels[v]) {
        id = to;
        break;
      }
    }
    if (id < 0) {
      id = static_cast<int>(seen.size());
      seen.emplace_back(labels[v], id);
    }
    out[v] = id;
  }
  return Partition(std::move(out), static_cast<int>(seen.size()));
}

int Partition::NonEmptyBlocks() const {
  std::vector<char> used(k_, 0);
  for (int l : labels_) used[l] = 1;
  return static_cast<int>(std::count(used.begin(), used.end(), 1));
}

std::vector<std::vector<Vertex>> Partition::Blocks() const {
  std::vector<std::vector<Vertex>> blocks(k_);
  for (Vertex v = 0; v < size(); ++v) blocks[labels_[v]].push_back(v);
  return blocks;
}

std::string Partition::Key() const {
  const Partition c = Canonicalized();
  std::string key;
  key.reserve(labels_.size() * 2);
  for (std::size_t v = 0; v < c.labels_.size(); ++v) {
    if (v > 0) key.push_back(',');
    key += std::to_string(c.labels_[v]);
  }
  return key;
}

bool SamePartition(const Partition& a, const Partition& b) {
  return a.size() == b.size() &&
         a.Canonicalized().labels() == b.Canonicalized().labels();
}

TerminalSet TerminalSet::Multiway(std::vector<Vertex> terminals) {
  TerminalSet t;
  t.kind = Kind::kMultiway;
  t.terminals = std::move(terminals);
  return t;
}

TerminalSet TerminalSet::Pairs(std::vector<std::pair<Vertex, Vertex>> pairs) {
  TerminalSet t;
  t.kind = Kind::kPairs;
  t.pairs = std::move(pairs);
  return t;
}

TerminalSet TerminalSet::St(Vertex s, Vertex t) {
  TerminalSet ts;
  ts.kind = Kind::kSt;
  ts.pairs = {{s, t}};
  return ts;
}

std::vector<Vertex> TerminalSet::Vertices() const {
  std::vector<Vertex> out = terminals;
  for (const auto& [s, t] : pairs) {
    out.push_back(s);
    out.push_back(t);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

bool TerminalSet::IsTerminal(Vertex v) const {
  const std::vector<Vertex> all = Vertices();
  return std::binary_search(all.begin(), all.end(), v);
}

void TerminalSet::Validate(int n) const {
  for (Vertex v : terminals) CheckVertex(n, v);
  for (const auto& [s, t] : pairs) {
    CheckVertex(n, s);
    CheckVertex(n, t);
    if (s == t) throw InvalidArgumentError("terminal pair with s == t");
  }
  switch (kind) {
    case Kind::kMultiway: {
      if (terminals.size() < 2) {
        throw InvalidArgumentError("multiway cut needs at least 2 terminals");
      }
      std::vector<Vertex> sorted = terminals;
      std::sort(sorted.begin(), sorted.end());
      if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
        throw InvalidArgumentError("multiway terminals must be distinct");
      }
      break;
    }
    case Kind::kPairs:
      if (pairs.empty()) throw InvalidArgumentError("no terminal pairs");
      break;
    case Kind::kSt:
      if (pairs.size() != 1) throw InvalidArgumentError("st needs one pair");
      break;
  }
}

namespace {

void CheckPartitionSize(const Graph& g, const Partition& p) {
  if (p.size() != g.n()) {
    throw InvalidArgumentError("partition has " + std::to_string(p.size()) +
                               " labels for a graph on " +
                               std::to_string(g.n()) + " vertices");
  }
}

}  // namespace

double CutCost(const Graph& g, const Partition& p) {
  CheckPartitionSize(g, p);
  const Eigen::VectorXd& w = g.weights();
  double cost = 0.0;
  std::size_t idx = 0;
  for (Vertex i = 0; i < g.n(); ++i) {
    const int li = p.label(i);
    for (Vertex j = i + 1; j < g.n(); ++j, ++idx) {
      if (li != p.label(j)) cost += w[idx];
    }
  }
  return cost;
}

double UncutCost(const Graph& g, const Partition& p) {
  CheckPartitionSize(g, p);
  const Eigen::VectorXd& w = g.weights();
  double cost = 0.0;
  std::size_t idx = 0;
  for (Vertex i = 0; i < g.n(); ++i) {
    const int li = p.label(i);
    for (Vertex j = i + 1; j < g.n(); ++j, ++idx) {
      if (li == p.label(j)) cost += w[idx];
    }
  }
  return cost;
}

Graph ApplyDelta(const Graph& g, const EdgeDelta& d) {
  if (!(std::abs(d.amount) <= 1.0)) {
    throw InvalidArgumentError("delta amount must lie in [-1, 1]");
  }
  const double next = g.weight(d.pair.u, d.pair.v) + d.amount;
  if (next < 0.0) {
    throw InvalidArgumentError("delta would make a weight negative");
  }
  return g.WithWeight(d.pair.u, d.pair.v, next);
}

std::vector<EdgeDelta> EnumerateNeighborDeltas(
    const Graph& g, const std::vector<double>& grid) {
  for (double a : grid) {
    if (!(std::abs(a) <= 1.0)) {
      throw InvalidArgumentError("grid amounts must lie in [-1, 1]");
    }
  }
  std::vector<EdgeDelta> out;
  std::size_t idx = 0;
  for (Vertex i = 0; i < g.n(); ++i) {
    for (Vertex j = i + 1; j < g.n(); ++j, ++idx) {
      for (double a : grid) {
        if (g.weights()[idx] + a >= 0.0) {
          out.push_back({VertexPair(i, j), a});
        }
      }
    }
  }
  return out;
}

Partition ConnectedComponents(const Graph& g, double support_threshold) {
  if (support_threshold < 0.0) {
    throw InvalidArgumentError("support threshold must be nonnegative");
  }
  const int n = g.n();
  std::vector<int> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  std::size_t idx = 0;
  for (Vertex i = 0; i < n; ++i) {
    for (Vertex j = i + 1; j < n; ++j, ++idx) {
      if (g.weights()[idx] > support_threshold) {
        const int a = find(i);
        const int b = find(j);
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
      }
    }
  }
  std::vector<int> roots(n);
  for (Vertex v = 0; v < n; ++v) roots[v] = find(v);
  return Partition::Canonical(roots);
}

}  // namespace privcut
