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

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <string>

#include "privcut/error.h"

namespace privcut {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double Slack(double x) { return 1e-9 * (1.0 + std::abs(x)); }

void CheckK(const Graph& g, int k) {
  if (k < 1 || k > g.n()) {
    throw InvalidArgumentError("k=" + std::to_string(k) +
                               " must lie in [1, n] for n=" +
                               std::to_string(g.n()));
  }
}

void CheckSt(const Graph& g, Vertex s, Vertex t) {
  if (s < 0 || t < 0 || s >= g.n() || t >= g.n()) {
    throw InvalidArgumentError("terminal out of range");
  }
  if (s == t) throw InvalidArgumentError("s and t must differ");
}

// Depth-first search over vertex labelings with incremental cut costs.
// Vertices with a fixed label are placed first; free vertices follow in index
// order, so leaves arrive in lexicographic order of the free labels.
class LabelSearch {
 public:
  LabelSearch(const Graph& g, int num_labels)
      : fixed(g.n(), -1),
        n_(g.n()),
        num_labels_(num_labels),
        adj_(g.Adjacency()) {}

  std::vector<int> fixed;
  bool canonical = false;
  int exact_blocks = 0;
  std::vector<std::pair<Vertex, Vertex>> separated;
  std::vector<char> anchors;
  bool prune = false;
  bool multiway_bound = false;
  double bound = kInf;
  double node_cap = kInf;

  // on_leaf(labels, cost) returns the bound to use from then on.
  template <class F>
  void Run(F&& on_leaf) {
    labels_.assign(n_, -1);
    acc_ = Eigen::MatrixXd::Zero(n_, num_labels_);
    acc_total_ = Eigen::VectorXd::Zero(n_);
    block_size_.assign(num_labels_, 0);
    partners_.assign(n_, {});
    for (const auto& [s, t] : separated) {
      partners_[s].push_back(t);
      partners_[t].push_back(s);
    }
    free_.clear();
    double partial = 0.0;
    int used = 0;
    for (Vertex v = 0; v < n_; ++v) {
      if (fixed[v] < 0) continue;
      for (Vertex p : partners_[v]) {
        if (labels_[p] == fixed[v]) return;  // infeasible
      }
      partial += acc_total_[v] - acc_(v, fixed[v]);
      Assign(v, fixed[v]);
      used = std::max(used, fixed[v] + 1);
    }
    for (Vertex v = 0; v < n_; ++v) {
      if (fixed[v] < 0) free_.push_back(v);
    }
    nodes_ = 0;
    Visit(0, partial, used, on_leaf);
  }

 private:
  void Assign(Vertex v, int c) {
    labels_[v] = c;
    ++block_size_[c];
    acc_.col(c) += adj_.col(v);
    acc_total_ += adj_.col(v);
  }

  void Unassign(Vertex v, int c) {
    labels_[v] = -1;
    --block_size_[c];
    acc_.col(c) -= adj_.col(v);
    acc_total_ -= adj_.col(v);
  }

  bool LeafAllowed() const {
    if (exact_blocks > 0) {
      int nonempty = 0;
      for (int c = 0; c < num_labels_; ++c) nonempty += block_size_[c] > 0;
      if (nonempty != exact_blocks) return false;
    }
    if (!anchors.empty()) {
      std::vector<char> anchored(num_labels_, 0);
      for (Vertex v = 0; v < n_; ++v) {
        if (anchors[v]) anchored[labels_[v]] = 1;
      }
      for (int c = 0; c < num_labels_; ++c) {
        if (block_size_[c] > 0 && !anchored[c]) return false;
      }
    }
    return true;
  }

  double RemainingLowerBound(std::size_t from) const {
    double lb = 0.0;
    for (std::size_t i = from; i < free_.size(); ++i) {
      const Vertex u = free_[i];
      double best = kInf;
      for (int c = 0; c < num_labels_; ++c) {
        best = std::min(best, acc_total_[u] - acc_(u, c));
      }
      lb += best;
    }
    return lb;
  }

  template <class F>
  void Visit(std::size_t pos, double partial, int used, F& on_leaf) {
    if (pos == free_.size()) {
      if (LeafAllowed()) bound = on_leaf(labels_, partial);
      return;
    }
    const Vertex v = free_[pos];
    const int remaining_after = static_cast<int>(free_.size() - pos - 1);
    const int top = canonical ? std::min(used + 1, num_labels_) : num_labels_;
    for (int c = 0; c < top; ++c) {
      const int next_used = std::max(used, c + 1);
      if (canonical && exact_blocks > 0 &&
          exact_blocks - next_used > remaining_after) {
        continue;
      }
      bool clash = false;
      for (Vertex p : partners_[v]) clash = clash || labels_[p] == c;
      if (clash) continue;
      const double cost = partial + acc_total_[v] - acc_(v, c);
      if (prune && cost > bound + Slack(bound)) continue;
      if (++nodes_ > node_cap) {
        throw CapabilityError("exhaustive search exceeded " +
                              std::to_string(static_cast<long long>(node_cap)) +
                              " evaluations");
      }
      Assign(v, c);
      if (multiway_bound && prune &&
          cost + RemainingLowerBound(pos + 1) > bound + Slack(bound)) {
        Unassign(v, c);
        continue;
      }
      Visit(pos + 1, cost, next_used, on_leaf);
      Unassign(v, c);
    }
  }

  int n_;
  int num_labels_;
  Eigen::MatrixXd adj_;
  std::vector<int> labels_;
  Eigen::MatrixXd acc_;
  Eigen::VectorXd acc_total_;
  std::vector<int> block_size_;
  std::vector<std::vector<Vertex>> partners_;
  std::vector<Vertex> free_;
  double nodes_ = 0;
};

// Applies the evaluation cap: enumerations small enough run unbounded; larger
// ones must prune and stop after kMaxLabelings evaluations.
void ConfigureCap(LabelSearch& search, double leaf_count, bool can_prune,
                  const std::string& what) {
  if (leaf_count <= kMaxLabelings) return;
  if (!can_prune) {
    throw CapabilityError(what + " needs " + std::to_string(leaf_count) +
                          " labelings, above the exhaustive cap");
  }
  search.node_cap = kMaxLabelings;
}

CutResult Finish(const Graph& g, const std::vector<int>& labels, int k) {
  CutResult r;
  r.partition = Partition(labels, k);
  r.cost = CutCost(g, r.partition);
  return r;
}

CutResult SearchMinimum(const Graph& g, LabelSearch& search, int k) {
  std::vector<int> best_labels;
  double best = kInf;
  search.Run([&](const std::vector<int>& labels, double cost) {
    if (best_labels.empty() || cost < best - Slack(best)) {
      best = cost;
      best_labels = labels;
    }
    return best;
  });
  if (best_labels.empty()) throw InvalidArgumentError("no feasible labeling");
  return Finish(g, best_labels, k);
}

CutResult SearchMaximum(const Graph& g, LabelSearch& search, int k) {
  std::vector<int> best_labels;
  double best = -kInf;
  search.Run([&](const std::vector<int>& labels, double cost) {
    if (best_labels.empty() || cost > best + Slack(best)) {
      best = cost;
      best_labels = labels;
    }
    return kInf;
  });
  if (best_labels.empty()) throw InvalidArgumentError("no feasible labeling");
  return Finish(g, best_labels, k);
}

// Edmonds-Karp on a dense residual matrix. Returns the flow value and leaves
// the residual capacities in `residual`.
double MaxFlow(Eigen::MatrixXd& residual, Vertex s, Vertex t) {
  const int n = static_cast<int>(residual.rows());
  const double tol = 1e-12 * std::max(1.0, residual.maxCoeff());
  double flow = 0.0;
  std::vector<int> parent(n);
  std::vector<int> queue(n);
  while (true) {
    std::fill(parent.begin(), parent.end(), -1);
    parent[s] = s;
    int head = 0, tail = 0;
    queue[tail++] = s;
    while (head < tail && parent[t] < 0) {
      const int u = queue[head++];
      for (int v = 0; v < n; ++v) {
        if (parent[v] < 0 && residual(u, v) > tol) {
          parent[v] = u;
          queue[tail++] = v;
        }
      }
    }
    if (parent[t] < 0) break;
    double push = kInf;
    for (int v = t; v != s; v = parent[v]) {
      push = std::min(push, residual(parent[v], v));
    }
    for (int v = t; v != s; v = parent[v]) {
      residual(parent[v], v) -= push;
      residual(v, parent[v]) += push;
    }
    flow += push;
  }
  return flow;
}

struct StNetwork {
  Eigen::MatrixXd capacity;
  double constant = 0.0;
};

// Moves the common part of each vertex's two terminal weights into a
// constant so that every capacity is nonnegative.
StNetwork BuildStNetwork(const Graph& g, Vertex s, Vertex t) {
  const int n = g.n();
  StNetwork net;
  net.capacity = Eigen::MatrixXd::Zero(n, n);
  net.constant = g.weight(s, t);
  std::size_t p = 0;
  for (Vertex i = 0; i < n; ++i) {
    for (Vertex j = i + 1; j < n; ++j, ++p) {
      const bool terminal = i == s || i == t || j == s || j == t;
      if (terminal) continue;
      const double w = g.weights()[p];
      if (w < 0.0) {
        throw InvalidArgumentError(
            "negative weight between non-terminals in s-t cut");
      }
      net.capacity(i, j) = w;
      net.capacity(j, i) = w;
    }
  }
  for (Vertex v = 0; v < n; ++v) {
    if (v == s || v == t) continue;
    const double to_s = g.weight(s, v);
    const double to_t = g.weight(t, v);
    const double common = std::min(to_s, to_t);
    net.constant += common;
    net.capacity(s, v) = to_s - common;
    net.capacity(v, t) = to_t - common;
  }
  return net;
}

}  // namespace

double StirlingSecond(int n, int k) {
  if (k < 0 || n < 0) return 0.0;
  std::vector<double> row(k + 1, 0.0);
  row[0] = 1.0;
  for (int i = 1; i <= n; ++i) {
    for (int j = std::min(i, k); j >= 1; --j) row[j] = j * row[j] + row[j - 1];
    row[0] = 0.0;
  }
  return row[k];
}

double MaxFlowValue(const Graph& g, Vertex s, Vertex t) {
  CheckSt(g, s, t);
  StNetwork net = BuildStNetwork(g, s, t);
  return MaxFlow(net.capacity, s, t) + net.constant;
}

CutResult ExactMinStCut(const Graph& g, Vertex s, Vertex t) {
  CheckSt(g, s, t);
  StNetwork net = BuildStNetwork(g, s, t);
  Eigen::MatrixXd residual = net.capacity;
  MaxFlow(residual, s, t);
  const double tol = 1e-12 * std::max(1.0, net.capacity.maxCoeff());
  std::vector<int> labels(g.n(), 1);
  std::vector<int> stack = {s};
  labels[s] = 0;
  while (!stack.empty()) {
    const int u = stack.back();
    stack.pop_back();
    for (int v = 0; v < g.n(); ++v) {
      if (labels[v] == 1 && v != t && residual(u, v) > tol) {
        labels[v] = 0;
        stack.push_back(v);
      }
    }
  }
  return Finish(g, labels, 2);
}

double GlobalMinCutValue(const Graph& g) {
  const int n = g.n();
  if (n < 2) return kInf;
  if (g.has_negative_weights()) {
    throw InvalidArgumentError("global min cut needs nonnegative weights");
  }
  Eigen::MatrixXd w = g.Adjacency();
  std::vector<int> active(n);
  for (int i = 0; i < n; ++i) active[i] = i;
  double best = kInf;
  while (active.size() > 1) {
    const int m = static_cast<int>(active.size());
    std::vector<double> key(m, 0.0);
    std::vector<char> added(m, 0);
    int prev = -1, last = -1;
    for (int step = 0; step < m; ++step) {
      int pick = -1;
      for (int i = 0; i < m; ++i) {
        if (!added[i] && (pick < 0 || key[i] > key[pick])) pick = i;
      }
      added[pick] = 1;
      prev = last;
      last = pick;
      if (step == m - 1) best = std::min(best, key[pick]);
      for (int i = 0; i < m; ++i) {
        if (!added[i]) key[i] += w(active[pick], active[i]);
      }
    }
    const int a = active[prev];
    const int b = active[last];
    w.row(a) += w.row(b);
    w.col(a) += w.col(b);
    w(a, a) = 0.0;
    active.erase(active.begin() + last);
  }
  return best;
}

CutResult ExactMinKCut(const Graph& g, int k) {
  CheckK(g, k);
  LabelSearch search(g, k);
  search.canonical = true;
  search.exact_blocks = k;
  search.prune = !g.has_negative_weights();
  ConfigureCap(search, StirlingSecond(g.n(), k), search.prune, "min k-cut");
  return SearchMinimum(g, search, k);
}

void ForEachKCut(
    const Graph& g, int k, double threshold,
    const std::function<void(const std::vector<int>&, double)>& fn) {
  CheckK(g, k);
  LabelSearch search(g, k);
  search.canonical = true;
  search.exact_blocks = k;
  search.prune = std::isfinite(threshold) && !g.has_negative_weights();
  search.bound = threshold;
  ConfigureCap(search, StirlingSecond(g.n(), k), search.prune,
               "k-cut enumeration");
  const double limit = threshold + Slack(threshold);
  search.Run([&](const std::vector<int>& labels, double cost) {
    if (!(cost > limit)) fn(labels, cost);
    return threshold;
  });
}

CutResult ExactMultiwayCut(const Graph& g, const TerminalSet& terminals) {
  if (terminals.kind != TerminalSet::Kind::kMultiway) {
    throw InvalidArgumentError("multiway cut needs a multiway terminal set");
  }
  terminals.Validate(g.n());
  const int k = terminals.k();
  LabelSearch search(g, k);
  for (int i = 0; i < k; ++i) search.fixed[terminals.terminals[i]] = i;
  search.prune = !g.has_negative_weights();
  search.multiway_bound = true;
  ConfigureCap(search, std::pow(static_cast<double>(k), g.n() - k),
               search.prune, "multiway cut");
  return SearchMinimum(g, search, k);
}

CutResult ExactMulticut(const Graph& g, const TerminalSet& pairs) {
  if (pairs.kind == TerminalSet::Kind::kMultiway) {
    throw InvalidArgumentError("multicut needs terminal pairs");
  }
  pairs.Validate(g.n());
  const std::vector<Vertex> named = pairs.Vertices();
  const int blocks = static_cast<int>(named.size());
  LabelSearch search(g, blocks);
  search.canonical = true;
  search.separated = pairs.pairs;
  search.anchors.assign(g.n(), 0);
  for (Vertex v : named) search.anchors[v] = 1;
  search.prune = !g.has_negative_weights();
  double count = 0.0;
  for (int j = 1; j <= blocks; ++j) count += StirlingSecond(g.n(), j);
  ConfigureCap(search, count, search.prune, "multicut");
  CutResult r = SearchMinimum(g, search, blocks);
  r.partition = r.partition.Canonicalized();
  return r;
}

CutResult ExactMaxCut(const Graph& g) {
  if (g.n() < 1) throw InvalidArgumentError("max cut needs a vertex");
  LabelSearch search(g, 2);
  search.canonical = true;
  ConfigureCap(search, std::pow(2.0, g.n() - 1), false, "max cut");
  return SearchMaximum(g, search, 2);
}

CutResult ExactMaxStCut(const Graph& g, Vertex s, Vertex t) {
  CheckSt(g, s, t);
  LabelSearch search(g, 2);
  search.fixed[s] = 0;
  search.fixed[t] = 1;
  ConfigureCap(search, std::pow(2.0, g.n() - 2), false, "max s-t cut");
  return SearchMaximum(g, search, 2);
}

namespace {

bool CutOrder(const CutResult& a, const CutResult& b) {
  if (a.cost != b.cost) return a.cost < b.cost;
  return a.partition.labels() < b.partition.labels();
}

}  // namespace

CutCatalog EnumerateKCutsWithin(const Graph& g, int k, double alpha) {
  if (!(alpha >= 1.0)) throw InvalidArgumentError("alpha must be at least 1");
  if (g.has_negative_weights()) {
    throw InvalidArgumentError("cut catalogs need nonnegative weights");
  }
  const double opt = ExactMinKCut(g, k).cost;
  CutCatalog catalog;
  catalog.threshold = alpha * opt;
  catalog.complete = true;
  ForEachKCut(g, k, catalog.threshold,
              [&](const std::vector<int>& labels, double) {
                catalog.cuts.push_back(Finish(g, labels, k));
              });
  const double limit = catalog.threshold + Slack(catalog.threshold);
  std::erase_if(catalog.cuts,
                [&](const CutResult& c) { return c.cost > limit; });
  std::sort(catalog.cuts.begin(), catalog.cuts.end(), CutOrder);
  return catalog;
}

std::uint64_t DefaultContractionRepetitions(int n, int k, double alpha,
                                            double constant) {
  if (n < 2) return 1;
  const double reps = constant * std::pow(static_cast<double>(n),
                                          2.0 * alpha * (k - 1)) *
                      std::log(static_cast<double>(n));
  return static_cast<std::uint64_t>(std::ceil(std::max(1.0, reps)));
}

CutCatalog ContractionEnumerateKCuts(const Graph& g, int k, double alpha,
                                     RandomSource& rng,
                                     const ContractionOptions& options) {
  if (!(alpha >= 1.0)) throw InvalidArgumentError("alpha must be at least 1");
  CheckK(g, k);
  if (g.has_negative_weights()) {
    throw InvalidArgumentError("contraction needs nonnegative weights");
  }
  const int n = g.n();
  const std::uint64_t reps =
      options.repetitions > 0
          ? options.repetitions
          : DefaultContractionRepetitions(n, k, alpha, options.constant);
  if (static_cast<double>(reps) > kMaxLabelings) {
    throw CapabilityError("contraction schedule of " + std::to_string(reps) +
                          " repetitions exceeds the cap");
  }
  const int target = std::min(
      n, std::max(k, static_cast<int>(std::ceil(2.0 * alpha * (k - 1)))));
  const Eigen::MatrixXd adjacency = g.Adjacency();
  std::map<std::vector<int>, double> found;
  double best = kInf;

  for (std::uint64_t rep = 0; rep < reps; ++rep) {
    Eigen::MatrixXd w = adjacency;
    std::vector<int> owner(n);
    for (int v = 0; v < n; ++v) owner[v] = v;
    std::vector<int> alive(n);
    for (int v = 0; v < n; ++v) alive[v] = v;
    while (static_cast<int>(alive.size()) > target) {
      const int m = static_cast<int>(alive.size());
      double total = 0.0;
      for (int a = 0; a < m; ++a) {
        for (int b = a + 1; b < m; ++b) total += w(alive[a], alive[b]);
      }
      int pa = 0, pb = 1;
      if (total > 0.0) {
        double r = rng.Uniform() * total;
        bool done = false;
        for (int a = 0; a < m && !done; ++a) {
          for (int b = a + 1; b < m; ++b) {
            const double x = w(alive[a], alive[b]);
            if (x <= 0.0) continue;
            pa = a;
            pb = b;
            r -= x;
            if (r < 0.0) {
              done = true;
              break;
            }
          }
        }
      } else {
        const auto pick = rng.UniformInt(static_cast<std::uint64_t>(m) * (m - 1) / 2);
        const VertexPair pr = PairAt(m, pick);
        pa = pr.u;
        pb = pr.v;
      }
      const int keep = alive[pa];
      const int gone = alive[pb];
      w.row(keep) += w.row(gone);
      w.col(keep) += w.col(gone);
      w(keep, keep) = 0.0;
      for (int v = 0; v < n; ++v) {
        if (owner[v] == gone) owner[v] = keep;
      }
      alive.erase(alive.begin() + pb);
    }
    const int m = static_cast<int>(alive.size());
    Eigen::VectorXd cw(PairCount(m));
    std::size_t p = 0;
    for (int a = 0; a < m; ++a) {
      for (int b = a + 1; b < m; ++b, ++p) cw[p] = w(alive[a], alive[b]);
    }
    const Graph contracted(m, std::move(cw));
    std::vector<int> slot(n, -1);
    for (int a = 0; a < m; ++a) slot[alive[a]] = a;
    ForEachKCut(contracted, k, kInf,
                [&](const std::vector<int>& super_labels, double cost) {
                  if (cost > alpha * best + Slack(alpha * best)) return;
                  best = std::min(best, cost);
                  std::vector<int> labels(n);
                  for (int v = 0; v < n; ++v) {
                    labels[v] = super_labels[slot[owner[v]]];
                  }
                  found.emplace(Partition::Canonical(labels).labels(), cost);
                });
  }

  CutCatalog catalog;
  catalog.complete = false;
  catalog.threshold = alpha * best;
  const double limit = catalog.threshold + Slack(catalog.threshold);
  for (const auto& [labels, cost] : found) {
    CutResult r = Finish(g, labels, k);
    if (r.cost <= limit) catalog.cuts.push_back(std::move(r));
  }
  std::sort(catalog.cuts.begin(), catalog.cuts.end(), CutOrder);
  return catalog;
}

}  // namespace privcut
