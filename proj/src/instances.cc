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

#include "privcut/instances.h"

#include <cmath>

#include "privcut/error.h"
#include "privcut/graph_io.h"
#include "privcut/random.h"

namespace privcut {
namespace {

void CheckN(int n) {
  if (n < 1) throw InvalidArgumentError("n must be positive");
}

void CheckProbability(double p) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw InvalidArgumentError("probability must lie in [0, 1]");
  }
}

void CheckRange(double lo, double hi) {
  if (!(lo >= 0.0 && hi >= lo) || !std::isfinite(hi)) {
    throw InvalidArgumentError("weight range must satisfy 0 <= lo <= hi");
  }
}

double Param(const nlohmann::json& params, const char* key) {
  if (!params.contains(key) || !params[key].is_number()) {
    throw InvalidArgumentError(std::string("missing numeric parameter '") +
                               key + "'");
  }
  return params[key].get<double>();
}

double Param(const nlohmann::json& params, const char* key, double fallback) {
  if (!params.contains(key)) return fallback;
  return Param(params, key);
}

int IntParam(const nlohmann::json& params, const char* key) {
  const double v = Param(params, key);
  if (v != std::floor(v) || std::abs(v) > 1e9) {
    throw InvalidArgumentError(std::string("parameter '") + key +
                               "' must be an integer");
  }
  return static_cast<int>(v);
}

}  // namespace

double StarEdgeWeight(int k, double epsilon) {
  if (!(epsilon > 0.0)) throw InvalidArgumentError("epsilon must be positive");
  return std::log(k / 6.0) / (2.0 * epsilon);
}

StarInstance GenStarMultiway(int n, int k, double epsilon,
                             const std::vector<int>& assignment,
                             std::optional<double> weight) {
  if (k < 2 || k > n) throw InvalidArgumentError("need 2 <= k <= n");
  if (static_cast<int>(assignment.size()) != n - k) {
    throw InvalidArgumentError("assignment must have n - k entries");
  }
  StarInstance out;
  out.edge_weight = weight.value_or(StarEdgeWeight(k, epsilon));
  if (!(out.edge_weight >= 0.0) || !std::isfinite(out.edge_weight)) {
    throw InvalidArgumentError(
        "star edge weight ln(k/6)/(2 epsilon) is negative for k < 6; pass an "
        "explicit weight");
  }
  std::vector<Vertex> terminals(k);
  for (int i = 0; i < k; ++i) terminals[i] = i;
  out.terminals = TerminalSet::Multiway(terminals);
  out.assignment = assignment;
  Eigen::VectorXd w = Eigen::VectorXd::Zero(PairCount(n));
  for (int i = 0; i < n - k; ++i) {
    if (assignment[i] < 0 || assignment[i] >= k) {
      throw InvalidArgumentError("assignment entry out of range");
    }
    w[PairIndex(n, assignment[i], k + i)] = out.edge_weight;
  }
  out.graph = Graph(n, std::move(w), "star-multiway");
  return out;
}

PathOfCliques GenPathOfCliques(int clique_count, int clique_size,
                               int bridge_width) {
  if (clique_count < 1) throw InvalidArgumentError("need at least one clique");
  if (clique_size < 2) throw InvalidArgumentError("clique size must be >= 2");
  if (bridge_width < 0 || bridge_width > clique_size * clique_size) {
    throw InvalidArgumentError(
        "bridge width must lie in [0, clique_size^2] for distinct cross pairs");
  }
  PathOfCliques out;
  out.clique_count = clique_count;
  out.clique_size = clique_size;
  out.bridge_width = bridge_width;
  const int n = clique_count * clique_size;
  Eigen::VectorXd w = Eigen::VectorXd::Zero(PairCount(n));
  for (int c = 0; c < clique_count; ++c) {
    const int base = c * clique_size;
    for (int a = 0; a < clique_size; ++a) {
      for (int b = a + 1; b < clique_size; ++b) {
        w[PairIndex(n, base + a, base + b)] = 1.0;
      }
    }
  }
  for (int c = 0; c + 1 < clique_count; ++c) {
    std::vector<VertexPair> bridge;
    const int left = c * clique_size;
    const int right = left + clique_size;
    for (int a = 0; a < clique_size && static_cast<int>(bridge.size()) <
                                           bridge_width;
         ++a) {
      for (int b = 0; b < clique_size && static_cast<int>(bridge.size()) <
                                             bridge_width;
           ++b) {
        bridge.emplace_back(left + a, right + b);
        w[PairIndex(n, left + a, right + b)] = 1.0;
      }
    }
    out.bridges.push_back(std::move(bridge));
  }
  out.graph = Graph(n, std::move(w), "path-of-cliques");
  return out;
}

Graph GenRemovedBridges(const PathOfCliques& base,
                        const std::vector<int>& bridges) {
  Eigen::VectorXd w = base.graph.weights();
  std::vector<char> seen(base.bridges.size(), 0);
  for (int b : bridges) {
    if (b < 0 || b >= static_cast<int>(base.bridges.size())) {
      throw InvalidArgumentError("bridge index " + std::to_string(b) +
                                 " out of range");
    }
    if (seen[b]) throw InvalidArgumentError("bridge listed twice");
    seen[b] = 1;
    for (const VertexPair& e : base.bridges[b]) {
      w[PairIndex(base.graph.n(), e.u, e.v)] = 0.0;
    }
  }
  return Graph(base.graph.n(), std::move(w), "removed-bridges");
}

Graph GenGnp(int n, double p, std::uint64_t seed) {
  CheckN(n);
  CheckProbability(p);
  RandomSource rng(seed);
  Eigen::VectorXd w(PairCount(n));
  for (Eigen::Index i = 0; i < w.size(); ++i) {
    w[i] = rng.Uniform() < p ? 1.0 : 0.0;
  }
  return Graph(n, std::move(w), "random-gnp");
}

Graph GenRandomWeighted(int n, double p, double lo, double hi,
                        std::uint64_t seed) {
  CheckN(n);
  CheckProbability(p);
  CheckRange(lo, hi);
  RandomSource rng(seed);
  Eigen::VectorXd w(PairCount(n));
  for (Eigen::Index i = 0; i < w.size(); ++i) {
    const bool present = rng.Uniform() < p;
    const double value = lo + (hi - lo) * rng.Uniform();
    w[i] = present ? value : 0.0;
  }
  return Graph(n, std::move(w), "random-weighted");
}

Graph GenCompleteUniform(int n, double lo, double hi, std::uint64_t seed) {
  return GenRandomWeighted(n, 1.0, lo, hi, seed).WithName("complete-uniform");
}

Graph GenCycle(int n, double weight) {
  if (n < 3) throw InvalidArgumentError("a cycle needs n >= 3");
  if (!(weight >= 0.0)) throw InvalidArgumentError("weight must be >= 0");
  Eigen::VectorXd w = Eigen::VectorXd::Zero(PairCount(n));
  for (int v = 0; v < n; ++v) w[PairIndex(n, v, (v + 1) % n)] = weight;
  return Graph(n, std::move(w), "cycle");
}

Graph GenPlantedKCut(int n, int k, double inner, double outer, double p,
                     std::uint64_t seed) {
  CheckN(n);
  if (k < 1 || k > n) throw InvalidArgumentError("need 1 <= k <= n");
  CheckProbability(p);
  if (!(inner >= 0.0 && outer >= 0.0)) {
    throw InvalidArgumentError("weights must be nonnegative");
  }
  RandomSource rng(seed);
  auto block = [&](int v) { return static_cast<int>((long long)v * k / n); };
  Eigen::VectorXd w(PairCount(n));
  Eigen::Index i = 0;
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v, ++i) {
      const bool present = rng.Uniform() < p;
      w[i] = block(u) == block(v) ? (present ? inner : 0.0) : outer;
    }
  }
  return Graph(n, std::move(w), "planted-kcut");
}

nlohmann::json InstanceSpec::ToJson() const {
  return {{"family", family}, {"params", params}, {"seed", seed}};
}

InstanceSpec InstanceSpec::FromJson(const nlohmann::json& j) {
  InstanceSpec spec;
  if (!j.is_object() || !j.contains("family") || !j["family"].is_string()) {
    throw InvalidArgumentError("instance spec needs a string 'family'");
  }
  spec.family = j["family"].get<std::string>();
  if (j.contains("params")) spec.params = j["params"];
  if (j.contains("seed")) spec.seed = j["seed"].get<std::uint64_t>();
  return spec;
}

const std::vector<std::string>& InstanceFamilies() {
  static const std::vector<std::string> families = {
      "star-multiway", "path-of-cliques", "random-gnp",  "random-weighted",
      "complete-uniform", "cycle",       "planted-kcut",    "file"};
  return families;
}

Instance Generate(const InstanceSpec& spec) {
  Instance out;
  out.spec = spec;
  const nlohmann::json& p = spec.params;
  const std::string& f = spec.family;
  if (f == "star-multiway") {
    const int n = IntParam(p, "n");
    const int k = IntParam(p, "k");
    const double epsilon = Param(p, "epsilon", 1.0);
    std::vector<int> assignment;
    if (p.contains("assignment")) {
      assignment = p["assignment"].get<std::vector<int>>();
    } else {
      if (k < 1 || n < k) throw InvalidArgumentError("need 1 <= k <= n");
      RandomSource rng(spec.seed);
      for (int i = 0; i < n - k; ++i) {
        assignment.push_back(static_cast<int>(rng.UniformInt(k)));
      }
    }
    std::optional<double> weight;
    if (p.contains("weight")) weight = Param(p, "weight");
    StarInstance star = GenStarMultiway(n, k, epsilon, assignment, weight);
    out.graph = std::move(star.graph);
    out.terminals = std::move(star.terminals);
  } else if (f == "path-of-cliques") {
    const PathOfCliques base = GenPathOfCliques(
        IntParam(p, "cliques"), IntParam(p, "size"), IntParam(p, "width"));
    std::vector<int> removed;
    if (p.contains("removed")) removed = p["removed"].get<std::vector<int>>();
    out.graph = removed.empty() ? base.graph : GenRemovedBridges(base, removed);
  } else if (f == "random-gnp") {
    out.graph = GenGnp(IntParam(p, "n"), Param(p, "p"), spec.seed);
  } else if (f == "random-weighted") {
    out.graph = GenRandomWeighted(IntParam(p, "n"), Param(p, "p"),
                                  Param(p, "lo", 0.1), Param(p, "hi", 3.0),
                                  spec.seed);
  } else if (f == "complete-uniform") {
    out.graph = GenCompleteUniform(IntParam(p, "n"), Param(p, "lo", 0.1),
                                   Param(p, "hi", 3.0), spec.seed);
  } else if (f == "cycle") {
    out.graph = GenCycle(IntParam(p, "n"), Param(p, "weight", 1.0));
  } else if (f == "planted-kcut") {
    out.graph = GenPlantedKCut(IntParam(p, "n"), IntParam(p, "k"),
                               Param(p, "inner", 1.0), Param(p, "outer", 0.0),
                               Param(p, "p", 1.0), spec.seed);
  } else if (f == "file") {
    if (!p.contains("path") || !p["path"].is_string()) {
      throw InvalidArgumentError("family 'file' needs a string 'path'");
    }
    const std::string path = p["path"].get<std::string>();
    out.graph = ReadGraph(path, FormatForPath(path));
  } else {
    throw InvalidArgumentError("unknown instance family '" + f + "'");
  }
  return out;
}

}  // namespace privcut
