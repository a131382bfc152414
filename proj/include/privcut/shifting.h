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

#ifndef PRIVCUT_SHIFTING_H_
#define PRIVCUT_SHIFTING_H_

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "privcut/graph.h"
#include "privcut/random.h"

namespace privcut {

enum class CutProblem { kMinStCut, kMulticut, kMaxStCut };

std::string CutProblemName(CutProblem problem);

// Pairs that receive noise, with the sensitivity of the corrections that
// absorb any neighbouring change.
struct DominatingSetSpec {
  int n = 0;
  // Canonical pair indices, sorted.
  std::vector<std::size_t> pairs;
  double sensitivity = 2.0;
  CutProblem problem = CutProblem::kMinStCut;

  bool Contains(std::size_t pair) const;
  bool Contains(Vertex u, Vertex v) const {
    return u != v && Contains(PairIndex(n, u, v));
  }
};

// {b, u} for b in {s, t} and u outside {s, t}.
DominatingSetSpec StCutDominatingSet(int n, Vertex s, Vertex t);
// Same pair set, tagged for the maximization problem.
DominatingSetSpec MaxStCutDominatingSet(int n, Vertex s, Vertex t);
// Union over pairs i of {a, v} with a in {s_i, t_i} and v outside {s_i, t_i}.
DominatingSetSpec MulticutDominatingSet(int n, const TerminalSet& pairs);

struct CorrectionVector {
  std::vector<std::size_t> support;
  std::vector<double> amounts;

  void Add(int n, Vertex u, Vertex v, double amount);
  double L1Norm() const;
};

struct ShiftPlan {
  DominatingSetSpec spec;
  // Laplace scale, sensitivity / epsilon.
  double scale = 0.0;
  // Offset added to every pair in spec.pairs.
  double lift = 0.0;
  // Replace negative noisy weights by zero before solving.
  bool clamp_negative = false;

  static ShiftPlan Make(DominatingSetSpec spec, double epsilon, double lift);
};

struct ShiftStats {
  int negative_weights = 0;
  int clamped = 0;
};

using CutSolver = std::function<Partition(const Graph&)>;

// Adds lift + Laplace(scale) to every pair of the plan, in pair order.
Graph NoisyGraph(const Graph& g, const ShiftPlan& plan, RandomSource& rng,
                 ShiftStats* stats = nullptr);

Partition ShiftAndSolve(const Graph& g, const ShiftPlan& plan,
                        const CutSolver& solver, RandomSource& rng,
                        ShiftStats* stats = nullptr);

struct ShiftOptions {
  // Lift = constant * ln n. Unset: 20 / epsilon for the s-t and max-cut
  // mechanisms, 0 for multicut.
  std::optional<double> lift_constant;
  bool clamp_negative = false;
};

CutSolver MinStCutSolver(Vertex s, Vertex t);
CutSolver MaxStCutSolver(Vertex s, Vertex t);
CutSolver MulticutSolver(const TerminalSet& pairs);

Partition PrivateMinStCut(const Graph& g, Vertex s, Vertex t, double epsilon,
                          RandomSource& rng, const ShiftOptions& options = {},
                          ShiftStats* stats = nullptr);

Partition PrivateMulticut(const Graph& g, const TerminalSet& pairs,
                          double epsilon, RandomSource& rng,
                          const ShiftOptions& options = {},
                          ShiftStats* stats = nullptr);

// Graph on n + 2 vertices: g plus fresh terminals s = n and t = n + 1 joined
// to nothing.
Graph AddFreshTerminals(const Graph& g);

// Max s-t cut on AddFreshTerminals(g), projected to the original vertices.
// Label 0 is the s side.
Partition PrivateMaxCut(const Graph& g, double epsilon, RandomSource& rng,
                        const ShiftOptions& options = {},
                        ShiftStats* stats = nullptr);

// Builds the correction from the solver output on g and the change only.
using CorrectionBuilder =
    std::function<CorrectionVector(const Partition&, const EdgeDelta&)>;

CorrectionBuilder StCutCorrectionBuilder(int n, Vertex s, Vertex t);
CorrectionBuilder MaxStCutCorrectionBuilder(int n, Vertex s, Vertex t);

enum class MulticutCorrectionRule {
  // Unit shifts toward terminals named only by block colour: any terminal of
  // each block when the endpoints are apart, and s_i, t_i around a shared
  // block otherwise.
  kColorTerminals,
  // Endpoints apart: shift toward the two members of a pair split between
  // their blocks. Endpoints together: tie both to one terminal of the block.
  kSeparatedPairs,
};

CorrectionBuilder MulticutCorrectionBuilder(
    int n, const TerminalSet& pairs,
    MulticutCorrectionRule rule = MulticutCorrectionRule::kSeparatedPairs);

// Checks that the builder's correction has norm <= sensitivity, lives on the
// dominating set, and restores the solver output after the change. Returns
// the correction; throws PropertyViolation with a JSON counterexample.
CorrectionVector VerifyDominatingSet(const Graph& g,
                                     const DominatingSetSpec& spec,
                                     const CutSolver& solver,
                                     const EdgeDelta& delta,
                                     const CorrectionBuilder& builder);

}  // namespace privcut

#endif  // PRIVCUT_SHIFTING_H_
