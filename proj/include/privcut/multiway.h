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

#ifndef PRIVCUT_MULTIWAY_H_
#define PRIVCUT_MULTIWAY_H_

#include <functional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "privcut/graph.h"
#include "privcut/random.h"
#include "privcut/simplex.h"

namespace privcut {

// One point of the k-simplex per vertex, stored as the rows of an n x k
// matrix. Terminal i sits at the basis vector e_i.
struct Placement {
  Eigen::MatrixXd points;

  int n() const { return static_cast<int>(points.rows()); }
  int k() const { return static_cast<int>(points.cols()); }

  // Throws InvalidArgumentError when a point leaves the simplex or a
  // terminal leaves its basis vector.
  void Validate(const TerminalSet& terminals) const;
};

// Placement with vertex v at e_{p.label(v)}.
Placement IntegralPlacement(const Partition& p, int k);

// Laplace noise on every (terminal, non-terminal) pair. values(i, j) belongs
// to terminal i and the j-th non-terminal in increasing vertex order.
struct NoiseMatrix {
  Eigen::MatrixXd values;
  double scale = 0.0;
  std::vector<Vertex> non_terminals;
};

std::vector<Vertex> NonTerminals(int n, const TerminalSet& terminals);

// Scale sqrt(2) k / epsilon. Draws are taken row by row.
double NoiseScale(int k, double epsilon);
NoiseMatrix SampleNoiseMatrix(int n, const TerminalSet& terminals,
                              double epsilon, RandomSource& rng);
NoiseMatrix ZeroNoise(int n, const TerminalSet& terminals);

// Half the l1 distance summed over terminals. Equals k - 1 on the simplex.
template <typename Derived>
typename Derived::Scalar TerminalDistanceSum(
    const Eigen::MatrixBase<Derived>& x) {
  using Scalar = typename Derived::Scalar;
  const Scalar k(static_cast<double>(x.size()));
  return ((k - Scalar(1)) * x.cwiseAbs().sum() +
          (Scalar(1) - x.array()).abs().sum()) /
         Scalar(2);
}

// Cut cost of a fractional placement: (1/2) sum_{u<v} w(u,v) |x_u - x_v|_1.
double FractionalCutCost(const Graph& g, const Placement& x);
// Total weight minus the fractional cut cost.
double FractionalUncut(const Graph& g, const Placement& x);
// Fractional cut cost with each terminal edge shifted by its noise.
double NoisyFractionalCutCost(const Graph& g, const TerminalSet& terminals,
                              const NoiseMatrix& noise, const Placement& x);
// Noisy total weight minus the noisy fractional cut cost.
double NoisyFractionalUncut(const Graph& g, const TerminalSet& terminals,
                            const NoiseMatrix& noise, const Placement& x);

// The relaxation in standard form. Variables, in order: the placement
// coordinates of each non-terminal, then for every positive-weight
// non-terminal pair and coordinate a split pair (p, q) with
// x_u[i] - x_v[i] = p - q, so that p + q stands in for |x_u[i] - x_v[i]|.
// Rows: one simplex row per non-terminal, then one split row per pair and
// coordinate. Terminals are pinned by substitution, so a terminal edge
// contributes the affine term (w + Z)(1 - x_u[t]). The objective is in cut
// units; `constant` is added on top of c'x.
struct LpModel {
  StandardFormLp<double> lp;
  double constant = 0.0;
  int n = 0;
  int k = 0;
  std::vector<Vertex> terminals;
  std::vector<Vertex> non_terminals;
  std::vector<std::pair<Vertex, Vertex>> distance_pairs;
  int placement_variables = 0;
  int distance_variables = 0;

  int PlacementColumn(int non_terminal_index, int coordinate) const {
    return non_terminal_index * k + coordinate;
  }
};

LpModel BuildLp1(const Graph& g, const TerminalSet& terminals,
                 const NoiseMatrix& noise);

// Plain-text dump: objective row, then one line per constraint row.
std::string DumpLpModel(const LpModel& model);

struct LpSolution {
  Placement placement;
  double objective = 0.0;
  long iterations = 0;
  LpStatus status = LpStatus::kOptimal;
};

// Solves with the dense simplex. Throws CapabilityError on a numerical
// failure instead of returning a suboptimal point.
LpSolution SolveLp(const LpModel& model);

// Objective of the relaxation at a placement, recomputed from the graph.
double Lp1Objective(const Graph& g, const TerminalSet& terminals,
                    const NoiseMatrix& noise, const Placement& x);

LpSolution PrivateSimplexEmbedding(const Graph& g, const TerminalSet& terminals,
                                   double epsilon, RandomSource& rng);

using RoundingScheme =
    std::function<Partition(const Placement&, RandomSource&)>;

// Threshold rounding: one theta uniform in (0, 1) and a random terminal
// order; each vertex joins the first terminal i in that order with
// x[i] >= theta, and the last terminal takes whatever is left.
Partition ThresholdRounding(const Placement& x, RandomSource& rng);

Partition RoundPlacement(const Placement& x, const TerminalSet& terminals,
                         RandomSource& rng,
                         const RoundingScheme& scheme = ThresholdRounding);

Partition PrivateMultiwayCut(const Graph& g, const TerminalSet& terminals,
                             double epsilon, RandomSource& rng,
                             const RoundingScheme& scheme = ThresholdRounding);

// Correction pair for two vertices given their terminal distances d_u, d_v
// (coordinates in [0, 1] summing to k - 1). On the coordinates where the
// first vector exceeds the second it puts -1 on that vector and +1 on the
// other; the roles swap when that set is more than half of the coordinates.
struct DistanceCorrection {
  Eigen::VectorXd a_u;
  Eigen::VectorXd a_v;
  bool swapped = false;
};

DistanceCorrection BuildDistanceCorrection(const Eigen::VectorXd& d_u,
                                           const Eigen::VectorXd& d_v);

// a_u . d_u + a_v . d_v + (1/2) |d_u - d_v|_1.
template <typename A, typename B, typename C, typename D>
double CorrectedDistanceGap(const Eigen::MatrixBase<A>& a_u,
                            const Eigen::MatrixBase<B>& a_v,
                            const Eigen::MatrixBase<C>& d_u,
                            const Eigen::MatrixBase<D>& d_v) {
  return a_u.dot(d_u) + a_v.dot(d_v) + 0.5 * (d_u - d_v).cwiseAbs().sum();
}

}  // namespace privcut

#endif  // PRIVCUT_MULTIWAY_H_
