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

#include "privcut/multiway.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <sstream>

#include "privcut/dp.h"
#include "privcut/error.h"

namespace privcut {
namespace {

constexpr double kCoordinateTolerance = 1e-9;
constexpr double kSumTolerance = 1e-7;
constexpr double kResidualTolerance = 1e-7;
constexpr double kObjectiveTolerance = 1e-6;

void RequireMultiway(const TerminalSet& terminals, int n) {
  if (terminals.kind != TerminalSet::Kind::kMultiway) {
    throw InvalidArgumentError("multiway cut needs a multiway terminal set");
  }
  if (terminals.k() < 2) {
    throw InvalidArgumentError("multiway cut needs at least two terminals");
  }
  terminals.Validate(n);
}

void RequireNoiseShape(const NoiseMatrix& noise, int n,
                       const TerminalSet& terminals) {
  const int k = terminals.k();
  if (noise.values.rows() != k || noise.values.cols() != n - k ||
      static_cast<int>(noise.non_terminals.size()) != n - k) {
    throw InvalidArgumentError("noise matrix has the wrong shape");
  }
}

// Sum over (terminal, non-terminal) of Z * (1 - x_u[t]).
double NoiseTerm(const TerminalSet& terminals, const NoiseMatrix& noise,
                 const Placement& x) {
  double total = 0.0;
  for (int t = 0; t < terminals.k(); ++t) {
    for (std::size_t j = 0; j < noise.non_terminals.size(); ++j) {
      total += noise.values(t, static_cast<Eigen::Index>(j)) *
               (1.0 - x.points(noise.non_terminals[j], t));
    }
  }
  return total;
}

std::string FormatNumber(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

void Placement::Validate(const TerminalSet& terminals) const {
  if (k() < 1) throw InvalidArgumentError("placement has no coordinates");
  for (int u = 0; u < n(); ++u) {
    const auto row = points.row(u);
    if (!row.allFinite()) {
      throw InvalidArgumentError("placement has a non-finite coordinate");
    }
    if (row.minCoeff() < -kCoordinateTolerance ||
        std::abs(row.sum() - 1.0) > kSumTolerance) {
      throw InvalidArgumentError("point " + std::to_string(u) +
                                 " is outside the simplex");
    }
  }
  if (terminals.kind == TerminalSet::Kind::kMultiway) {
    if (terminals.k() != k()) {
      throw InvalidArgumentError("placement dimension differs from terminals");
    }
    for (int i = 0; i < k(); ++i) {
      const Vertex t = terminals.terminals[i];
      if (t < 0 || t >= n()) {
        throw InvalidArgumentError("terminal out of range");
      }
      Eigen::RowVectorXd e = Eigen::RowVectorXd::Zero(k());
      e[i] = 1.0;
      if ((points.row(t) - e).cwiseAbs().maxCoeff() > kSumTolerance) {
        throw InvalidArgumentError("terminal " + std::to_string(i) +
                                   " is not at its basis vector");
      }
    }
  }
}

Placement IntegralPlacement(const Partition& p, int k) {
  Placement x{Eigen::MatrixXd::Zero(p.size(), k)};
  for (int v = 0; v < p.size(); ++v) {
    if (p.label(v) < 0 || p.label(v) >= k) {
      throw InvalidArgumentError("label exceeds placement dimension");
    }
    x.points(v, p.label(v)) = 1.0;
  }
  return x;
}

std::vector<Vertex> NonTerminals(int n, const TerminalSet& terminals) {
  std::vector<Vertex> out;
  for (Vertex v = 0; v < n; ++v) {
    if (!terminals.IsTerminal(v)) out.push_back(v);
  }
  return out;
}

double NoiseScale(int k, double epsilon) {
  if (!(epsilon > 0.0) || !std::isfinite(epsilon)) {
    throw InvalidArgumentError("epsilon must be positive and finite");
  }
  return std::sqrt(2.0) * k / epsilon;
}

NoiseMatrix SampleNoiseMatrix(int n, const TerminalSet& terminals,
                              double epsilon, RandomSource& rng) {
  RequireMultiway(terminals, n);
  NoiseMatrix noise = ZeroNoise(n, terminals);
  noise.scale = NoiseScale(terminals.k(), epsilon);
  for (Eigen::Index t = 0; t < noise.values.rows(); ++t) {
    for (Eigen::Index j = 0; j < noise.values.cols(); ++j) {
      noise.values(t, j) = SampleLaplace(noise.scale, rng);
    }
  }
  return noise;
}

NoiseMatrix ZeroNoise(int n, const TerminalSet& terminals) {
  RequireMultiway(terminals, n);
  NoiseMatrix noise;
  noise.non_terminals = NonTerminals(n, terminals);
  noise.values = Eigen::MatrixXd::Zero(
      terminals.k(), static_cast<Eigen::Index>(noise.non_terminals.size()));
  return noise;
}

double FractionalCutCost(const Graph& g, const Placement& x) {
  if (x.n() != g.n()) throw InvalidArgumentError("placement size mismatch");
  double total = 0.0;
  const Eigen::VectorXd& w = g.weights();
  Eigen::Index p = 0;
  for (Vertex u = 0; u < g.n(); ++u) {
    for (Vertex v = u + 1; v < g.n(); ++v, ++p) {
      if (w[p] == 0.0) continue;
      total += w[p] * (x.points.row(u) - x.points.row(v)).cwiseAbs().sum();
    }
  }
  return total / 2.0;
}

double FractionalUncut(const Graph& g, const Placement& x) {
  return g.total_weight() - FractionalCutCost(g, x);
}

double NoisyFractionalCutCost(const Graph& g, const TerminalSet& terminals,
                              const NoiseMatrix& noise, const Placement& x) {
  RequireNoiseShape(noise, g.n(), terminals);
  return FractionalCutCost(g, x) + NoiseTerm(terminals, noise, x);
}

double NoisyFractionalUncut(const Graph& g, const TerminalSet& terminals,
                            const NoiseMatrix& noise, const Placement& x) {
  RequireNoiseShape(noise, g.n(), terminals);
  return g.total_weight() + noise.values.sum() -
         NoisyFractionalCutCost(g, terminals, noise, x);
}

double Lp1Objective(const Graph& g, const TerminalSet& terminals,
                    const NoiseMatrix& noise, const Placement& x) {
  return NoisyFractionalCutCost(g, terminals, noise, x);
}

LpModel BuildLp1(const Graph& g, const TerminalSet& terminals,
                 const NoiseMatrix& noise) {
  RequireMultiway(terminals, g.n());
  RequireNoiseShape(noise, g.n(), terminals);
  if (g.has_negative_weights()) {
    throw InvalidArgumentError(
        "the relaxation needs nonnegative weights on every pair");
  }
  LpModel model;
  model.n = g.n();
  model.k = terminals.k();
  model.terminals = terminals.terminals;
  model.non_terminals = noise.non_terminals;
  const int k = model.k;
  const int m = static_cast<int>(model.non_terminals.size());

  std::vector<int> terminal_index(g.n(), -1);
  for (int i = 0; i < k; ++i) terminal_index[terminals.terminals[i]] = i;
  std::vector<int> free_index(g.n(), -1);
  for (int a = 0; a < m; ++a) free_index[model.non_terminals[a]] = a;

  for (int a = 0; a < m; ++a) {
    for (int b = a + 1; b < m; ++b) {
      if (g.weight(model.non_terminals[a], model.non_terminals[b]) > 0.0) {
        model.distance_pairs.emplace_back(model.non_terminals[a],
                                          model.non_terminals[b]);
      }
    }
  }
  const int pairs = static_cast<int>(model.distance_pairs.size());
  model.placement_variables = m * k;
  model.distance_variables = 2 * pairs * k;
  const int columns = model.placement_variables + model.distance_variables;
  const int rows = m + pairs * k;

  auto& lp = model.lp;
  lp.a = Eigen::MatrixXd::Zero(rows, columns);
  lp.b = Eigen::VectorXd::Zero(rows);
  lp.c = Eigen::VectorXd::Zero(columns);
  lp.basis.assign(rows, -1);

  for (int a = 0; a < m; ++a) {
    for (int i = 0; i < k; ++i) lp.a(a, model.PlacementColumn(a, i)) = 1.0;
    lp.b[a] = 1.0;
    lp.basis[a] = model.PlacementColumn(a, 0);
  }
  for (int e = 0; e < pairs; ++e) {
    const auto [u, v] = model.distance_pairs[e];
    const double w = g.weight(u, v);
    for (int i = 0; i < k; ++i) {
      const int row = m + e * k + i;
      const int plus = model.placement_variables + 2 * (e * k + i);
      lp.a(row, model.PlacementColumn(free_index[u], i)) = 1.0;
      lp.a(row, model.PlacementColumn(free_index[v], i)) = -1.0;
      lp.a(row, plus) = -1.0;
      lp.a(row, plus + 1) = 1.0;
      lp.c[plus] = w / 2.0;
      lp.c[plus + 1] = w / 2.0;
      lp.basis[row] = plus;
    }
  }
  for (Vertex u = 0; u < g.n(); ++u) {
    for (Vertex v = u + 1; v < g.n(); ++v) {
      const int tu = terminal_index[u];
      const int tv = terminal_index[v];
      if (tu >= 0 && tv >= 0) {
        model.constant += g.weight(u, v);
      } else if (tu >= 0 || tv >= 0) {
        const int t = tu >= 0 ? tu : tv;
        const int a = tu >= 0 ? free_index[v] : free_index[u];
        const double coefficient = g.weight(u, v) + noise.values(t, a);
        model.constant += coefficient;
        lp.c[model.PlacementColumn(a, t)] -= coefficient;
      }
    }
  }
  return model;
}

std::string DumpLpModel(const LpModel& model) {
  std::ostringstream out;
  const auto& lp = model.lp;
  out << "min:";
  for (Eigen::Index j = 0; j < lp.c.size(); ++j) {
    if (lp.c[j] != 0.0) out << ' ' << FormatNumber(lp.c[j]) << " x" << j;
  }
  out << " + " << FormatNumber(model.constant) << '\n';
  for (Eigen::Index i = 0; i < lp.a.rows(); ++i) {
    out << 'r' << i << ':';
    for (Eigen::Index j = 0; j < lp.a.cols(); ++j) {
      if (lp.a(i, j) != 0.0) out << ' ' << FormatNumber(lp.a(i, j)) << " x" << j;
    }
    out << " = " << FormatNumber(lp.b[i]) << '\n';
  }
  out << "bounds: x >= 0\n";
  return out.str();
}

LpSolution SolveLp(const LpModel& model) {
  DenseSimplex<double> simplex;
  const SimplexResult<double> result = simplex.Solve(model.lp);
  if (result.status != LpStatus::kOptimal) {
    throw CapabilityError("simplex finished with status " +
                          LpStatusName(result.status));
  }
  const auto& lp = model.lp;
  if (lp.a.rows() > 0) {
    const double residual = (lp.a * result.x - lp.b).cwiseAbs().maxCoeff();
    if (residual > kResidualTolerance) {
      throw CapabilityError("simplex solution violates a row by " +
                            FormatNumber(residual));
    }
  }
  if (result.x.size() > 0 && result.x.minCoeff() < -kCoordinateTolerance) {
    throw CapabilityError("simplex solution has a negative variable");
  }

  LpSolution solution;
  solution.iterations = result.iterations;
  solution.status = result.status;
  solution.placement.points = Eigen::MatrixXd::Zero(model.n, model.k);
  for (int i = 0; i < model.k; ++i) {
    solution.placement.points(model.terminals[i], i) = 1.0;
  }
  for (std::size_t a = 0; a < model.non_terminals.size(); ++a) {
    for (int i = 0; i < model.k; ++i) {
      solution.placement.points(model.non_terminals[a], i) = std::max(
          0.0, result.x[model.PlacementColumn(static_cast<int>(a), i)]);
    }
  }
  solution.objective = result.objective + model.constant;

  // The split variables must realize the absolute differences.
  double recomputed = model.constant;
  for (int j = 0; j < model.placement_variables; ++j) {
    recomputed += lp.c[j] * result.x[j];
  }
  for (std::size_t e = 0; e < model.distance_pairs.size(); ++e) {
    const auto [u, v] = model.distance_pairs[e];
    const double half_weight =
        lp.c[model.placement_variables + 2 * e * model.k];
    recomputed += half_weight * (solution.placement.points.row(u) -
                                 solution.placement.points.row(v))
                                    .cwiseAbs()
                                    .sum();
  }
  if (std::abs(recomputed - solution.objective) >
      kObjectiveTolerance * (1.0 + std::abs(recomputed))) {
    throw CapabilityError("simplex objective disagrees with its placement");
  }
  return solution;
}

LpSolution PrivateSimplexEmbedding(const Graph& g, const TerminalSet& terminals,
                                   double epsilon, RandomSource& rng) {
  const NoiseMatrix noise = SampleNoiseMatrix(g.n(), terminals, epsilon, rng);
  return SolveLp(BuildLp1(g, terminals, noise));
}

Partition ThresholdRounding(const Placement& x, RandomSource& rng) {
  const int k = x.k();
  const double theta = rng.Uniform();
  std::vector<int> order(k);
  std::iota(order.begin(), order.end(), 0);
  std::shuffle(order.begin(), order.end(), rng);
  std::vector<int> labels(x.n(), order.back());
  for (int v = 0; v < x.n(); ++v) {
    for (int r = 0; r + 1 < k; ++r) {
      if (x.points(v, order[r]) >= theta) {
        labels[v] = order[r];
        break;
      }
    }
  }
  return Partition(std::move(labels), k);
}

Partition RoundPlacement(const Placement& x, const TerminalSet& terminals,
                         RandomSource& rng, const RoundingScheme& scheme) {
  x.Validate(terminals);
  Partition p = scheme(x, rng);
  if (p.size() != x.n() || p.k() != x.k()) {
    throw InvalidArgumentError("rounding returned a partition of wrong shape");
  }
  return p;
}

Partition PrivateMultiwayCut(const Graph& g, const TerminalSet& terminals,
                             double epsilon, RandomSource& rng,
                             const RoundingScheme& scheme) {
  const LpSolution embedding =
      PrivateSimplexEmbedding(g, terminals, epsilon, rng);
  return RoundPlacement(embedding.placement, terminals, rng, scheme);
}

DistanceCorrection BuildDistanceCorrection(const Eigen::VectorXd& d_u,
                                           const Eigen::VectorXd& d_v) {
  if (d_u.size() != d_v.size() || d_u.size() < 2) {
    throw InvalidArgumentError("distance vectors must share a size >= 2");
  }
  const Eigen::Index k = d_u.size();
  DistanceCorrection out;
  out.a_u = Eigen::VectorXd::Zero(k);
  out.a_v = Eigen::VectorXd::Zero(k);
  const Eigen::Index larger = (d_u.array() > d_v.array()).count();
  out.swapped = 2 * larger > k;
  const Eigen::VectorXd& first = out.swapped ? d_v : d_u;
  const Eigen::VectorXd& second = out.swapped ? d_u : d_v;
  Eigen::VectorXd& a_first = out.swapped ? out.a_v : out.a_u;
  Eigen::VectorXd& a_second = out.swapped ? out.a_u : out.a_v;
  for (Eigen::Index i = 0; i < k; ++i) {
    if (first[i] > second[i]) {
      a_first[i] = -1.0;
      a_second[i] = 1.0;
    }
  }
  return out;
}

}  // namespace privcut
