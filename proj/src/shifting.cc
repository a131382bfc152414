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

#include "privcut/shifting.h"

#include <algorithm>
#include <cmath>

#include "json.hpp"
#include "privcut/dp.h"
#include "privcut/error.h"
#include "privcut/oracle.h"

namespace privcut {
namespace {

using nlohmann::json;

std::vector<std::size_t> SortedUnique(std::vector<std::size_t> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

double DefaultLiftConstant(double epsilon) { return 20.0 / epsilon; }

double LiftFor(int n, const ShiftOptions& options,
               double fallback_constant) {
  const double c = options.lift_constant.value_or(fallback_constant);
  if (c < 0.0) throw InvalidArgumentError("lift constant must be nonnegative");
  return n > 1 ? c * std::log(static_cast<double>(n)) : 0.0;
}

// Side 0 is the s side. Returns the terminal of `side`.
Vertex SideTerminal(int side, Vertex s, Vertex t) { return side == 0 ? s : t; }

json PartitionJson(const Partition& p) { return p.labels(); }

}  // namespace

std::string CutProblemName(CutProblem problem) {
  switch (problem) {
    case CutProblem::kMinStCut:
      return "min-st-cut";
    case CutProblem::kMulticut:
      return "multicut";
    case CutProblem::kMaxStCut:
      return "max-st-cut";
  }
  return "unknown";
}

bool DominatingSetSpec::Contains(std::size_t pair) const {
  return std::binary_search(pairs.begin(), pairs.end(), pair);
}

DominatingSetSpec StCutDominatingSet(int n, Vertex s, Vertex t) {
  if (s == t || s < 0 || t < 0 || s >= n || t >= n) {
    throw InvalidArgumentError("invalid s-t terminals");
  }
  DominatingSetSpec spec;
  spec.n = n;
  spec.problem = CutProblem::kMinStCut;
  for (Vertex u = 0; u < n; ++u) {
    if (u == s || u == t) continue;
    spec.pairs.push_back(PairIndex(n, s, u));
    spec.pairs.push_back(PairIndex(n, t, u));
  }
  spec.pairs = SortedUnique(std::move(spec.pairs));
  return spec;
}

DominatingSetSpec MaxStCutDominatingSet(int n, Vertex s, Vertex t) {
  DominatingSetSpec spec = StCutDominatingSet(n, s, t);
  spec.problem = CutProblem::kMaxStCut;
  return spec;
}

DominatingSetSpec MulticutDominatingSet(int n, const TerminalSet& pairs) {
  pairs.Validate(n);
  DominatingSetSpec spec;
  spec.n = n;
  spec.problem = CutProblem::kMulticut;
  for (const auto& [s, t] : pairs.pairs) {
    for (Vertex v = 0; v < n; ++v) {
      if (v == s || v == t) continue;
      spec.pairs.push_back(PairIndex(n, s, v));
      spec.pairs.push_back(PairIndex(n, t, v));
    }
  }
  spec.pairs = SortedUnique(std::move(spec.pairs));
  return spec;
}

void CorrectionVector::Add(int n, Vertex u, Vertex v, double amount) {
  const std::size_t p = PairIndex(n, u, v);
  for (std::size_t i = 0; i < support.size(); ++i) {
    if (support[i] == p) {
      amounts[i] += amount;
      return;
    }
  }
  support.push_back(p);
  amounts.push_back(amount);
}

double CorrectionVector::L1Norm() const {
  double total = 0.0;
  for (double a : amounts) total += std::abs(a);
  return total;
}

ShiftPlan ShiftPlan::Make(DominatingSetSpec spec, double epsilon, double lift) {
  PrivacyBudget{epsilon, 0.0}.Validate();
  if (!(spec.sensitivity > 0.0)) {
    throw InvalidArgumentError("sensitivity must be positive");
  }
  if (lift < 0.0) throw InvalidArgumentError("lift must be nonnegative");
  ShiftPlan plan;
  plan.scale = spec.sensitivity / epsilon;
  plan.spec = std::move(spec);
  plan.lift = lift;
  return plan;
}

Graph NoisyGraph(const Graph& g, const ShiftPlan& plan, RandomSource& rng,
                 ShiftStats* stats) {
  if (plan.spec.n != g.n()) {
    throw InvalidArgumentError("shift plan built for a different vertex count");
  }
  Eigen::VectorXd w = g.weights();
  for (std::size_t p : plan.spec.pairs) {
    w[p] += plan.lift + SampleLaplace(plan.scale, rng);
  }
  ShiftStats local;
  for (std::size_t p : plan.spec.pairs) {
    if (w[p] < 0.0) {
      ++local.negative_weights;
      if (plan.clamp_negative) {
        w[p] = 0.0;
        ++local.clamped;
      }
    }
  }
  if (stats != nullptr) *stats = local;
  return Graph::WithSignedWeights(g.n(), std::move(w), g.name());
}

Partition ShiftAndSolve(const Graph& g, const ShiftPlan& plan,
                        const CutSolver& solver, RandomSource& rng,
                        ShiftStats* stats) {
  return solver(NoisyGraph(g, plan, rng, stats));
}

CutSolver MinStCutSolver(Vertex s, Vertex t) {
  return [s, t](const Graph& g) { return ExactMinStCut(g, s, t).partition; };
}

CutSolver MaxStCutSolver(Vertex s, Vertex t) {
  return [s, t](const Graph& g) { return ExactMaxStCut(g, s, t).partition; };
}

CutSolver MulticutSolver(const TerminalSet& pairs) {
  return [pairs](const Graph& g) { return ExactMulticut(g, pairs).partition; };
}

Partition PrivateMinStCut(const Graph& g, Vertex s, Vertex t, double epsilon,
                          RandomSource& rng, const ShiftOptions& options,
                          ShiftStats* stats) {
  ShiftPlan plan =
      ShiftPlan::Make(StCutDominatingSet(g.n(), s, t), epsilon,
                      LiftFor(g.n(), options,
                              DefaultLiftConstant(epsilon)));
  plan.clamp_negative = options.clamp_negative;
  return ShiftAndSolve(g, plan, MinStCutSolver(s, t), rng, stats);
}

Partition PrivateMulticut(const Graph& g, const TerminalSet& pairs,
                          double epsilon, RandomSource& rng,
                          const ShiftOptions& options, ShiftStats* stats) {
  ShiftPlan plan = ShiftPlan::Make(MulticutDominatingSet(g.n(), pairs), epsilon,
                                   LiftFor(g.n(), options, 0.0));
  plan.clamp_negative = options.clamp_negative;
  return ShiftAndSolve(g, plan, MulticutSolver(pairs), rng, stats);
}

Graph AddFreshTerminals(const Graph& g) {
  const int n = g.n();
  Eigen::VectorXd w = Eigen::VectorXd::Zero(PairCount(n + 2));
  std::size_t p = 0;
  for (Vertex i = 0; i < n; ++i) {
    for (Vertex j = i + 1; j < n; ++j, ++p) {
      w[PairIndex(n + 2, i, j)] = g.weights()[p];
    }
  }
  return Graph(n + 2, std::move(w), g.name());
}

Partition PrivateMaxCut(const Graph& g, double epsilon, RandomSource& rng,
                        const ShiftOptions& options, ShiftStats* stats) {
  const int n = g.n();
  const Graph augmented = AddFreshTerminals(g);
  ShiftPlan plan =
      ShiftPlan::Make(MaxStCutDominatingSet(n + 2, n, n + 1), epsilon,
                      LiftFor(n + 2, options,
                              DefaultLiftConstant(epsilon)));
  plan.clamp_negative = options.clamp_negative;
  const Partition full =
      ShiftAndSolve(augmented, plan, MaxStCutSolver(n, n + 1), rng, stats);
  std::vector<int> labels(full.labels().begin(), full.labels().begin() + n);
  return Partition(std::move(labels), 2);
}

CorrectionBuilder StCutCorrectionBuilder(int n, Vertex s, Vertex t) {
  return [n, s, t](const Partition& y, const EdgeDelta& d) {
    CorrectionVector a;
    const Vertex u = d.pair.u;
    const Vertex v = d.pair.v;
    const double z = d.amount;
    const bool u_terminal = u == s || u == t;
    const bool v_terminal = v == s || v == t;
    if (u_terminal && v_terminal) return a;
    if (u_terminal || v_terminal) {
      a.Add(n, u, v, -z);
      return a;
    }
    const int su = y.label(u);
    const int sv = y.label(v);
    if (z >= 0.0) {
      if (su != sv) {
        a.Add(n, SideTerminal(su, s, t), u, 1.0);
        a.Add(n, SideTerminal(sv, s, t), v, 1.0);
      }
    } else if (su == sv) {
      a.Add(n, SideTerminal(su, s, t), u, 1.0);
      a.Add(n, SideTerminal(1 - su, s, t), v, -1.0);
    }
    return a;
  };
}

CorrectionBuilder MaxStCutCorrectionBuilder(int n, Vertex s, Vertex t) {
  return [n, s, t](const Partition& y, const EdgeDelta& d) {
    CorrectionVector a;
    const Vertex u = d.pair.u;
    const Vertex v = d.pair.v;
    const double z = d.amount;
    const bool u_terminal = u == s || u == t;
    const bool v_terminal = v == s || v == t;
    if (u_terminal && v_terminal) return a;
    if (u_terminal || v_terminal) {
      a.Add(n, u, v, -z);
      return a;
    }
    const int su = y.label(u);
    const int sv = y.label(v);
    if (z >= 0.0) {
      if (su == sv) {
        a.Add(n, SideTerminal(su, s, t), u, -1.0);
        a.Add(n, SideTerminal(1 - su, s, t), v, 1.0);
      }
    } else if (su != sv) {
      a.Add(n, SideTerminal(su, s, t), u, -1.0);
      a.Add(n, SideTerminal(sv, s, t), v, -1.0);
    }
    return a;
  };
}

CorrectionBuilder MulticutCorrectionBuilder(int n, const TerminalSet& pairs,
                                            MulticutCorrectionRule rule) {
  const DominatingSetSpec spec = MulticutDominatingSet(n, pairs);
  const std::vector<Vertex> named = pairs.Vertices();
  return [n, spec, named, pairs, rule](const Partition& y,
                                       const EdgeDelta& d) {
    CorrectionVector a;
    const Vertex u = d.pair.u;
    const Vertex v = d.pair.v;
    const double z = d.amount;
    if (spec.Contains(u, v)) {
      a.Add(n, u, v, -z);
      return a;
    }
    const bool u_named =
        std::binary_search(named.begin(), named.end(), u);
    const bool v_named =
        std::binary_search(named.begin(), named.end(), v);
    // A pair outside S touching a terminal is some {s_i, t_i}; it is cut by
    // every feasible labeling.
    if (u_named || v_named) return a;

    auto first_terminal_in = [&](int block) -> Vertex {
      for (Vertex x : named) {
        if (y.label(x) == block) return x;
      }
      throw InvalidArgumentError("block without a terminal");
    };
    const int bu = y.label(u);
    const int bv = y.label(v);
    if (z >= 0.0) {
      if (bu == bv) return a;
      Vertex tu = first_terminal_in(bu);
      Vertex tv = first_terminal_in(bv);
      if (rule == MulticutCorrectionRule::kSeparatedPairs) {
        for (const auto& [s, t] : pairs.pairs) {
          if (y.label(s) == bu && y.label(t) == bv) {
            tu = s;
            tv = t;
            break;
          }
          if (y.label(t) == bu && y.label(s) == bv) {
            tu = t;
            tv = s;
            break;
          }
        }
      }
      a.Add(n, tu, u, 1.0);
      a.Add(n, tv, v, 1.0);
      return a;
    }
    if (bu != bv) return a;
    if (rule == MulticutCorrectionRule::kSeparatedPairs) {
      const Vertex anchor = first_terminal_in(bu);
      a.Add(n, anchor, u, 1.0);
      a.Add(n, anchor, v, 1.0);
      return a;
    }
    for (const auto& [s, t] : pairs.pairs) {
      if (y.label(s) == bu) {
        a.Add(n, s, u, 1.0);
        a.Add(n, t, v, -1.0);
        return a;
      }
      if (y.label(t) == bu) {
        a.Add(n, t, u, 1.0);
        a.Add(n, s, v, -1.0);
        return a;
      }
    }
    throw InvalidArgumentError("block without a terminal pair member");
  };
}

CorrectionVector VerifyDominatingSet(const Graph& g,
                                     const DominatingSetSpec& spec,
                                     const CutSolver& solver,
                                     const EdgeDelta& delta,
                                     const CorrectionBuilder& builder) {
  if (spec.n != g.n()) {
    throw InvalidArgumentError("dominating set built for a different n");
  }
  const Partition before = solver(g);
  const CorrectionVector a = builder(before, delta);
  const Graph changed = ApplyDelta(g, delta);
  Eigen::VectorXd w = changed.weights();
  for (std::size_t i = 0; i < a.support.size(); ++i) {
    w[a.support[i]] += a.amounts[i];
  }
  const Graph corrected = Graph::WithSignedWeights(g.n(), std::move(w));
  const Partition after = solver(corrected);

  std::string failure;
  if (a.L1Norm() > spec.sensitivity + 1e-12) {
    failure = "correction norm exceeds the sensitivity";
  }
  for (std::size_t p : a.support) {
    if (!spec.Contains(p)) failure = "correction leaves the dominating set";
  }
  if (failure.empty() && !SamePartition(before, after)) {
    failure = "correction does not restore the solver output";
  }
  if (failure.empty()) return a;

  json report;
  report["problem"] = CutProblemName(spec.problem);
  report["reason"] = failure;
  report["n"] = g.n();
  report["weights"] = std::vector<double>(g.weights().data(),
                                          g.weights().data() + g.weights().size());
  report["delta"] = {{"u", delta.pair.u}, {"v", delta.pair.v},
                     {"amount", delta.amount}};
  json correction = json::array();
  for (std::size_t i = 0; i < a.support.size(); ++i) {
    const VertexPair pr = PairAt(g.n(), a.support[i]);
    correction.push_back({{"u", pr.u}, {"v", pr.v}, {"amount", a.amounts[i]}});
  }
  report["correction"] = correction;
  report["solver_before"] = PartitionJson(before);
  report["solver_after"] = PartitionJson(after);
  throw PropertyViolation(failure, report.dump());
}

}  // namespace privcut
