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

#ifndef PRIVCUT_HARNESS_H_
#define PRIVCUT_HARNESS_H_

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "json.hpp"
#include "privcut/dp.h"
#include "privcut/graph.h"
#include "privcut/instances.h"
#include "privcut/random.h"

namespace privcut {

enum class Objective { kMinimize, kMaximize };

struct MechanismParams {
  double epsilon = 1.0;
  double delta = 1e-6;
  int k = 2;
  // Unset: a default terminal set derived from n and k (see ResolveTerminals).
  std::optional<TerminalSet> terminals;

  nlohmann::json ToJson() const;
};

enum class TerminalNeed { kNone, kSt, kMultiway, kPairs };

// Explicit terminals when given, else: s = 0, t = n - 1; multiway terminals
// 0 .. k-1; pairs (0, 1), (2, 3), ... k of them.
TerminalSet ResolveTerminals(TerminalNeed need, int n,
                             const MechanismParams& params);

using MechanismFn = std::function<Partition(const Graph&, const MechanismParams&,
                                            RandomSource&)>;

struct MechanismInfo {
  std::string tag;
  std::string summary;
  Objective objective = Objective::kMinimize;
  TerminalNeed terminals = TerminalNeed::kNone;
  bool is_private = true;
  MechanismFn run;
  // Exact optimum of the same problem. May throw CapabilityError.
  std::function<double(const Graph&, const MechanismParams&)> optimum;
  // Claimed privacy cost of one run.
  std::function<PrivacyBudget(const Graph&, const MechanismParams&)> budget;
  // Reference additive-error curve; null when there is none.
  std::function<double(const Graph&, const MechanismParams&)> theory;
};

const std::vector<MechanismInfo>& Mechanisms();
// Throws InvalidArgumentError for an unknown tag.
const MechanismInfo& FindMechanism(const std::string& tag);

struct TrialReport {
  InstanceSpec instance;
  int instance_index = 0;
  std::string mechanism;
  MechanismParams params;
  int trial = 0;
  std::uint64_t seed = 0;
  std::optional<Partition> output;
  double cost = 0.0;
  std::optional<double> optimum;
  // cost - OPT when minimizing, OPT - cost when maximizing.
  std::optional<double> additive_error;
  // cost / OPT when minimizing, OPT / cost when maximizing; unset when the
  // denominator is zero.
  std::optional<double> ratio;
  PrivacyBudget budget;
  std::optional<double> wall_seconds;
  std::string error;

  nlohmann::json ToJson() const;
};

struct RunOptions {
  int workers = 1;
  bool record_time = false;
};

// Seed of trial t on instance i: DeriveSeed(master_seed, i, t). Reports come
// back in (instance, trial) order whatever the worker count. Failures are
// recorded in TrialReport::error.
std::vector<TrialReport> RunTrials(const MechanismInfo& mechanism,
                                   const std::vector<InstanceSpec>& instances,
                                   int trials, std::uint64_t master_seed,
                                   const MechanismParams& params,
                                   const RunOptions& options = {});

// Column order of the CSV form; wall_seconds is appended when timing.
const std::vector<std::string>& TrialCsvColumns();
void WriteTrialsCsv(std::ostream& out, const std::vector<TrialReport>& reports,
                    bool with_time = false);
void WriteTrialsJsonLines(std::ostream& out,
                          const std::vector<TrialReport>& reports);

// Mean additive error over rows that carry one.
std::optional<double> MeanAdditiveError(
    const std::vector<TrialReport>& reports);

// Clopper-Pearson interval for `successes` out of `trials`.
struct Interval {
  double lo = 0.0;
  double hi = 1.0;
};
Interval ClopperPearson(std::uint64_t successes, std::uint64_t trials,
                        double confidence);

struct AuditOptions {
  std::uint64_t trials = 100000;
  std::uint64_t count_floor = 20;
  double confidence = 0.99;
  std::uint64_t seed = 0;
  int workers = 1;
  // Histograms with more distinct outputs than this raise CapabilityError.
  std::size_t max_outputs = 1u << 16;
};

struct AuditOutput {
  std::string key;
  double p = 0.0;
  double q = 0.0;
  std::uint64_t count_p = 0;
  std::uint64_t count_q = 0;
  // |log(p / q)|; set when both counts reach the floor (or for exact audits).
  std::optional<double> log_ratio;
  // Lower confidence bound on |log(p / q)|.
  double log_ratio_lower = 0.0;
};

struct AuditReport {
  std::string neighbor;
  double epsilon = 0.0;
  std::uint64_t trials = 0;
  std::string ci_method;
  std::vector<AuditOutput> outputs;
  // Largest resolved |log ratio|.
  double max_log_ratio = 0.0;
  // Largest lower confidence bound; the verdict compares this with epsilon.
  double max_log_ratio_lower = 0.0;
  // Average of both sides' mass on outputs below the floor on either side.
  double unresolved_mass = 0.0;
  bool pass = true;

  // "PASS max-log-ratio 0.000" style one-liner.
  std::string Summary() const;
  nlohmann::json ToJson() const;
};

using Sampler = std::function<Partition(const Graph&, RandomSource&)>;

std::string DescribeDelta(const EdgeDelta& delta);

// Runs `mechanism` trials times on g and on ApplyDelta(g, delta), histograms
// canonical labelings, and tests every output against e^epsilon with
// Bonferroni-corrected Clopper-Pearson bounds.
AuditReport AuditPrivacy(const Sampler& mechanism, const Graph& g,
                         const EdgeDelta& delta, double epsilon,
                         const AuditOptions& options = {});

// Audit of two exact output distributions keyed by canonical labeling.
AuditReport AuditExact(const std::map<std::vector<int>, double>& p,
                       const std::map<std::vector<int>, double>& q,
                       double epsilon, const std::string& neighbor = {});

struct CurvePoint {
  double x = 0.0;
  int trials = 0;
  double mean_error = 0.0;
  double median_error = 0.0;
  double q90_error = 0.0;
  std::optional<double> theory;
};

struct ErrorCurve {
  std::string mechanism;
  std::string parameter;
  std::vector<CurvePoint> points;

  // Spearman correlation of x against mean error.
  double Spearman() const;
  void WriteCsv(std::ostream& out) const;
};

double SpearmanCorrelation(const std::vector<double>& x,
                           const std::vector<double>& y);

// One point per epsilon on a fixed instance.
ErrorCurve SweepEpsilon(const MechanismInfo& mechanism,
                        const InstanceSpec& instance,
                        const std::vector<double>& epsilons, int trials,
                        std::uint64_t master_seed, MechanismParams params,
                        const RunOptions& options = {});

// One point per n; `make` builds the instance for each n.
ErrorCurve SweepN(const MechanismInfo& mechanism,
                  const std::function<InstanceSpec(int)>& make,
                  const std::vector<int>& ns, int trials,
                  std::uint64_t master_seed, const MechanismParams& params,
                  const RunOptions& options = {});

}  // namespace privcut

#endif  // PRIVCUT_HARNESS_H_
