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

#include "privcut/harness.h"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>
#include <mutex>
#include <numeric>
#include <thread>

#include <boost/math/distributions/beta.hpp>

#include "privcut/error.h"
#include "privcut/kcut.h"
#include "privcut/multiway.h"
#include "privcut/oracle.h"
#include "privcut/shifting.h"

namespace privcut {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

PrivacyBudget NotPrivate(const Graph&, const MechanismParams&) {
  return PrivacyBudget{kInf, 0.0};
}

PrivacyBudget PureEpsilon(const Graph&, const MechanismParams& p) {
  return PrivacyBudget{p.epsilon, 0.0};
}

double LogN(const Graph& g) { return std::log(static_cast<double>(g.n())); }

TerminalSet St(const Graph& g, const MechanismParams& p) {
  return ResolveTerminals(TerminalNeed::kSt, g.n(), p);
}

std::vector<MechanismInfo> BuildRegistry() {
  std::vector<MechanismInfo> r;

  MechanismInfo m;
  m.tag = "shift-min-st-cut";
  m.summary = "shifting mechanism, Laplace noise on terminal pairs, min s-t cut";
  m.terminals = TerminalNeed::kSt;
  m.run = [](const Graph& g, const MechanismParams& p, RandomSource& rng) {
    const TerminalSet t = St(g, p);
    return PrivateMinStCut(g, t.pairs[0].first, t.pairs[0].second, p.epsilon,
                           rng);
  };
  m.optimum = [](const Graph& g, const MechanismParams& p) {
    const TerminalSet t = St(g, p);
    return ExactMinStCut(g, t.pairs[0].first, t.pairs[0].second).cost;
  };
  m.budget = PureEpsilon;
  r.push_back(m);

  m = MechanismInfo{};
  m.tag = "shift-multicut";
  m.summary = "shifting mechanism for multicut over k terminal pairs";
  m.terminals = TerminalNeed::kPairs;
  m.run = [](const Graph& g, const MechanismParams& p, RandomSource& rng) {
    return PrivateMulticut(
        g, ResolveTerminals(TerminalNeed::kPairs, g.n(), p), p.epsilon, rng);
  };
  m.optimum = [](const Graph& g, const MechanismParams& p) {
    return ExactMulticut(g, ResolveTerminals(TerminalNeed::kPairs, g.n(), p))
        .cost;
  };
  m.budget = PureEpsilon;
  r.push_back(m);

  m = MechanismInfo{};
  m.tag = "shift-max-cut";
  m.summary = "shifting mechanism for max cut through fresh s and t";
  m.objective = Objective::kMaximize;
  m.run = [](const Graph& g, const MechanismParams& p, RandomSource& rng) {
    return PrivateMaxCut(g, p.epsilon, rng);
  };
  m.optimum = [](const Graph& g, const MechanismParams&) {
    return ExactMaxCut(g).cost;
  };
  m.budget = PureEpsilon;
  r.push_back(m);

  m = MechanismInfo{};
  m.tag = "multiway-lp";
  m.summary = "noisy simplex-embedding LP plus threshold rounding";
  m.terminals = TerminalNeed::kMultiway;
  m.run = [](const Graph& g, const MechanismParams& p, RandomSource& rng) {
    return PrivateMultiwayCut(
        g, ResolveTerminals(TerminalNeed::kMultiway, g.n(), p), p.epsilon, rng);
  };
  m.optimum = [](const Graph& g, const MechanismParams& p) {
    return ExactMultiwayCut(
               g, ResolveTerminals(TerminalNeed::kMultiway, g.n(), p))
        .cost;
  };
  m.budget = PureEpsilon;
  m.theory = [](const Graph& g, const MechanismParams& p) {
    const int k = ResolveTerminals(TerminalNeed::kMultiway, g.n(), p).k();
    return 10.0 * g.n() * k * std::log(static_cast<double>(k)) / p.epsilon;
  };
  r.push_back(m);

  auto kcut_optimum = [](const Graph& g, const MechanismParams& p) {
    return ExactMinKCut(g, p.k).cost;
  };
  auto kcut_theory = [](const Graph& g, const MechanismParams& p) {
    return (8.0 * p.k + 4.0) * LogN(g) / p.epsilon;
  };

  m = MechanismInfo{};
  m.tag = "kcut-exp";
  m.summary = "augmentation chain plus exponential mechanism over all k-cuts";
  m.run = [](const Graph& g, const MechanismParams& p, RandomSource& rng) {
    return PrivateKCutExponential(g, p.k, p.epsilon, rng);
  };
  m.optimum = kcut_optimum;
  m.budget = [](const Graph&, const MechanismParams& p) {
    return PrivacyBudget{2.0 * p.epsilon, 0.0};
  };
  m.theory = kcut_theory;
  r.push_back(m);

  m = MechanismInfo{};
  m.tag = "kcut-exp-restricted";
  m.summary = "k-cut mechanism over cuts within (1 + k/(k-1)) OPT, exhaustive";
  m.run = [](const Graph& g, const MechanismParams& p, RandomSource& rng) {
    KCutMechanismOptions o;
    o.support = KCutSupport::kRestricted;
    return PrivateKCutExponential(g, p.k, p.epsilon, rng, o);
  };
  m.optimum = kcut_optimum;
  m.budget = [](const Graph& g, const MechanismParams& p) {
    return PrivacyBudget{2.0 * p.epsilon,
                         1.0 / (static_cast<double>(g.n()) * g.n())};
  };
  m.theory = kcut_theory;
  r.push_back(m);

  m.tag = "kcut-exp-contraction";
  m.summary = "k-cut mechanism over a random-contraction catalog";
  m.run = [](const Graph& g, const MechanismParams& p, RandomSource& rng) {
    KCutMechanismOptions o;
    o.support = KCutSupport::kRestricted;
    o.catalog = CatalogSource::kContraction;
    return PrivateKCutExponential(g, p.k, p.epsilon, rng, o);
  };
  r.push_back(m);

  m = MechanismInfo{};
  m.tag = "private-min-cut";
  m.summary = "k = 2 chain mechanism, epsilon/2 per step, restricted support";
  m.run = [](const Graph& g, const MechanismParams& p, RandomSource& rng) {
    return PrivateMinCut(g, p.epsilon, p.delta, rng);
  };
  m.optimum = [](const Graph& g, const MechanismParams&) {
    return GlobalMinCutValue(g);
  };
  m.budget = [](const Graph&, const MechanismParams& p) {
    return PrivacyBudget{p.epsilon, p.delta};
  };
  m.theory = [](const Graph& g, const MechanismParams& p) {
    return 20.0 * LogN(g) / p.epsilon;
  };
  r.push_back(m);

  m = MechanismInfo{};
  m.tag = "split";
  m.summary = "private greedy splitting, k - 1 rounds of piece choice + min cut";
  m.run = [](const Graph& g, const MechanismParams& p, RandomSource& rng) {
    return PrivateSplitKCut(g, p.k, p.epsilon, p.delta, rng);
  };
  m.optimum = kcut_optimum;
  m.budget = [](const Graph&, const MechanismParams& p) {
    return Compose(SplitLedger(p.k, p.epsilon, p.delta));
  };
  m.theory = [](const Graph& g, const MechanismParams& p) {
    return 156.0 * std::pow(p.k, 1.5) * LogN(g) *
           std::sqrt(std::log(2.0 / p.delta)) / p.epsilon;
  };
  r.push_back(m);

  m = MechanismInfo{};
  m.tag = "split-noiseless";
  m.summary = "greedy splitting with exact choices (not private)";
  m.is_private = false;
  m.run = [](const Graph& g, const MechanismParams& p, RandomSource& rng) {
    SplitOptions o;
    o.noiseless = true;
    return PrivateSplitKCut(g, p.k, 1.0, 0.5, rng, o);
  };
  m.optimum = kcut_optimum;
  m.budget = NotPrivate;
  r.push_back(m);

  m = MechanismInfo{};
  m.tag = "exact-min-cut";
  m.summary = "exact global minimum cut (not private)";
  m.is_private = false;
  m.run = [](const Graph& g, const MechanismParams&, RandomSource&) {
    return ExactMinKCut(g, 2).partition;
  };
  m.optimum = [](const Graph& g, const MechanismParams&) {
    return GlobalMinCutValue(g);
  };
  m.budget = NotPrivate;
  r.push_back(m);

  m = MechanismInfo{};
  m.tag = "exact-min-st-cut";
  m.summary = "exact minimum s-t cut (not private)";
  m.is_private = false;
  m.terminals = TerminalNeed::kSt;
  m.run = [](const Graph& g, const MechanismParams& p, RandomSource&) {
    const TerminalSet t = St(g, p);
    return ExactMinStCut(g, t.pairs[0].first, t.pairs[0].second).partition;
  };
  m.optimum = r.front().optimum;
  m.budget = NotPrivate;
  r.push_back(m);

  m = MechanismInfo{};
  m.tag = "exact-multiway";
  m.summary = "exact multiway cut (not private)";
  m.is_private = false;
  m.terminals = TerminalNeed::kMultiway;
  m.run = [](const Graph& g, const MechanismParams& p, RandomSource&) {
    return ExactMultiwayCut(
               g, ResolveTerminals(TerminalNeed::kMultiway, g.n(), p))
        .partition;
  };
  m.optimum = r[3].optimum;
  m.budget = NotPrivate;
  r.push_back(m);

  m = MechanismInfo{};
  m.tag = "exact-min-kcut";
  m.summary = "exact minimum k-cut (not private)";
  m.is_private = false;
  m.run = [](const Graph& g, const MechanismParams& p, RandomSource&) {
    return ExactMinKCut(g, p.k).partition;
  };
  m.optimum = kcut_optimum;
  m.budget = NotPrivate;
  r.push_back(m);

  m = MechanismInfo{};
  m.tag = "constant";
  m.summary = "every vertex in one block, whatever the input";
  m.run = [](const Graph& g, const MechanismParams&, RandomSource&) {
    return Partition(std::vector<int>(g.n(), 0), 1);
  };
  m.budget = [](const Graph&, const MechanismParams&) {
    return PrivacyBudget{0.0, 0.0};
  };
  r.push_back(m);
  return r;
}

std::string Number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string Optional(const std::optional<double>& v) {
  return v ? Number(*v) : std::string();
}

std::string CsvEscape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string JoinLabels(const Partition& p) {
  std::string out;
  for (int i = 0; i < p.size(); ++i) {
    if (i > 0) out += ' ';
    out += std::to_string(p.label(i));
  }
  return out;
}

nlohmann::json JsonNumber(double v) {
  if (std::isfinite(v)) return v;
  return Number(v);
}

nlohmann::json JsonOptional(const std::optional<double>& v) {
  if (!v) return nullptr;
  return JsonNumber(*v);
}

// Runs fn(i) for i in [0, count) on `workers` threads.
void ParallelFor(std::size_t count, int workers,
                 const std::function<void(std::size_t)>& fn) {
  const int threads =
      std::max(1, std::min<int>(workers, static_cast<int>(count)));
  if (threads <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  for (int t = 0; t < threads; ++t) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) fn(i);
    });
  }
  for (auto& th : pool) th.join();
}

}  // namespace

nlohmann::json MechanismParams::ToJson() const {
  nlohmann::json j = {{"epsilon", epsilon}, {"delta", delta}, {"k", k}};
  if (terminals) {
    if (terminals->kind == TerminalSet::Kind::kMultiway) {
      j["terminals"] = terminals->terminals;
    } else {
      nlohmann::json pairs = nlohmann::json::array();
      for (const auto& [s, t] : terminals->pairs) pairs.push_back({s, t});
      j["terminals"] = pairs;
    }
  }
  return j;
}

TerminalSet ResolveTerminals(TerminalNeed need, int n,
                             const MechanismParams& params) {
  if (params.terminals) {
    const TerminalSet& t = *params.terminals;
    const bool ok =
        (need == TerminalNeed::kMultiway &&
         t.kind == TerminalSet::Kind::kMultiway) ||
        (need == TerminalNeed::kSt && t.kind != TerminalSet::Kind::kMultiway &&
         t.pairs.size() == 1) ||
        (need == TerminalNeed::kPairs && t.kind != TerminalSet::Kind::kMultiway);
    if (!ok) throw InvalidArgumentError("terminal set does not fit mechanism");
    t.Validate(n);
    return t;
  }
  switch (need) {
    case TerminalNeed::kSt:
      if (n < 2) throw InvalidArgumentError("an s-t cut needs two vertices");
      return TerminalSet::St(0, n - 1);
    case TerminalNeed::kMultiway: {
      if (params.k < 2 || params.k > n) {
        throw InvalidArgumentError("need 2 <= k <= n terminals");
      }
      std::vector<Vertex> t(params.k);
      std::iota(t.begin(), t.end(), 0);
      return TerminalSet::Multiway(t);
    }
    case TerminalNeed::kPairs: {
      if (params.k < 1 || 2 * params.k > n) {
        throw InvalidArgumentError("need 1 <= k and 2k <= n for pairs");
      }
      std::vector<std::pair<Vertex, Vertex>> pairs;
      for (int i = 0; i < params.k; ++i) pairs.emplace_back(2 * i, 2 * i + 1);
      return TerminalSet::Pairs(pairs);
    }
    case TerminalNeed::kNone:
      break;
  }
  throw InvalidArgumentError("mechanism takes no terminals");
}

const std::vector<MechanismInfo>& Mechanisms() {
  static const std::vector<MechanismInfo> registry = BuildRegistry();
  return registry;
}

const MechanismInfo& FindMechanism(const std::string& tag) {
  for (const MechanismInfo& m : Mechanisms()) {
    if (m.tag == tag) return m;
  }
  throw InvalidArgumentError("unknown mechanism '" + tag + "'");
}

nlohmann::json TrialReport::ToJson() const {
  nlohmann::json j;
  j["instance"] = instance.ToJson();
  j["instance_index"] = instance_index;
  j["mechanism"] = mechanism;
  j["params"] = params.ToJson();
  j["trial"] = trial;
  j["seed"] = seed;
  j["labels"] = output ? nlohmann::json(output->labels()) : nullptr;
  j["cost"] = JsonNumber(cost);
  j["optimum"] = JsonOptional(optimum);
  j["additive_error"] = JsonOptional(additive_error);
  j["ratio"] = JsonOptional(ratio);
  j["budget"] = {{"epsilon", JsonNumber(budget.epsilon)},
                 {"delta", budget.delta}};
  if (wall_seconds) j["wall_seconds"] = *wall_seconds;
  j["error"] = error;
  return j;
}

std::vector<TrialReport> RunTrials(const MechanismInfo& mechanism,
                                   const std::vector<InstanceSpec>& instances,
                                   int trials, std::uint64_t master_seed,
                                   const MechanismParams& params,
                                   const RunOptions& options) {
  if (trials < 0) throw InvalidArgumentError("trials must be >= 0");
  std::vector<TrialReport> reports;
  if (trials == 0 || instances.empty()) return reports;

  struct Prepared {
    Instance instance;
    MechanismParams params;
    std::optional<double> optimum;
    PrivacyBudget budget;
  };
  std::vector<Prepared> prepared;
  for (const InstanceSpec& spec : instances) {
    Prepared p{Generate(spec), params, std::nullopt, {}};
    if (!p.params.terminals && p.instance.terminals &&
        mechanism.terminals != TerminalNeed::kNone) {
      p.params.terminals = p.instance.terminals;
    }
    if (mechanism.optimum) {
      try {
        p.optimum = mechanism.optimum(p.instance.graph, p.params);
      } catch (const CapabilityError&) {
        p.optimum.reset();
      }
    }
    p.budget = mechanism.budget(p.instance.graph, p.params);
    prepared.push_back(std::move(p));
  }

  const std::size_t total = prepared.size() * static_cast<std::size_t>(trials);
  reports.resize(total);
  ParallelFor(total, options.workers, [&](std::size_t job) {
    const int i = static_cast<int>(job / trials);
    const int t = static_cast<int>(job % trials);
    const Prepared& p = prepared[i];
    TrialReport& r = reports[job];
    r.instance = p.instance.spec;
    r.instance_index = i;
    r.mechanism = mechanism.tag;
    r.params = p.params;
    r.trial = t;
    r.seed = DeriveSeed(master_seed, i, t);
    r.optimum = p.optimum;
    r.budget = p.budget;
    const auto start = std::chrono::steady_clock::now();
    try {
      RandomSource rng(r.seed);
      r.output = mechanism.run(p.instance.graph, p.params, rng);
      r.cost = CutCost(p.instance.graph, *r.output);
      if (r.optimum) {
        const bool minimize = mechanism.objective == Objective::kMinimize;
        r.additive_error = minimize ? r.cost - *r.optimum : *r.optimum - r.cost;
        const double denominator = minimize ? *r.optimum : r.cost;
        const double numerator = minimize ? r.cost : *r.optimum;
        if (denominator != 0.0) r.ratio = numerator / denominator;
      }
    } catch (const std::exception& e) {
      r.output.reset();
      r.error = e.what();
    }
    if (options.record_time) {
      r.wall_seconds = std::chrono::duration<double>(
                           std::chrono::steady_clock::now() - start)
                           .count();
    }
  });
  return reports;
}

const std::vector<std::string>& TrialCsvColumns() {
  static const std::vector<std::string> columns = {
      "instance_index", "family",         "instance_seed", "mechanism",
      "epsilon",        "delta",          "k",             "trial",
      "seed",           "cost",           "optimum",       "additive_error",
      "ratio",          "budget_epsilon", "budget_delta",  "labels",
      "error"};
  return columns;
}

void WriteTrialsCsv(std::ostream& out, const std::vector<TrialReport>& reports,
                    bool with_time) {
  const auto& columns = TrialCsvColumns();
  for (std::size_t i = 0; i < columns.size(); ++i) {
    out << (i ? "," : "") << columns[i];
  }
  if (with_time) out << ",wall_seconds";
  out << '\n';
  for (const TrialReport& r : reports) {
    out << r.instance_index << ',' << CsvEscape(r.instance.family) << ','
        << r.instance.seed << ',' << CsvEscape(r.mechanism) << ','
        << Number(r.params.epsilon) << ',' << Number(r.params.delta) << ','
        << r.params.k << ',' << r.trial << ',' << r.seed << ','
        << (r.output ? Number(r.cost) : std::string()) << ','
        << Optional(r.optimum) << ',' << Optional(r.additive_error) << ','
        << Optional(r.ratio) << ',' << Number(r.budget.epsilon) << ','
        << Number(r.budget.delta) << ','
        << (r.output ? JoinLabels(*r.output) : std::string()) << ','
        << CsvEscape(r.error);
    if (with_time) out << ',' << Optional(r.wall_seconds);
    out << '\n';
  }
}

void WriteTrialsJsonLines(std::ostream& out,
                          const std::vector<TrialReport>& reports) {
  for (const TrialReport& r : reports) out << r.ToJson().dump() << '\n';
}

std::optional<double> MeanAdditiveError(
    const std::vector<TrialReport>& reports) {
  double sum = 0.0;
  int count = 0;
  for (const TrialReport& r : reports) {
    if (r.additive_error) {
      sum += *r.additive_error;
      ++count;
    }
  }
  if (count == 0) return std::nullopt;
  return sum / count;
}

Interval ClopperPearson(std::uint64_t successes, std::uint64_t trials,
                        double confidence) {
  if (trials == 0 || successes > trials) {
    throw InvalidArgumentError("need 0 <= successes <= trials, trials > 0");
  }
  if (!(confidence > 0.0 && confidence < 1.0)) {
    throw InvalidArgumentError("confidence must lie in (0, 1)");
  }
  const double tail = (1.0 - confidence) / 2.0;
  const double x = static_cast<double>(successes);
  const double n = static_cast<double>(trials);
  Interval ci;
  if (successes > 0) {
    ci.lo = boost::math::quantile(boost::math::beta_distribution<>(x, n - x + 1),
                                  tail);
  }
  if (successes < trials) {
    ci.hi = boost::math::quantile(
        boost::math::beta_distribution<>(x + 1, n - x), 1.0 - tail);
  }
  return ci;
}

std::string AuditReport::Summary() const {
  char buf[160];
  std::snprintf(buf, sizeof(buf), "%s max-log-ratio %.3f",
                pass ? "PASS" : "FAIL", max_log_ratio);
  std::string out = buf;
  if (!pass || unresolved_mass > 0.0) {
    std::snprintf(buf, sizeof(buf), " lower-bound %.3f unresolved-mass %.4f",
                  max_log_ratio_lower, unresolved_mass);
    out += buf;
  }
  return out;
}

nlohmann::json AuditReport::ToJson() const {
  nlohmann::json j;
  j["neighbor"] = neighbor;
  j["epsilon"] = epsilon;
  j["trials"] = trials;
  j["ci_method"] = ci_method;
  j["max_log_ratio"] = JsonNumber(max_log_ratio);
  j["max_log_ratio_lower"] = JsonNumber(max_log_ratio_lower);
  j["unresolved_mass"] = unresolved_mass;
  j["pass"] = pass;
  j["outputs"] = nlohmann::json::array();
  for (const AuditOutput& o : outputs) {
    j["outputs"].push_back({{"key", o.key},
                            {"p", o.p},
                            {"q", o.q},
                            {"count_p", o.count_p},
                            {"count_q", o.count_q},
                            {"log_ratio", JsonOptional(o.log_ratio)},
                            {"log_ratio_lower", JsonNumber(o.log_ratio_lower)}});
  }
  return j;
}

std::string DescribeDelta(const EdgeDelta& delta) {
  char buf[96];
  std::snprintf(buf, sizeof(buf), "pair {%d,%d} %+g", delta.pair.u,
                delta.pair.v, delta.amount);
  return buf;
}

AuditReport AuditPrivacy(const Sampler& mechanism, const Graph& g,
                         const EdgeDelta& delta, double epsilon,
                         const AuditOptions& options) {
  if (options.trials == 0) throw InvalidArgumentError("audit needs trials");
  const Graph neighbor = ApplyDelta(g, delta);
  const int workers = std::max(1, options.workers);
  std::vector<std::map<std::string, std::uint64_t>> hist_p(workers);
  std::vector<std::map<std::string, std::uint64_t>> hist_q(workers);
  std::atomic<bool> overflow{false};
  ParallelFor(static_cast<std::size_t>(workers), workers, [&](std::size_t w) {
    for (std::uint64_t t = w; t < options.trials; t += workers) {
      if (overflow) return;
      RandomSource a(DeriveSeed(options.seed, 0, t));
      RandomSource b(DeriveSeed(options.seed, 1, t));
      ++hist_p[w][mechanism(g, a).Canonicalized().Key()];
      ++hist_q[w][mechanism(neighbor, b).Canonicalized().Key()];
      if (hist_p[w].size() > options.max_outputs ||
          hist_q[w].size() > options.max_outputs) {
        overflow = true;
      }
    }
  });
  if (overflow) {
    throw CapabilityError("audit histogram exceeds the output limit");
  }
  std::map<std::string, std::pair<std::uint64_t, std::uint64_t>> counts;
  for (int w = 0; w < workers; ++w) {
    for (const auto& [key, c] : hist_p[w]) counts[key].first += c;
    for (const auto& [key, c] : hist_q[w]) counts[key].second += c;
  }

  AuditReport report;
  report.neighbor = DescribeDelta(delta);
  report.epsilon = epsilon;
  report.trials = options.trials;
  std::size_t tested = 0;
  for (const auto& [key, c] : counts) {
    if (c.first >= options.count_floor || c.second >= options.count_floor) {
      ++tested;
    }
  }
  const double per_output =
      1.0 - (1.0 - options.confidence) / std::max<std::size_t>(1, tested);
  char method[128];
  std::snprintf(method, sizeof(method),
                "clopper-pearson %.4g%% with bonferroni over %zu outputs, "
                "count floor %llu",
                100.0 * options.confidence, tested,
                static_cast<unsigned long long>(options.count_floor));
  report.ci_method = method;

  const double n = static_cast<double>(options.trials);
  for (const auto& [key, c] : counts) {
    AuditOutput o;
    o.key = key;
    o.count_p = c.first;
    o.count_q = c.second;
    o.p = c.first / n;
    o.q = c.second / n;
    const bool both = c.first >= options.count_floor &&
                      c.second >= options.count_floor;
    const bool either = c.first >= options.count_floor ||
                        c.second >= options.count_floor;
    if (both) {
      o.log_ratio = std::abs(std::log(o.p / o.q));
      report.max_log_ratio = std::max(report.max_log_ratio, *o.log_ratio);
    } else {
      report.unresolved_mass += (o.p + o.q) / 2.0;
    }
    if (either) {
      const Interval ip = ClopperPearson(c.first, options.trials, per_output);
      const Interval iq = ClopperPearson(c.second, options.trials, per_output);
      double lower = 0.0;
      if (ip.lo > 0.0) lower = std::max(lower, std::log(ip.lo / iq.hi));
      if (iq.lo > 0.0) lower = std::max(lower, std::log(iq.lo / ip.hi));
      o.log_ratio_lower = lower;
      report.max_log_ratio_lower =
          std::max(report.max_log_ratio_lower, lower);
    }
    report.outputs.push_back(std::move(o));
  }
  report.pass = report.max_log_ratio_lower <= epsilon;
  return report;
}

AuditReport AuditExact(const std::map<std::vector<int>, double>& p,
                       const std::map<std::vector<int>, double>& q,
                       double epsilon, const std::string& neighbor) {
  std::map<std::string, std::pair<double, double>> merged;
  for (const auto& [labels, v] : p) {
    merged[Partition::Canonical(labels).Key()].first += v;
  }
  for (const auto& [labels, v] : q) {
    merged[Partition::Canonical(labels).Key()].second += v;
  }
  AuditReport report;
  report.neighbor = neighbor;
  report.epsilon = epsilon;
  report.ci_method = "exact";
  for (const auto& [key, v] : merged) {
    AuditOutput o;
    o.key = key;
    o.p = v.first;
    o.q = v.second;
    if (o.p == 0.0 && o.q == 0.0) continue;
    const double r = (o.p == 0.0 || o.q == 0.0)
                         ? kInf
                         : std::abs(std::log(o.p) - std::log(o.q));
    o.log_ratio = r;
    o.log_ratio_lower = r;
    report.max_log_ratio = std::max(report.max_log_ratio, r);
    report.outputs.push_back(std::move(o));
  }
  report.max_log_ratio_lower = report.max_log_ratio;
  report.pass = report.max_log_ratio <= epsilon * (1.0 + 1e-12) + 1e-12;
  return report;
}

double SpearmanCorrelation(const std::vector<double>& x,
                           const std::vector<double>& y) {
  if (x.size() != y.size()) throw InvalidArgumentError("length mismatch");
  const std::size_t n = x.size();
  if (n < 2) return 0.0;
  auto ranks = [n](const std::vector<double>& v) {
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return v[a] < v[b]; });
    std::vector<double> r(n);
    for (std::size_t i = 0; i < n;) {
      std::size_t j = i;
      while (j + 1 < n && v[order[j + 1]] == v[order[i]]) ++j;
      const double average = (i + j) / 2.0 + 1.0;
      for (std::size_t t = i; t <= j; ++t) r[order[t]] = average;
      i = j + 1;
    }
    return r;
  };
  const std::vector<double> rx = ranks(x);
  const std::vector<double> ry = ranks(y);
  const double mx = std::accumulate(rx.begin(), rx.end(), 0.0) / n;
  const double my = std::accumulate(ry.begin(), ry.end(), 0.0) / n;
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sxy += (rx[i] - mx) * (ry[i] - my);
    sxx += (rx[i] - mx) * (rx[i] - mx);
    syy += (ry[i] - my) * (ry[i] - my);
  }
  if (sxx == 0.0 || syy == 0.0) return 0.0;
  return sxy / std::sqrt(sxx * syy);
}

double ErrorCurve::Spearman() const {
  std::vector<double> x, y;
  for (const CurvePoint& p : points) {
    x.push_back(p.x);
    y.push_back(p.mean_error);
  }
  return SpearmanCorrelation(x, y);
}

void ErrorCurve::WriteCsv(std::ostream& out) const {
  out << parameter
      << ",trials,mean_error,median_error,q90_error,theory\n";
  for (const CurvePoint& p : points) {
    out << Number(p.x) << ',' << p.trials << ',' << Number(p.mean_error) << ','
        << Number(p.median_error) << ',' << Number(p.q90_error) << ','
        << Optional(p.theory) << '\n';
  }
}

namespace {

CurvePoint Summarize(double x, const std::vector<TrialReport>& reports) {
  CurvePoint point;
  point.x = x;
  std::vector<double> errors;
  for (const TrialReport& r : reports) {
    if (r.additive_error) errors.push_back(*r.additive_error);
  }
  point.trials = static_cast<int>(errors.size());
  if (errors.empty()) return point;
  std::sort(errors.begin(), errors.end());
  point.mean_error =
      std::accumulate(errors.begin(), errors.end(), 0.0) / errors.size();
  const std::size_t m = errors.size();
  point.median_error = m % 2 ? errors[m / 2]
                             : (errors[m / 2 - 1] + errors[m / 2]) / 2.0;
  const std::size_t rank =
      static_cast<std::size_t>(std::ceil(0.9 * static_cast<double>(m)));
  point.q90_error = errors[std::max<std::size_t>(rank, 1) - 1];
  return point;
}

}  // namespace

ErrorCurve SweepEpsilon(const MechanismInfo& mechanism,
                        const InstanceSpec& instance,
                        const std::vector<double>& epsilons, int trials,
                        std::uint64_t master_seed, MechanismParams params,
                        const RunOptions& options) {
  ErrorCurve curve;
  curve.mechanism = mechanism.tag;
  curve.parameter = "epsilon";
  if (epsilons.empty()) return curve;
  const Instance generated = Generate(instance);
  for (std::size_t i = 0; i < epsilons.size(); ++i) {
    params.epsilon = epsilons[i];
    const auto reports = RunTrials(mechanism, {instance}, trials,
                                   DeriveSeed(master_seed, i, 0), params,
                                   options);
    CurvePoint point = Summarize(epsilons[i], reports);
    if (mechanism.theory) {
      MechanismParams p = params;
      if (!p.terminals) p.terminals = generated.terminals;
      point.theory = mechanism.theory(generated.graph, p);
    }
    curve.points.push_back(point);
  }
  return curve;
}

ErrorCurve SweepN(const MechanismInfo& mechanism,
                  const std::function<InstanceSpec(int)>& make,
                  const std::vector<int>& ns, int trials,
                  std::uint64_t master_seed, const MechanismParams& params,
                  const RunOptions& options) {
  ErrorCurve curve;
  curve.mechanism = mechanism.tag;
  curve.parameter = "n";
  for (std::size_t i = 0; i < ns.size(); ++i) {
    const InstanceSpec spec = make(ns[i]);
    const auto reports = RunTrials(mechanism, {spec}, trials,
                                   DeriveSeed(master_seed, i, 0), params,
                                   options);
    CurvePoint point = Summarize(ns[i], reports);
    if (mechanism.theory) {
      const Instance generated = Generate(spec);
      MechanismParams p = params;
      if (!p.terminals) p.terminals = generated.terminals;
      point.theory = mechanism.theory(generated.graph, p);
    }
    curve.points.push_back(point);
  }
  return curve;
}

}  // namespace privcut
