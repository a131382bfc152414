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

#include "privcut/kcut.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "privcut/error.h"

namespace privcut {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
// Per-index supports up to this many k-cuts are kept in memory.
constexpr std::size_t kCacheCandidates = std::size_t{1} << 18;

void CheckEpsilon(double epsilon) {
  if (!(epsilon > 0.0) || !std::isfinite(epsilon)) {
    throw InvalidArgumentError("epsilon must be positive and finite");
  }
}

void CheckK(const Graph& g, int k) {
  if (k < 1 || k > g.n()) {
    throw InvalidArgumentError("k must lie in [1, n]; got k = " +
                               std::to_string(k) + ", n = " +
                               std::to_string(g.n()));
  }
}

std::vector<int> LabelsOf(const std::int8_t* row, int n) {
  return std::vector<int>(row, row + n);
}

}  // namespace

AugmentationChain DefaultChain(int n) {
  AugmentationChain chain;
  chain.n = n;
  chain.rule = "lexicographic";
  chain.order.reserve(PairCount(n));
  for (Vertex u = 0; u < n; ++u) {
    for (Vertex v = u + 1; v < n; ++v) chain.order.emplace_back(u, v);
  }
  return chain;
}

AugmentationChain DefaultChain(const Graph& g) { return DefaultChain(g.n()); }

Graph AugmentedGraph(const Graph& g, const AugmentationChain& chain,
                     int index) {
  if (chain.n != g.n()) throw InvalidArgumentError("chain size mismatch");
  if (index < 0 || index > chain.steps()) {
    throw InvalidArgumentError("augmentation index out of range");
  }
  Eigen::VectorXd w = g.weights();
  for (int i = 0; i < index; ++i) {
    w[PairIndex(g.n(), chain.order[i].u, chain.order[i].v)] += 1.0;
  }
  return Graph(g.n(), std::move(w), g.name());
}

int FirstStackedIndex(const Graph& g, const AugmentationChain& chain) {
  if (chain.n != g.n()) throw InvalidArgumentError("chain size mismatch");
  for (int i = 0; i < chain.steps(); ++i) {
    if (g.weight(chain.order[i].u, chain.order[i].v) != 0.0) return i;
  }
  return chain.steps();
}

bool HasUnitWeights(const Graph& g) {
  return (g.weights().array() == 0.0 || g.weights().array() == 1.0).all();
}

KCutBoundProfile KCutBoundProfile::Chekuri(int k) {
  return KCutBoundProfile{2.0 * (k - 1), 0.0, 0.0};
}

double KCutBoundProfile::LogCount(int n) const {
  double total = f * std::log(static_cast<double>(n));
  if (h != 0.0) total += h * std::log(g);
  return total;
}

double KCutBoundProfile::Target(int n, double epsilon) const {
  CheckEpsilon(epsilon);
  return 2.0 * LogCount(n) / epsilon;
}

double KCutBoundProfile::Anchor(int n, double epsilon) const {
  CheckEpsilon(epsilon);
  return 4.0 * LogCount(n) / epsilon;
}

std::vector<double> ChainOptima(const Graph& g, int k,
                                const AugmentationChain& chain) {
  CheckK(g, k);
  if (chain.n != g.n()) throw InvalidArgumentError("chain size mismatch");
  std::vector<double> optima;
  optima.reserve(chain.steps() + 1);
  Eigen::VectorXd w = g.weights();
  for (int i = 0; i <= chain.steps(); ++i) {
    if (i > 0) {
      w[PairIndex(g.n(), chain.order[i - 1].u, chain.order[i - 1].v)] += 1.0;
    }
    const Graph augmented(g.n(), w);
    optima.push_back(k == 2 ? GlobalMinCutValue(augmented)
                            : ExactMinKCut(augmented, k).cost);
  }
  return optima;
}

std::vector<double> AugmentationProbabilities(
    const std::vector<double>& optima, double anchor, double epsilon) {
  std::vector<double> scores(optima.size());
  for (std::size_t i = 0; i < optima.size(); ++i) {
    scores[i] = std::abs(optima[i] - anchor);
  }
  return ExponentialMechanismProbabilities(scores, kUnscaledScoreSensitivity,
                                           epsilon, Direction::kMinimize);
}

int ChooseAugmentation(const Graph& g, int k, const AugmentationChain& chain,
                       double anchor, double epsilon, RandomSource& rng) {
  CheckEpsilon(epsilon);
  const std::vector<double> p =
      AugmentationProbabilities(ChainOptima(g, k, chain), anchor, epsilon);
  return static_cast<int>(SampleIndex(p, rng));
}

KCutExponentialMechanism::KCutExponentialMechanism(const Graph& g, int k,
                                                   double epsilon,
                                                   KCutMechanismOptions options)
    : graph_(g), k_(k), epsilon_(epsilon), options_(std::move(options)) {
  CheckEpsilon(epsilon);
  CheckK(g, k);
  if (k < 2) throw InvalidArgumentError("k-cut mechanism needs k >= 2");
  if (g.has_negative_weights()) {
    throw InvalidArgumentError("k-cut mechanism needs nonnegative weights");
  }
  alpha_ = options_.alpha > 0.0 ? options_.alpha
                                : 1.0 + static_cast<double>(k) / (k - 1);
  if (options_.support == KCutSupport::kRestricted && !(alpha_ >= 1.0)) {
    throw InvalidArgumentError("alpha must be at least 1");
  }
  anchor_ = options_.anchor.value_or(
      KCutBoundProfile::Chekuri(k).Anchor(g.n(), epsilon));
  delta_ = options_.delta >= 0.0
               ? options_.delta
               : 1.0 / (static_cast<double>(g.n()) * g.n());
  chain_ = options_.chain.value_or(DefaultChain(g.n()));
  if (options_.support == KCutSupport::kAll &&
      StirlingSecond(g.n(), k) > kMaxLabelings) {
    throw CapabilityError("the full k-cut support has " +
                          std::to_string(StirlingSecond(g.n(), k)) +
                          " members, above the exhaustive cap");
  }
  optima_ = ChainOptima(g, k, chain_);
  index_probabilities_ = AugmentationProbabilities(optima_, anchor_, epsilon);
}

int KCutExponentialMechanism::SampleAugmentation(RandomSource& rng) const {
  return static_cast<int>(SampleIndex(index_probabilities_, rng));
}

double KCutExponentialMechanism::Threshold(int index) const {
  return options_.support == KCutSupport::kAll ? kInf
                                               : alpha_ * optima_[index];
}

const KCutExponentialMechanism::IndexCuts* KCutExponentialMechanism::Cached(
    int index) {
  if (auto it = cache_.find(index); it != cache_.end()) return it->second.get();
  if (too_large_.count(index) != 0 || graph_.n() > 127) return nullptr;
  const int n = graph_.n();
  const double reference = optima_[index];
  auto cuts = std::make_unique<IndexCuts>();
  bool overflow = false;
  double total = 0.0;
  ForEachKCut(AugmentedGraph(graph_, chain_, index), k_, Threshold(index),
              [&](const std::vector<int>& labels, double cost) {
                if (overflow) return;
                if (cuts->cumulative.size() >= kCacheCandidates) {
                  overflow = true;
                  return;
                }
                for (int v = 0; v < n; ++v) {
                  cuts->labels.push_back(static_cast<std::int8_t>(labels[v]));
                }
                total += std::exp(-epsilon_ * (cost - reference));
                cuts->cumulative.push_back(total);
              });
  if (overflow) {
    too_large_[index] = true;
    return nullptr;
  }
  if (cuts->cumulative.empty()) {
    throw CapabilityError("empty k-cut support");
  }
  const IndexCuts* out = cuts.get();
  cache_[index] = std::move(cuts);
  return out;
}

Partition KCutExponentialMechanism::StreamSample(int index,
                                                 RandomSource& rng) {
  const Graph augmented = AugmentedGraph(graph_, chain_, index);
  const double reference = optima_[index];
  const double threshold = Threshold(index);
  double total = 0.0;
  ForEachKCut(augmented, k_, threshold,
              [&](const std::vector<int>&, double cost) {
                total += std::exp(-epsilon_ * (cost - reference));
              });
  if (!(total > 0.0)) throw CapabilityError("empty k-cut support");
  const double target = rng.Uniform() * total;
  double running = 0.0;
  std::vector<int> chosen;
  ForEachKCut(augmented, k_, threshold,
              [&](const std::vector<int>& labels, double cost) {
                if (!chosen.empty() && running >= target) return;
                running += std::exp(-epsilon_ * (cost - reference));
                chosen = labels;
              });
  return Partition(std::move(chosen), k_);
}

Partition KCutExponentialMechanism::ContractionSample(int index,
                                                      RandomSource& rng) {
  const CutCatalog catalog =
      ContractionEnumerateKCuts(AugmentedGraph(graph_, chain_, index), k_,
                                alpha_, rng, options_.contraction);
  if (catalog.cuts.empty()) throw CapabilityError("empty k-cut catalog");
  std::vector<double> costs;
  costs.reserve(catalog.cuts.size());
  for (const CutResult& c : catalog.cuts) costs.push_back(c.cost);
  const std::size_t i = ExponentialMechanism(
      costs, kUnscaledScoreSensitivity, epsilon_, Direction::kMinimize, rng);
  return catalog.cuts[i].partition;
}

Partition KCutExponentialMechanism::SampleCut(int index, RandomSource& rng) {
  if (index < 0 || index > chain_.steps()) {
    throw InvalidArgumentError("augmentation index out of range");
  }
  if (options_.support == KCutSupport::kRestricted &&
      options_.catalog == CatalogSource::kContraction) {
    return ContractionSample(index, rng);
  }
  if (const IndexCuts* cuts = Cached(index)) {
    const double target = rng.Uniform() * cuts->cumulative.back();
    auto it = std::lower_bound(cuts->cumulative.begin(),
                               cuts->cumulative.end(), target);
    if (it == cuts->cumulative.end()) --it;
    const std::size_t row = it - cuts->cumulative.begin();
    return Partition(LabelsOf(&cuts->labels[row * graph_.n()], graph_.n()),
                     k_);
  }
  return StreamSample(index, rng);
}

Partition KCutExponentialMechanism::Sample(RandomSource& rng) {
  const int index = SampleAugmentation(rng);
  return SampleCut(index, rng);
}

std::map<std::vector<int>, double> KCutExponentialMechanism::CutDistribution(
    int index) {
  if (options_.support == KCutSupport::kRestricted &&
      options_.catalog == CatalogSource::kContraction) {
    throw CapabilityError("a contraction catalog has no exact distribution");
  }
  std::map<std::vector<int>, double> out;
  if (const IndexCuts* cuts = Cached(index)) {
    const double total = cuts->cumulative.back();
    double previous = 0.0;
    for (std::size_t r = 0; r < cuts->cumulative.size(); ++r) {
      out[LabelsOf(&cuts->labels[r * graph_.n()], graph_.n())] =
          (cuts->cumulative[r] - previous) / total;
      previous = cuts->cumulative[r];
    }
    return out;
  }
  const double reference = optima_[index];
  double total = 0.0;
  ForEachKCut(AugmentedGraph(graph_, chain_, index), k_, Threshold(index),
              [&](const std::vector<int>& labels, double cost) {
                const double w = std::exp(-epsilon_ * (cost - reference));
                out[labels] = w;
                total += w;
              });
  for (auto& [labels, p] : out) p /= total;
  return out;
}

std::map<std::vector<int>, double>
KCutExponentialMechanism::OutputDistribution() {
  std::map<std::vector<int>, double> out;
  for (int i = 0; i <= chain_.steps(); ++i) {
    const double weight = index_probabilities_[i];
    if (weight == 0.0) continue;
    for (const auto& [labels, p] : CutDistribution(i)) {
      out[labels] += weight * p;
    }
  }
  return out;
}

CompositionLedger KCutExponentialMechanism::Ledger() const {
  CompositionLedger ledger = CompositionLedger::Basic();
  ledger.Add("augmentation-index", epsilon_, 0.0);
  ledger.Add(options_.support == KCutSupport::kAll ? "kcut-selection"
                                                   : "kcut-selection-restricted",
             epsilon_,
             options_.support == KCutSupport::kAll ? 0.0 : delta_);
  return ledger;
}

Partition PrivateKCutExponential(const Graph& g, int k, double epsilon,
                                 RandomSource& rng,
                                 const KCutMechanismOptions& options) {
  KCutExponentialMechanism mechanism(g, k, epsilon, options);
  return mechanism.Sample(rng);
}

KCutMechanismOptions PrivateMinCutOptions(double delta) {
  KCutMechanismOptions options;
  options.support = KCutSupport::kRestricted;
  options.alpha = 3.0;
  options.delta = delta;
  return options;
}

Partition PrivateMinCut(const Graph& g, double epsilon, double delta,
                        RandomSource& rng) {
  PrivacyBudget{epsilon, delta}.Validate();
  if (g.n() < 2) throw InvalidArgumentError("a cut needs two vertices");
  KCutExponentialMechanism mechanism(g, 2, epsilon / 2.0,
                                     PrivateMinCutOptions(delta));
  return mechanism.Sample(rng);
}

SplitBudget SplitBudget::For(int k, double epsilon, double delta) {
  CheckEpsilon(epsilon);
  if (!(delta > 0.0 && delta < 1.0)) {
    throw InvalidArgumentError("the split mechanism needs 0 < delta < 1");
  }
  if (k < 1) throw InvalidArgumentError("k must be positive");
  SplitBudget budget;
  budget.epsilon0 = epsilon / (6.0 * std::sqrt(k * std::log(2.0 / delta)));
  budget.delta0 = delta / (2.0 * k);
  return budget;
}

CompositionLedger SplitLedger(int k, double epsilon, double delta) {
  const SplitBudget budget = SplitBudget::For(k, epsilon, delta);
  CompositionLedger ledger = CompositionLedger::Advanced(delta / 2.0);
  for (int i = 0; i + 1 < k; ++i) {
    ledger.Add("split-iteration-" + std::to_string(i + 1),
               3.0 * budget.epsilon0, budget.delta0);
  }
  return ledger;
}

nlohmann::json SplitTrace::ToJson() const {
  nlohmann::json out;
  out["epsilon0"] = budget.epsilon0;
  out["delta0"] = budget.delta0;
  out["iterations"] = nlohmann::json::array();
  for (const SplitIteration& it : iterations) {
    nlohmann::json optima = nlohmann::json::array();
    for (double v : it.piece_optima) {
      if (std::isfinite(v)) {
        optima.push_back(v);
      } else {
        optima.push_back(nullptr);
      }
    }
    out["iterations"].push_back({{"pieces", it.pieces},
                                 {"piece_optima", optima},
                                 {"chosen", it.chosen},
                                 {"split_off", it.split_off},
                                 {"removed_weight", it.removed_weight}});
  }
  return out;
}

Partition PrivateSplitKCut(const Graph& g, int k, double epsilon, double delta,
                           RandomSource& rng, const SplitOptions& options,
                           SplitTrace* trace) {
  CheckK(g, k);
  const SplitBudget budget = SplitBudget::For(k, epsilon, delta);
  if (trace != nullptr) {
    trace->budget = budget;
    trace->iterations.clear();
  }
  std::vector<std::vector<Vertex>> pieces(1);
  pieces[0].resize(g.n());
  std::iota(pieces[0].begin(), pieces[0].end(), 0);

  for (int iteration = 1; iteration < k; ++iteration) {
    SplitIteration record;
    record.pieces = pieces;
    std::vector<int> candidates;
    std::vector<double> scores;
    for (std::size_t l = 0; l < pieces.size(); ++l) {
      const double value = pieces[l].size() < 2
                               ? kInf
                               : GlobalMinCutValue(g.Induced(pieces[l]));
      record.piece_optima.push_back(value);
      if (std::isfinite(value)) {
        candidates.push_back(static_cast<int>(l));
        scores.push_back(value);
      }
    }
    int chosen = 0;
    if (options.noiseless) {
      chosen = candidates[std::min_element(scores.begin(), scores.end()) -
                          scores.begin()];
    } else {
      chosen = candidates[ExponentialMechanism(
          scores, kUnscaledScoreSensitivity, budget.epsilon0,
          Direction::kMinimize, rng)];
    }
    const std::vector<Vertex>& support = pieces[chosen];
    const Graph piece = g.Induced(support);
    const Partition cut =
        options.noiseless ? ExactMinKCut(piece, 2).partition
                          : PrivateMinCut(piece, budget.epsilon0,
                                          budget.delta0, rng);
    std::vector<Vertex> kept;
    std::vector<Vertex> split_off;
    for (int i = 0; i < piece.n(); ++i) {
      (cut.label(i) == 0 ? kept : split_off).push_back(support[i]);
    }
    record.chosen = chosen;
    record.split_off = split_off;
    record.removed_weight = CutCost(piece, cut);
    pieces[chosen] = std::move(kept);
    pieces.push_back(std::move(split_off));

    std::vector<int> seen(g.n(), 0);
    for (const auto& p : pieces) {
      for (Vertex v : p) ++seen[v];
    }
    if (std::any_of(seen.begin(), seen.end(), [](int c) { return c != 1; })) {
      throw PropertyViolation("split pieces no longer partition the vertices",
                              nlohmann::json(pieces).dump());
    }
    if (trace != nullptr) trace->iterations.push_back(std::move(record));
  }

  std::vector<int> labels(g.n(), 0);
  for (std::size_t l = 0; l < pieces.size(); ++l) {
    for (Vertex v : pieces[l]) labels[v] = static_cast<int>(l);
  }
  return Partition(std::move(labels), k);
}

CutCountReport VerifyCutCountBound(const Graph& g, int k, double alpha) {
  CheckK(g, k);
  if (!(alpha >= 1.0)) throw InvalidArgumentError("alpha must be at least 1");
  CutCountReport report;
  const double opt = ExactMinKCut(g, k).cost;
  ForEachKCut(g, k, alpha * opt,
              [&](const std::vector<int>&, double) { ++report.count; });
  report.bound = std::pow(static_cast<double>(g.n()),
                          std::floor(2.0 * alpha * (k - 1)));
  report.within = static_cast<double>(report.count) <= report.bound;
  return report;
}

std::vector<double> IsolatingCutWeights(const Graph& g, int k) {
  const CutResult opt = ExactMinKCut(g, k);
  std::vector<double> weights(k, 0.0);
  std::size_t p = 0;
  for (Vertex u = 0; u < g.n(); ++u) {
    for (Vertex v = u + 1; v < g.n(); ++v, ++p) {
      const int a = opt.partition.label(u);
      const int b = opt.partition.label(v);
      if (a != b) {
        weights[a] += g.weights()[p];
        weights[b] += g.weights()[p];
      }
    }
  }
  std::sort(weights.begin(), weights.end());
  return weights;
}

std::vector<double> SaranVaziraniSequence(const Graph& g, int k) {
  CheckK(g, k);
  const int n = g.n();
  int components = ConnectedComponents(g).k();
  std::vector<double> sequence(
      std::min(std::max(components - 1, 0), k - 1), 0.0);
  if (components >= k) return sequence;

  struct Candidate {
    double weight;
    std::size_t pair;
    std::vector<char> edges;
  };
  std::vector<Candidate> list;
  const Eigen::VectorXd& w = g.weights();
  for (std::size_t p = 0; p < g.pair_count(); ++p) {
    if (w[p] <= 0.0) continue;
    const VertexPair e = PairAt(n, p);
    const CutResult cut = ExactMinStCut(g, e.u, e.v);
    Candidate c{cut.cost, p, std::vector<char>(g.pair_count(), 0)};
    std::size_t q = 0;
    for (Vertex a = 0; a < n; ++a) {
      for (Vertex b = a + 1; b < n; ++b, ++q) {
        if (w[q] > 0.0 && cut.partition.label(a) != cut.partition.label(b)) {
          c.edges[q] = 1;
        }
      }
    }
    list.push_back(std::move(c));
  }
  std::stable_sort(list.begin(), list.end(),
                   [](const Candidate& a, const Candidate& b) {
                     return a.weight < b.weight;
                   });

  std::vector<char> removed(g.pair_count(), 0);
  for (const Candidate& c : list) {
    bool adds = false;
    for (std::size_t q = 0; q < removed.size(); ++q) {
      if (c.edges[q] && !removed[q]) {
        adds = true;
        break;
      }
    }
    if (!adds) continue;
    Eigen::VectorXd remaining = w;
    for (std::size_t q = 0; q < removed.size(); ++q) {
      removed[q] = removed[q] || c.edges[q];
      if (removed[q]) remaining[q] = 0.0;
    }
    const int now = ConnectedComponents(Graph(n, remaining)).k();
    for (int t = components; t < now; ++t) sequence.push_back(c.weight);
    components = now;
    if (components >= k) break;
  }
  sequence.resize(k - 1, 0.0);
  return sequence;
}

}  // namespace privcut
