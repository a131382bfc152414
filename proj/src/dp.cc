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

#include "privcut/dp.h"

#include <algorithm>
#include <cmath>

#include "privcut/error.h"

namespace privcut {

void PrivacyBudget::Validate() const {
  if (!(epsilon > 0.0) || !std::isfinite(epsilon)) {
    throw InvalidArgumentError("epsilon must be positive and finite");
  }
  if (!(delta >= 0.0 && delta < 1.0)) {
    throw InvalidArgumentError("delta must lie in [0, 1)");
  }
}

double SampleLaplace(double scale, RandomSource& rng) {
  if (!(scale > 0.0) || !std::isfinite(scale)) {
    throw InvalidArgumentError("Laplace scale must be positive and finite");
  }
  const double u = rng.Uniform() - 0.5;
  const double magnitude = -scale * std::log1p(-2.0 * std::abs(u));
  return u < 0.0 ? -magnitude : magnitude;
}

Eigen::VectorXd SampleLaplaceVector(Eigen::Index size, double scale,
                                    RandomSource& rng) {
  Eigen::VectorXd out(size);
  for (Eigen::Index i = 0; i < size; ++i) out[i] = SampleLaplace(scale, rng);
  return out;
}

std::vector<double> ExponentialMechanismLogProbabilities(
    const std::vector<double>& scores, double sensitivity, double epsilon,
    Direction direction) {
  if (scores.empty()) throw InvalidArgumentError("empty candidate set");
  if (!(sensitivity > 0.0)) throw InvalidArgumentError("sensitivity must be positive");
  if (!(epsilon > 0.0)) throw InvalidArgumentError("epsilon must be positive");
  const double sign = direction == Direction::kMinimize ? -1.0 : 1.0;
  const double factor = sign * epsilon / (2.0 * sensitivity);
  // Logits are taken relative to the best score, which keeps them exact
  // differences and puts the largest at zero.
  double best = scores.front();
  for (double s : scores) {
    if (!std::isfinite(s)) throw InvalidArgumentError("non-finite score");
    best = direction == Direction::kMinimize ? std::min(best, s)
                                             : std::max(best, s);
  }
  std::vector<double> logits(scores.size());
  for (std::size_t i = 0; i < scores.size(); ++i) {
    logits[i] = factor * (scores[i] - best);
  }
  const double top = 0.0;
  double sum = 0.0;
  for (double l : logits) sum += std::exp(l - top);
  const double log_norm = top + std::log(sum);
  for (double& l : logits) l -= log_norm;
  return logits;
}

std::vector<double> ExponentialMechanismProbabilities(
    const std::vector<double>& scores, double sensitivity, double epsilon,
    Direction direction) {
  std::vector<double> p = ExponentialMechanismLogProbabilities(
      scores, sensitivity, epsilon, direction);
  for (double& x : p) x = std::exp(x);
  return p;
}

std::size_t SampleIndex(const std::vector<double>& probabilities,
                        RandomSource& rng) {
  if (probabilities.empty()) throw InvalidArgumentError("empty distribution");
  double total = 0.0;
  for (double p : probabilities) total += p;
  const double target = rng.Uniform() * total;
  double acc = 0.0;
  for (std::size_t i = 0; i < probabilities.size(); ++i) {
    acc += probabilities[i];
    if (target < acc) return i;
  }
  // Rounding left the target past the last positive mass.
  for (std::size_t i = probabilities.size(); i-- > 0;) {
    if (probabilities[i] > 0.0) return i;
  }
  return probabilities.size() - 1;
}

std::size_t ExponentialMechanism(const std::vector<double>& scores,
                                 double sensitivity, double epsilon,
                                 Direction direction, RandomSource& rng) {
  return SampleIndex(
      ExponentialMechanismProbabilities(scores, sensitivity, epsilon, direction),
      rng);
}

CompositionLedger CompositionLedger::Advanced(double delta_prime) {
  if (!(delta_prime > 0.0 && delta_prime < 1.0)) {
    throw InvalidArgumentError("advanced composition needs delta' in (0, 1)");
  }
  return CompositionLedger(Mode::kAdvanced, delta_prime);
}

void CompositionLedger::Add(std::string tag, double epsilon, double delta) {
  PrivacyBudget{epsilon, delta}.Validate();
  entries_.push_back({std::move(tag), epsilon, delta});
}

void CompositionLedger::Append(const CompositionLedger& other) {
  for (const Entry& e : other.entries_) entries_.push_back(e);
}

double AdvancedCompositionEpsilon(int k, double epsilon, double delta_prime) {
  return std::sqrt(2.0 * k * std::log(1.0 / delta_prime)) * epsilon +
         k * epsilon * std::expm1(epsilon);
}

PrivacyBudget Compose(const CompositionLedger& ledger) {
  if (ledger.empty()) throw InvalidArgumentError("empty composition ledger");
  double eps_sum = 0.0;
  double delta_sum = 0.0;
  for (const auto& e : ledger.entries()) {
    eps_sum += e.epsilon;
    delta_sum += e.delta;
  }
  if (ledger.mode() == CompositionLedger::Mode::kBasic) {
    return {eps_sum, delta_sum};
  }
  const double eps = ledger.entries().front().epsilon;
  for (const auto& e : ledger.entries()) {
    if (e.epsilon != eps) {
      throw InvalidArgumentError(
          "advanced composition requires identical epsilon per entry");
    }
  }
  const int k = static_cast<int>(ledger.entries().size());
  return {AdvancedCompositionEpsilon(k, eps, ledger.delta_prime()),
          delta_sum + ledger.delta_prime()};
}

}  // namespace privcut
