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

#ifndef PRIVCUT_DP_H_
#define PRIVCUT_DP_H_

#include <cstddef>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "privcut/random.h"

namespace privcut {

struct PrivacyBudget {
  double epsilon = 1.0;
  double delta = 0.0;

  // Throws unless epsilon > 0 and 0 <= delta < 1.
  void Validate() const;
};

// One Laplace(0, scale) draw by inverting the CDF at u = Uniform() - 1/2:
// x = -scale * sign(u) * log(1 - 2|u|).
double SampleLaplace(double scale, RandomSource& rng);

// Fills a vector with i.i.d. Laplace(0, scale) draws, in index order.
Eigen::VectorXd SampleLaplaceVector(Eigen::Index size, double scale,
                                    RandomSource& rng);

enum class Direction { kMinimize, kMaximize };

// Normalized output distribution of the exponential mechanism:
// P(r) proportional to exp(-/+ epsilon * score(r) / (2 * sensitivity)).
// Computed in log space.
std::vector<double> ExponentialMechanismProbabilities(
    const std::vector<double>& scores, double sensitivity, double epsilon,
    Direction direction = Direction::kMinimize);

// Log-probabilities, same normalization as above.
std::vector<double> ExponentialMechanismLogProbabilities(
    const std::vector<double>& scores, double sensitivity, double epsilon,
    Direction direction = Direction::kMinimize);

// Draws one index from a normalized distribution by inverse CDF.
std::size_t SampleIndex(const std::vector<double>& probabilities,
                        RandomSource& rng);

// Sampling form of the exponential mechanism. Returns a candidate index.
std::size_t ExponentialMechanism(const std::vector<double>& scores,
                                 double sensitivity, double epsilon,
                                 Direction direction, RandomSource& rng);

// Sensitivity to pass to the primitive above so that the probabilities
// become proportional to exp(-epsilon * score).
inline constexpr double kUnscaledScoreSensitivity = 0.5;

// Tracks the privacy spent by a sequence of mechanisms.
class CompositionLedger {
 public:
  enum class Mode { kBasic, kAdvanced };

  struct Entry {
    std::string tag;
    double epsilon;
    double delta;
  };

  static CompositionLedger Basic() { return CompositionLedger(Mode::kBasic, 0); }
  // Advanced composition with slack delta_prime.
  static CompositionLedger Advanced(double delta_prime);

  void Add(std::string tag, double epsilon, double delta = 0.0);
  void Append(const CompositionLedger& other);

  Mode mode() const { return mode_; }
  double delta_prime() const { return delta_prime_; }
  const std::vector<Entry>& entries() const { return entries_; }
  bool empty() const { return entries_.empty(); }

 private:
  CompositionLedger(Mode mode, double delta_prime)
      : mode_(mode), delta_prime_(delta_prime) {}

  Mode mode_;
  double delta_prime_;
  std::vector<Entry> entries_;
};

// Basic: (sum eps_i, sum delta_i). Advanced over k entries sharing eps:
// (sqrt(2k ln(1/delta')) eps + k eps (e^eps - 1), sum delta_i + delta').
PrivacyBudget Compose(const CompositionLedger& ledger);

double AdvancedCompositionEpsilon(int k, double epsilon, double delta_prime);

}  // namespace privcut

#endif  // PRIVCUT_DP_H_
