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
#include <random>

#include <gtest/gtest.h>

#include "privcut/error.h"
#include "privcut/random.h"

namespace privcut {
namespace {

TEST(RandomSource, SameSeedAndStreamReproduce) {
  RandomSource a(9, 2), b(9, 2), c(9, 3);
  bool differs = false;
  for (int i = 0; i < 100; ++i) {
    const auto x = a();
    EXPECT_EQ(x, b());
    differs |= x != c();
  }
  EXPECT_TRUE(differs);
}

TEST(RandomSource, UniformStaysOpen) {
  RandomSource rng(1);
  for (int i = 0; i < 100000; ++i) {
    const double u = rng.Uniform();
    ASSERT_GT(u, 0.0);
    ASSERT_LT(u, 1.0);
  }
}

TEST(RandomSource, DeriveSeedSeparatesCoordinates) {
  EXPECT_NE(DeriveSeed(1, 0, 1), DeriveSeed(1, 1, 0));
  EXPECT_NE(DeriveSeed(1, 2, 3), DeriveSeed(2, 2, 3));
  EXPECT_EQ(DeriveSeed(7, 4, 5), DeriveSeed(7, 4, 5));
}

TEST(Laplace, MeanAndVariance) {
  RandomSource rng(2024);
  const int n = 1000000;
  double sum = 0.0, sq = 0.0;
  for (int i = 0; i < n; ++i) {
    const double x = SampleLaplace(1.0, rng);
    sum += x;
    sq += x * x;
  }
  const double mean = sum / n;
  EXPECT_NEAR(mean, 0.0, 0.01);
  EXPECT_NEAR(sq / n - mean * mean, 2.0, 0.05);
}

TEST(Laplace, FixedSeedIsDeterministic) {
  RandomSource a(5), b(5);
  for (int i = 0; i < 50; ++i) {
    EXPECT_EQ(SampleLaplace(0.7, a), SampleLaplace(0.7, b));
  }
}

TEST(Laplace, RejectsNonPositiveScale) {
  RandomSource rng(1);
  EXPECT_THROW(SampleLaplace(0.0, rng), InvalidArgumentError);
  EXPECT_THROW(SampleLaplace(-1.0, rng), InvalidArgumentError);
}

TEST(Laplace, KolmogorovSmirnovAgainstCdf) {
  const double b = 1.7;
  RandomSource rng(77);
  const int n = 100000;
  std::vector<double> xs(n);
  for (double& x : xs) x = SampleLaplace(b, rng);
  std::sort(xs.begin(), xs.end());
  auto cdf = [b](double x) {
    return x < 0 ? 0.5 * std::exp(x / b) : 1.0 - 0.5 * std::exp(-x / b);
  };
  double d = 0.0;
  for (int i = 0; i < n; ++i) {
    const double f = cdf(xs[i]);
    d = std::max({d, f - static_cast<double>(i) / n,
                  static_cast<double>(i + 1) / n - f});
  }
  // Asymptotic critical value at significance 1e-3.
  const double critical = std::sqrt(-0.5 * std::log(0.5e-3)) / std::sqrt(n);
  EXPECT_LT(d, critical);
}

double FirstFrequency(const std::vector<double>& scores, double sensitivity,
                      double epsilon, int draws, std::uint64_t seed) {
  RandomSource rng(seed);
  int first = 0;
  for (int i = 0; i < draws; ++i) {
    first += ExponentialMechanism(scores, sensitivity, epsilon,
                                  Direction::kMinimize, rng) == 0;
  }
  return static_cast<double>(first) / draws;
}

TEST(ExponentialMechanism, EqualScoresAreFair) {
  EXPECT_NEAR(FirstFrequency({3.0, 3.0}, 1.0, 1.0, 100000, 1), 0.5, 0.01);
}

TEST(ExponentialMechanism, TwoPointSoftmax) {
  // exp(-2 * s / 2) for s in {0, 1}.
  const double expected = 1.0 / (1.0 + std::exp(-1.0));
  EXPECT_NEAR(expected, 0.7311, 1e-4);
  EXPECT_NEAR(FirstFrequency({0.0, 1.0}, 1.0, 2.0, 100000, 2), expected, 0.01);
  const auto p = ExponentialMechanismProbabilities({0.0, 1.0}, 1.0, 2.0);
  EXPECT_NEAR(p[0], expected, 1e-12);
}

TEST(ExponentialMechanism, UnscaledSensitivityGivesExpMinusEpsilonScore) {
  const auto p = ExponentialMechanismProbabilities(
      {0.0, 1.0, 2.5}, kUnscaledScoreSensitivity, 0.8);
  const double z = 1.0 + std::exp(-0.8) + std::exp(-2.0);
  EXPECT_NEAR(p[0], 1.0 / z, 1e-12);
  EXPECT_NEAR(p[2], std::exp(-2.0) / z, 1e-12);
}

TEST(ExponentialMechanism, MaximizeFlipsPreference) {
  const auto p = ExponentialMechanismProbabilities({0.0, 1.0}, 1.0, 2.0,
                                                   Direction::kMaximize);
  EXPECT_NEAR(p[1], 1.0 / (1.0 + std::exp(-1.0)), 1e-12);
}

TEST(ExponentialMechanism, TailBound) {
  const int candidates = 100;
  std::vector<double> scores(candidates);
  for (int i = 0; i < candidates; ++i) scores[i] = 0.05 * i;
  const double epsilon = 1.0, t = 3.0;
  const double cutoff = (2.0 / epsilon) * (std::log(candidates) + t);
  RandomSource rng(11);
  const int draws = 100000;
  int bad = 0;
  for (int i = 0; i < draws; ++i) {
    bad += scores[ExponentialMechanism(scores, 1.0, epsilon,
                                       Direction::kMinimize, rng)] >= cutoff;
  }
  const double p = static_cast<double>(bad) / draws;
  EXPECT_LE(p, std::exp(-t) + 3.0 * std::sqrt(std::exp(-t) / draws));
}

TEST(ExponentialMechanism, ShiftInvariance) {
  const std::vector<double> scores = {0.3, 1.9, -2.0, 7.0};
  std::vector<double> shifted = scores;
  for (double& s : shifted) s += 1234.5;
  const auto p = ExponentialMechanismProbabilities(scores, 1.0, 1.3);
  const auto q = ExponentialMechanismProbabilities(shifted, 1.0, 1.3);
  for (std::size_t i = 0; i < p.size(); ++i) EXPECT_NEAR(p[i], q[i], 1e-12);
}

TEST(ExponentialMechanism, LargeScoresStayFinite) {
  const auto p = ExponentialMechanismProbabilities({1e6, 1e6 + 1.0}, 1.0, 2.0);
  EXPECT_NEAR(p[0] + p[1], 1.0, 1e-12);
  EXPECT_GT(p[0], p[1]);
}

TEST(ExponentialMechanismProperty, NeighborRatioWithinEpsilon) {
  std::mt19937 gen(8);
  std::uniform_real_distribution<double> score(-5.0, 5.0);
  std::uniform_real_distribution<double> change(-1.0, 1.0);
  for (int trial = 0; trial < 500; ++trial) {
    const int m = 2 + trial % 20;
    const double sensitivity = 0.5 + (trial % 3);
    const double epsilon = 0.1 + 0.2 * (trial % 10);
    std::vector<double> a(m), b(m);
    for (int i = 0; i < m; ++i) {
      a[i] = score(gen);
      b[i] = a[i] + sensitivity * change(gen);
    }
    const auto la = ExponentialMechanismLogProbabilities(a, sensitivity, epsilon);
    const auto lb = ExponentialMechanismLogProbabilities(b, sensitivity, epsilon);
    for (int i = 0; i < m; ++i) {
      ASSERT_LE(std::abs(la[i] - lb[i]), epsilon + 1e-12);
    }
  }
}

TEST(ExponentialMechanism, Errors) {
  RandomSource rng(1);
  EXPECT_THROW(ExponentialMechanism({}, 1.0, 1.0, Direction::kMinimize, rng),
               InvalidArgumentError);
  EXPECT_THROW(ExponentialMechanismProbabilities({0.0, NAN}, 1.0, 1.0),
               InvalidArgumentError);
  EXPECT_THROW(ExponentialMechanismProbabilities({0.0, INFINITY}, 1.0, 1.0),
               InvalidArgumentError);
}

TEST(Composition, BasicSums) {
  CompositionLedger ledger = CompositionLedger::Basic();
  ledger.Add("a", 1.0, 0.0);
  ledger.Add("b", 0.5, 1e-6);
  const PrivacyBudget total = Compose(ledger);
  EXPECT_DOUBLE_EQ(total.epsilon, 1.5);
  EXPECT_DOUBLE_EQ(total.delta, 1e-6);
}

TEST(Composition, AdvancedSingleEntry) {
  CompositionLedger ledger = CompositionLedger::Advanced(1e-6);
  ledger.Add("a", 0.1);
  const double expected =
      std::sqrt(2.0 * std::log(1e6)) * 0.1 + 0.1 * (std::exp(0.1) - 1.0);
  EXPECT_NEAR(Compose(ledger).epsilon, expected, 1e-12);
  EXPECT_NEAR(Compose(ledger).epsilon, 0.53617, 1e-5);
}

TEST(Composition, AdvancedRejectsMixedEpsilon) {
  CompositionLedger ledger = CompositionLedger::Advanced(1e-6);
  ledger.Add("a", 0.1);
  ledger.Add("b", 0.2);
  EXPECT_THROW(Compose(ledger), InvalidArgumentError);
}

TEST(Composition, EmptyLedgerThrows) {
  EXPECT_THROW(Compose(CompositionLedger::Basic()), InvalidArgumentError);
}

TEST(PrivacyBudget, Validation) {
  EXPECT_THROW((PrivacyBudget{0.0, 0.0}.Validate()), InvalidArgumentError);
  EXPECT_THROW((PrivacyBudget{1.0, 1.0}.Validate()), InvalidArgumentError);
  EXPECT_NO_THROW((PrivacyBudget{1.0, 0.0}.Validate()));
}

}  // namespace
}  // namespace privcut
