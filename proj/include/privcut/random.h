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

#ifndef PRIVCUT_RANDOM_H_
#define PRIVCUT_RANDOM_H_

#include <cstdint>
#include <limits>
#include <random>

namespace privcut {

// SplitMix64 finalizer.
std::uint64_t Mix64(std::uint64_t x);

// Deterministic child seed for (master, a, b).
std::uint64_t DeriveSeed(std::uint64_t master, std::uint64_t a,
                         std::uint64_t b = 0);

// Seeded pseudo-random stream. Identical (seed, stream) pairs reproduce
// identical draws. Satisfies UniformRandomBitGenerator.
class RandomSource {
 public:
  using result_type = std::uint64_t;

  explicit RandomSource(std::uint64_t seed = 0, std::uint64_t stream = 0);

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream() const { return stream_; }

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() {
    return std::numeric_limits<result_type>::max();
  }
  result_type operator()() { return engine_(); }

  // Uniform on the open interval (0, 1) with 53 bits of resolution.
  double Uniform();
  // Uniform integer in [0, bound).
  std::uint64_t UniformInt(std::uint64_t bound);

  // Independent child stream.
  RandomSource Fork(std::uint64_t stream) const;

 private:
  std::uint64_t seed_;
  std::uint64_t stream_;
  std::mt19937_64 engine_;
};

}  // namespace privcut

#endif  // PRIVCUT_RANDOM_H_
