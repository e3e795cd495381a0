// Copyright 2026 The cliquelab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef CLIQUELAB_RANDOM_HPP_
#define CLIQUELAB_RANDOM_HPP_

#include <cstdint>
#include <random>

namespace cliquelab {

/// Seed for a family of reproducible trials. Trial `t` of stream `s` under
/// master seed `m` always draws from the same generator, whichever thread
/// runs it.
struct SeedSpec {
  std::uint64_t master_seed = 0;
  std::uint64_t stream_id = 0;

  /// A seed for an independent sub-stream (e.g. one per distribution).
  SeedSpec substream(std::uint64_t id) const;

  friend bool operator==(const SeedSpec&, const SeedSpec&) = default;
};

constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

/// Generator with portable derived draws. std::mt19937_64 is fully
/// specified by the standard; the std distributions are not, so uniform
/// reals and bounded integers are derived here from raw 64-bit outputs.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Generator for one trial of a seeded experiment.
  static Rng for_trial(const SeedSpec& seed, std::uint64_t trial);

  std::uint64_t next() { return engine_(); }

  /// Uniform on [0, 1) with 53 random bits.
  double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  /// Uniform on {0, ..., bound - 1}; bound must be positive.
  std::uint64_t below(std::uint64_t bound);

  bool bernoulli(double p) { return uniform01() < p; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace cliquelab

#endif  // CLIQUELAB_RANDOM_HPP_
