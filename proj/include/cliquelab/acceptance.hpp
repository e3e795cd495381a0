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

#ifndef CLIQUELAB_ACCEPTANCE_HPP_
#define CLIQUELAB_ACCEPTANCE_HPP_

#include <cstdint>

#include "cliquelab/circuit.hpp"
#include "cliquelab/common.hpp"
#include "cliquelab/distributions.hpp"
#include "cliquelab/random.hpp"

namespace cliquelab {

/// Two-sided 99% normal quantile.
inline constexpr double kZ99 = 2.5758293035489004;

/// Largest number of planted supports enumerated by the exact oracle.
inline constexpr std::uint64_t kMaxPlantedSupports = 1'000'000;

/// A Bernoulli frequency with a 99% normal-approximation half-width
/// (zero when every trial agrees).
struct FrequencyEstimate {
  std::uint64_t successes = 0;
  std::uint64_t trials = 0;
  double estimate = 0.0;
  double half_width = 0.0;

  static FrequencyEstimate from_counts(std::uint64_t successes, std::uint64_t trials);
};

/// Mean of evaluate(c, G) over seeded samples; trial t uses
/// Rng::for_trial(seed, t), so the result does not depend on thread count.
FrequencyEstimate estimate_acceptance(const MonotoneCircuit& c, const Distribution& dist, std::uint64_t trials,
                                      const SeedSpec& seed);

/// Exact acceptance probability on G(n, p), enumerating the edges the
/// circuit actually reads (at most kExactCapacity of them).
double exact_acceptance(const MonotoneCircuit& c, const NegDistParams& dist);
Rational exact_acceptance_negative(const MonotoneCircuit& c, const Rational& p);

/// Exact acceptance probability on the planted distribution, averaging over
/// all C(n, beta) supports (at most kMaxPlantedSupports).
Rational exact_acceptance(const MonotoneCircuit& c, const PosDistParams& dist);

/// Dispatches on the distribution; the negative side is evaluated in double.
double exact_acceptance(const MonotoneCircuit& c, const Distribution& dist);

/// Calls fn(support) for every k-subset of [n] in lexicographic order.
template <typename Fn>
void for_each_subset(unsigned n, unsigned k, Fn&& fn) {
  if (k > n) return;
  std::vector<unsigned> idx(k);
  for (unsigned i = 0; i < k; ++i) idx[i] = i;
  while (true) {
    VertexSet s;
    for (unsigned v : idx) s.insert(v);
    fn(s);
    int i = static_cast<int>(k) - 1;
    while (i >= 0 && idx[static_cast<unsigned>(i)] == n - k + static_cast<unsigned>(i)) --i;
    if (i < 0) return;
    ++idx[static_cast<unsigned>(i)];
    for (unsigned j = static_cast<unsigned>(i) + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

}  // namespace cliquelab

#endif  // CLIQUELAB_ACCEPTANCE_HPP_
