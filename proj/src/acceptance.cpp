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

#include "cliquelab/acceptance.hpp"

#include <bit>
#include <cmath>
#include <map>
#include <string>

#include "cliquelab/enumeration.hpp"
#include "cliquelab/parallel.hpp"

namespace cliquelab {

FrequencyEstimate FrequencyEstimate::from_counts(std::uint64_t successes, std::uint64_t trials) {
  FrequencyEstimate f{successes, trials, 0.0, 0.0};
  if (trials == 0) return f;
  f.estimate = static_cast<double>(successes) / static_cast<double>(trials);
  f.half_width = kZ99 * std::sqrt(f.estimate * (1.0 - f.estimate) / static_cast<double>(trials));
  return f;
}

FrequencyEstimate estimate_acceptance(const MonotoneCircuit& c, const Distribution& dist, std::uint64_t trials,
                                      const SeedSpec& seed) {
  if (trials < 1) throw ParameterError("estimate_acceptance needs at least one trial");
  if (vertex_count(dist) != c.n_vertices()) throw ParameterError("circuit and distribution vertex counts differ");
  const std::uint64_t blocks = (trials + 63) / 64;
  const std::uint64_t accepted = parallel_sum<std::uint64_t>(blocks, [&](std::uint64_t begin, std::uint64_t end) {
    std::uint64_t local = 0;
    std::vector<Graph> batch;
    batch.reserve(64);
    for (std::uint64_t b = begin; b < end; ++b) {
      batch.clear();
      const std::uint64_t first = b * 64;
      const std::uint64_t last = std::min(trials, first + 64);
      for (std::uint64_t t = first; t < last; ++t) {
        Rng rng = Rng::for_trial(seed, t);
        batch.push_back(sample(dist, rng));
      }
      local += static_cast<std::uint64_t>(std::popcount(evaluate_batch(c, batch)));
    }
    return local;
  });
  return FrequencyEstimate::from_counts(accepted, trials);
}

namespace {

// Relevant edges (those read by an Input gate) and the acceptance profile
// over their 2^r assignments.
BernoulliProfile negative_profile(const MonotoneCircuit& c) {
  std::map<std::pair<unsigned, unsigned>, unsigned> relevant;
  for (const Gate& g : c.gates())
    if (g.kind == GateKind::kInput) relevant.try_emplace({g.a, g.b}, static_cast<unsigned>(relevant.size()));
  const auto r = static_cast<unsigned>(relevant.size());
  if (r > kExactCapacity)
    throw CapacityError("exact acceptance needs " + std::to_string(r) + " relevant edges; capacity is " +
                        std::to_string(kExactCapacity));

  using Counts = std::vector<std::uint64_t>;
  BernoulliProfile profile{r, Counts(r + 1, 0)};
  const std::uint64_t states = std::uint64_t{1} << r;
  const std::uint64_t blocks = (states + 63) / 64;
  profile.counts = parallel_reduce<Counts>(
      blocks,
      [&](std::uint64_t begin, std::uint64_t end) {
        Counts local(r + 1, 0);
        for (std::uint64_t b = begin; b < end; ++b) {
          const std::uint64_t base = b * 64;
          const auto values = evaluate_lanes(c, [&](unsigned u, unsigned v) {
            // base is a multiple of 64: low bits follow a fixed lane
            // pattern, high bits are constant across the block.
            static constexpr std::uint64_t kLowBitLanes[6] = {
                0xAAAAAAAAAAAAAAAAULL, 0xCCCCCCCCCCCCCCCCULL, 0xF0F0F0F0F0F0F0F0ULL,
                0xFF00FF00FF00FF00ULL, 0xFFFF0000FFFF0000ULL, 0xFFFFFFFF00000000ULL};
            const unsigned bit = relevant.at({u, v});
            if (bit < 6) return kLowBitLanes[bit];
            return ((base >> bit) & 1) ? ~std::uint64_t{0} : std::uint64_t{0};
          });
          std::uint64_t accepted = values[c.output()];
          const std::uint64_t live = std::min<std::uint64_t>(64, states - base);
          if (live < 64) accepted &= (std::uint64_t{1} << live) - 1;
          while (accepted != 0) {
            const unsigned lane = static_cast<unsigned>(std::countr_zero(accepted));
            ++local[std::popcount(base + lane)];
            accepted &= accepted - 1;
          }
        }
        return local;
      },
      [](Counts a, const Counts& b) {
        for (std::size_t i = 0; i < b.size(); ++i) a[i] += b[i];
        return a;
      });
  return profile;
}

}  // namespace

double exact_acceptance(const MonotoneCircuit& c, const NegDistParams& dist) {
  if (dist.n != c.n_vertices()) throw ParameterError("circuit and distribution vertex counts differ");
  return negative_profile(c).expectation(dist.p);
}

Rational exact_acceptance_negative(const MonotoneCircuit& c, const Rational& p) {
  if (p < 0 || p > 1) throw ParameterError("edge probability outside [0, 1]");
  return negative_profile(c).expectation(p);
}

Rational exact_acceptance(const MonotoneCircuit& c, const PosDistParams& dist) {
  if (dist.n != c.n_vertices()) throw ParameterError("circuit and distribution vertex counts differ");
  const BigInt supports = binomial(dist.n, dist.beta);
  if (supports > kMaxPlantedSupports)
    throw CapacityError("exact planted acceptance would enumerate " + supports.str() + " supports");
  std::uint64_t accepted = 0;
  std::vector<Graph> batch;
  batch.reserve(64);
  auto flush = [&] {
    accepted += static_cast<std::uint64_t>(std::popcount(evaluate_batch(c, batch)));
    batch.clear();
  };
  for_each_subset(dist.n, dist.beta, [&](const VertexSet& support) {
    batch.push_back(Graph::clique_on(dist.n, support));
    if (batch.size() == 64) flush();
  });
  if (!batch.empty()) flush();
  return Rational(BigInt(accepted), supports);
}

double exact_acceptance(const MonotoneCircuit& c, const Distribution& dist) {
  return std::visit([&](const auto& d) -> double {
    using T = std::decay_t<decltype(d)>;
    if constexpr (std::is_same_v<T, NegDistParams>)
      return exact_acceptance(c, d);
    else
      return to_double(exact_acceptance(c, d));
  }, dist);
}

}  // namespace cliquelab
