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

#ifndef CLIQUELAB_DISTRIBUTIONS_HPP_
#define CLIQUELAB_DISTRIBUTIONS_HPP_

#include <cstdint>
#include <variant>
#include <vector>

#include "cliquelab/common.hpp"
#include "cliquelab/graph.hpp"
#include "cliquelab/random.hpp"

namespace cliquelab {

/// p = n^(-2/(alpha-1)), the edge density at which alpha-cliques are rare.
/// Requires 4 <= alpha <= n.
double edge_probability(unsigned n, unsigned alpha);

/// The Erdos-Renyi side G(n, p).
struct NegDistParams {
  unsigned n = 0;
  unsigned alpha = 0;  // 0 when p was given directly
  double p = 0.0;

  /// Validated: 4 <= alpha <= n, p derived from (n, alpha).
  static NegDistParams from_alpha(unsigned n, unsigned alpha);
  /// Explicit edge probability in [0, 1], for small-n oracles and sweeps.
  static NegDistParams with_edge_probability(unsigned n, double p);
};

/// The planted side: K_B for a uniform beta-subset B, other vertices isolated.
struct PosDistParams {
  unsigned n = 0;
  unsigned beta = 0;

  /// Validated: 2 <= beta <= n.
  static PosDistParams make(unsigned n, unsigned beta);
};

using Distribution = std::variant<NegDistParams, PosDistParams>;

/// G(n, p) drawing one uniform per slot in canonical slot order.
Graph sample_gnp(unsigned n, double p, Rng& rng);

/// The uniforms that sample_gnp would consume, in slot order. Thresholding
/// them at any p reproduces sample_gnp exactly, which couples all p.
std::vector<double> sample_slot_uniforms(unsigned n, Rng& rng);
Graph threshold_uniforms(unsigned n, const std::vector<double>& uniforms, double p);

/// Uniform beta-subset of [n] (partial Fisher-Yates).
VertexSet sample_subset(unsigned n, unsigned size, Rng& rng);

Graph sample_negative(const NegDistParams& params, Rng& rng);
Graph sample_negative(const NegDistParams& params, const SeedSpec& seed, std::uint64_t trial);
Graph sample_positive(const PosDistParams& params, Rng& rng);
Graph sample_positive(const PosDistParams& params, const SeedSpec& seed, std::uint64_t trial);
Graph sample(const Distribution& dist, Rng& rng);

unsigned vertex_count(const Distribution& dist);

/// Exact k-clique test by bitset branch and bound. Requires 1 <= k <= n.
bool contains_clique(const Graph& g, unsigned k);

/// Pr[K_B is in G] under the planted distribution for |B| = ell, i.e.
/// C(n - ell, beta - ell) / C(n, beta). Requires 2 <= ell <= beta <= n.
Rational clique_prob_positive(unsigned n, unsigned beta, unsigned ell);

/// p^C(ell, 2). Requires 0 <= p <= 1 and ell >= 2.
double clique_prob_negative(double p, unsigned ell);
Rational clique_prob_negative(const Rational& p, unsigned ell);

}  // namespace cliquelab

#endif  // CLIQUELAB_DISTRIBUTIONS_HPP_
