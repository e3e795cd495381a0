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

#include "cliquelab/distributions.hpp"

#include <cmath>
#include <numeric>
#include <string>

namespace cliquelab {

double edge_probability(unsigned n, unsigned alpha) {
  if (alpha < 4 || alpha > n)
    throw ParameterError("edge_probability requires 4 <= alpha <= n (alpha=" + std::to_string(alpha) +
                         ", n=" + std::to_string(n) + ")");
  return std::pow(static_cast<double>(n), -2.0 / (static_cast<double>(alpha) - 1.0));
}

NegDistParams NegDistParams::from_alpha(unsigned n, unsigned alpha) {
  if (n > kMaxVertices) throw ParameterError("n exceeds vertex capacity");
  return NegDistParams{n, alpha, edge_probability(n, alpha)};
}

NegDistParams NegDistParams::with_edge_probability(unsigned n, double p) {
  if (n > kMaxVertices) throw ParameterError("n exceeds vertex capacity");
  if (!(p >= 0.0 && p <= 1.0)) throw ParameterError("edge probability outside [0, 1]");
  return NegDistParams{n, 0, p};
}

PosDistParams PosDistParams::make(unsigned n, unsigned beta) {
  if (n > kMaxVertices) throw ParameterError("n exceeds vertex capacity");
  if (beta < 2 || beta > n)
    throw ParameterError("planted clique requires 2 <= beta <= n (beta=" + std::to_string(beta) + ")");
  return PosDistParams{n, beta};
}

Graph sample_gnp(unsigned n, double p, Rng& rng) {
  Graph g(n);
  for (unsigned u = 0; u < n; ++u)
    for (unsigned v = u + 1; v < n; ++v)
      if (rng.uniform01() < p) g.add_edge(u, v);
  return g;
}

std::vector<double> sample_slot_uniforms(unsigned n, Rng& rng) {
  std::vector<double> uniforms(edge_slot_count(n));
  for (auto& x : uniforms) x = rng.uniform01();
  return uniforms;
}

Graph threshold_uniforms(unsigned n, const std::vector<double>& uniforms, double p) {
  if (uniforms.size() != edge_slot_count(n)) throw ParameterError("uniform count does not match C(n,2)");
  Graph g(n);
  std::size_t slot = 0;
  for (unsigned u = 0; u < n; ++u)
    for (unsigned v = u + 1; v < n; ++v)
      if (uniforms[slot++] < p) g.add_edge(u, v);
  return g;
}

VertexSet sample_subset(unsigned n, unsigned size, Rng& rng) {
  if (size > n) throw ParameterError("subset larger than universe");
  std::vector<unsigned> pool(n);
  std::iota(pool.begin(), pool.end(), 0u);
  VertexSet out;
  for (unsigned i = 0; i < size; ++i) {
    const auto j = i + static_cast<unsigned>(rng.below(n - i));
    std::swap(pool[i], pool[j]);
    out.insert(pool[i]);
  }
  return out;
}

Graph sample_negative(const NegDistParams& params, Rng& rng) { return sample_gnp(params.n, params.p, rng); }

Graph sample_negative(const NegDistParams& params, const SeedSpec& seed, std::uint64_t trial) {
  Rng rng = Rng::for_trial(seed, trial);
  return sample_negative(params, rng);
}

Graph sample_positive(const PosDistParams& params, Rng& rng) {
  return Graph::clique_on(params.n, sample_subset(params.n, params.beta, rng));
}

Graph sample_positive(const PosDistParams& params, const SeedSpec& seed, std::uint64_t trial) {
  Rng rng = Rng::for_trial(seed, trial);
  return sample_positive(params, rng);
}

Graph sample(const Distribution& dist, Rng& rng) {
  return std::visit([&](const auto& d) -> Graph {
    using T = std::decay_t<decltype(d)>;
    if constexpr (std::is_same_v<T, NegDistParams>)
      return sample_negative(d, rng);
    else
      return sample_positive(d, rng);
  }, dist);
}

unsigned vertex_count(const Distribution& dist) {
  return std::visit([](const auto& d) { return d.n; }, dist);
}

namespace {

bool extend_clique(const Graph& g, VertexSet candidates, unsigned need) {
  if (need == 0) return true;
  while (candidates.size() >= need) {
    const unsigned v = candidates.first();
    candidates.erase(v);
    if (extend_clique(g, candidates & g.neighbors(v), need - 1)) return true;
  }
  return false;
}

}  // namespace

bool contains_clique(const Graph& g, unsigned k) {
  if (k < 1 || k > g.n()) throw ParameterError("contains_clique requires 1 <= k <= n");
  return extend_clique(g, VertexSet::range(0, g.n()), k);
}

Rational clique_prob_positive(unsigned n, unsigned beta, unsigned ell) {
  if (ell < 2 || ell > beta || beta > n) throw ParameterError("clique_prob_positive requires 2 <= ell <= beta <= n");
  return Rational(binomial(n - ell, beta - ell), binomial(n, beta));
}

double clique_prob_negative(double p, unsigned ell) {
  if (!(p >= 0.0 && p <= 1.0) || ell < 2) throw ParameterError("clique_prob_negative requires p in [0,1], ell >= 2");
  return std::pow(p, static_cast<double>(choose2(ell)));
}

Rational clique_prob_negative(const Rational& p, unsigned ell) {
  if (p < 0 || p > 1 || ell < 2) throw ParameterError("clique_prob_negative requires p in [0,1], ell >= 2");
  return power(p, static_cast<unsigned>(choose2(ell)));
}

}  // namespace cliquelab
