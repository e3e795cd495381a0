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

// Independent brute-force oracles shared by the unit suites. Nothing here
// calls into the code path it is used to check.

#ifndef CLIQUELAB_TESTS_TEST_SUPPORT_HPP_
#define CLIQUELAB_TESTS_TEST_SUPPORT_HPP_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <vector>

#include "cliquelab/circuit.hpp"
#include "cliquelab/graph.hpp"
#include "cliquelab/random.hpp"

namespace cliquelab::testing {

/// Graph on n vertices whose edges are the set bits of `mask` in slot order.
inline Graph graph_from_mask(unsigned n, std::uint64_t mask) {
  Graph g(n);
  std::size_t slot = 0;
  for (unsigned u = 0; u < n; ++u)
    for (unsigned v = u + 1; v < n; ++v, ++slot)
      if ((mask >> slot) & 1) g.add_edge(u, v);
  return g;
}

inline Graph random_graph(unsigned n, double p, Rng& rng) {
  Graph g(n);
  for (unsigned u = 0; u < n; ++u)
    for (unsigned v = u + 1; v < n; ++v)
      if (rng.uniform01() < p) g.add_edge(u, v);
  return g;
}

/// Naive k-clique test over all k-subsets via bitmask enumeration (n <= 20).
inline bool naive_contains_clique(const Graph& g, unsigned k) {
  const unsigned n = g.n();
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    if (static_cast<unsigned>(__builtin_popcount(mask)) != k) continue;
    bool ok = true;
    for (unsigned u = 0; u < n && ok; ++u)
      for (unsigned v = u + 1; v < n && ok; ++v)
        if (((mask >> u) & 1) && ((mask >> v) & 1) && !g.has_edge(u, v)) ok = false;
    if (ok) return true;
  }
  return false;
}

/// Recursive evaluator working from the output down, memo-free.
inline bool reference_evaluate(const MonotoneCircuit& c, const Graph& g, GateId id) {
  const Gate& gate = c.gates()[id];
  switch (gate.kind) {
    case GateKind::kInput: return g.has_edge(gate.a, gate.b);
    case GateKind::kAnd: return reference_evaluate(c, g, gate.a) && reference_evaluate(c, g, gate.b);
    case GateKind::kOr: return reference_evaluate(c, g, gate.a) || reference_evaluate(c, g, gate.b);
    case GateKind::kConst0: return false;
    case GateKind::kConst1: return true;
  }
  return false;
}

inline bool reference_evaluate(const MonotoneCircuit& c, const Graph& g) {
  return reference_evaluate(c, g, c.output());
}

/// Random circuit with `inputs` input gates and `internal` AND/OR gates.
inline MonotoneCircuit random_circuit(unsigned n, unsigned inputs, unsigned internal, Rng& rng) {
  std::vector<Gate> gates;
  for (unsigned i = 0; i < inputs; ++i) {
    auto u = static_cast<std::uint32_t>(rng.below(n));
    auto v = static_cast<std::uint32_t>(rng.below(n - 1));
    if (v >= u) ++v;
    if (u > v) std::swap(u, v);
    gates.push_back({GateKind::kInput, u, v});
  }
  for (unsigned i = 0; i < internal; ++i) {
    const auto size = static_cast<std::uint32_t>(gates.size());
    const auto kind = rng.below(2) == 0 ? GateKind::kAnd : GateKind::kOr;
    gates.push_back({kind, static_cast<std::uint32_t>(rng.below(size)), static_cast<std::uint32_t>(rng.below(size))});
  }
  return MonotoneCircuit(n, gates, static_cast<GateId>(gates.size() - 1));
}

/// |observed - expected| <= 3 sigma of a mean of `trials` Bernoulli(p).
inline bool within_three_sigma(double observed, double p, double trials) {
  const double sigma = std::sqrt(p * (1.0 - p) / trials);
  return std::abs(observed - p) <= 3.0 * sigma + 1e-12;
}

/// OR over terms of the clique on the term, checked pair by pair; terms of
/// size <= 1 are true.
inline bool naive_dnf(const std::vector<VertexSet>& terms, const Graph& g) {
  for (const auto& t : terms) {
    const auto m = t.members();
    bool all = true;
    for (std::size_t i = 0; i < m.size() && all; ++i)
      for (std::size_t j = i + 1; j < m.size() && all; ++j) all = g.has_edge(m[i], m[j]);
    if (all) return true;
  }
  return false;
}

/// Distinct pairs inside any term of any of the families.
inline std::vector<std::pair<unsigned, unsigned>> clique_edges(const std::vector<std::vector<VertexSet>>& families) {
  std::vector<std::pair<unsigned, unsigned>> edges;
  for (const auto& f : families)
    for (const auto& t : f) {
      const auto m = t.members();
      for (std::size_t i = 0; i < m.size(); ++i)
        for (std::size_t j = i + 1; j < m.size(); ++j) edges.emplace_back(m[i], m[j]);
    }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  return edges;
}

/// Calls fn(g) for all 2^|edges| graphs on [n] using only the given edges.
inline void for_each_graph_on(unsigned n, const std::vector<std::pair<unsigned, unsigned>>& edges,
                              const std::function<void(const Graph&)>& fn) {
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << edges.size()); ++mask) {
    Graph g(n);
    for (std::size_t i = 0; i < edges.size(); ++i)
      if ((mask >> i) & 1) g.add_edge(edges[i].first, edges[i].second);
    fn(g);
  }
}

}  // namespace cliquelab::testing

#endif  // CLIQUELAB_TESTS_TEST_SUPPORT_HPP_
