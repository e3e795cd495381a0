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

#include <array>
#include <cmath>
#include <map>
#include <sstream>

#include "cliquelab/acceptance.hpp"
#include "cliquelab/distributions.hpp"
#include "cliquelab/graph.hpp"
#include "doctest.h"
#include "test_support.hpp"

using namespace cliquelab;
using cliquelab::testing::within_three_sigma;

TEST_CASE("edge probability") {
  CHECK(edge_probability(16, 5) == doctest::Approx(0.25).epsilon(1e-15));
  // 100^(-2/19) evaluated with 30-digit arithmetic.
  CHECK(edge_probability(100, 20) == doctest::Approx(0.61584821106602637).epsilon(1e-13));

  for (unsigned n : {4u, 10u, 50u, 100u, 128u})
    for (unsigned alpha = 4; alpha <= std::min(n, 40u); ++alpha) {
      const double p = edge_probability(n, alpha);
      const double lhs = std::pow(p, static_cast<double>(choose2(alpha)));
      const double rhs = std::pow(static_cast<double>(n), -static_cast<double>(alpha));
      CHECK(std::abs(lhs - rhs) <= 1e-12 * rhs);
    }

  CHECK_THROWS_AS(edge_probability(10, 3), ParameterError);
  CHECK_THROWS_AS(edge_probability(10, 11), ParameterError);
}

TEST_CASE("edge slots are a canonical lexicographic bijection") {
  for (unsigned n : {2u, 3u, 7u, 20u}) {
    std::size_t expected = 0;
    for (unsigned u = 0; u < n; ++u)
      for (unsigned v = u + 1; v < n; ++v) {
        CHECK(edge_slot(n, u, v) == expected);
        CHECK(edge_slot(n, v, u) == expected);
        CHECK(edge_from_slot(n, expected) == std::make_pair(u, v));
        ++expected;
      }
    CHECK(expected == edge_slot_count(n));
  }
  CHECK_THROWS_AS(edge_slot(5, 2, 2), ParameterError);
}

TEST_CASE("vertex sets order by size then lexicographically") {
  CHECK(VertexSet{} < VertexSet{3});
  CHECK(VertexSet{3} < VertexSet{0, 1});
  CHECK(VertexSet{0, 5} < VertexSet{1, 2});
  CHECK(VertexSet{0, 1, 9} < VertexSet{0, 2, 3});
  CHECK(VertexSet{100, 2} > VertexSet{2, 64});
  CHECK(VertexSet{1, 70}.first() == 1);
  CHECK(VertexSet{70}.first() == 70);
  CHECK(VertexSet{0, 127}.bound() == 128);
  CHECK(VertexSet{0, 2}.to_string() == "{1,3}");
}

TEST_CASE("negative sampler") {
  Rng rng(1);
  CHECK(sample_gnp(12, 0.0, rng).edge_count() == 0);
  CHECK(sample_gnp(12, 1.0, rng) == Graph::complete(12));

  SUBCASE("seeded determinism") {
    const auto params = NegDistParams::from_alpha(40, 6);
    const SeedSpec seed{77, 3};
    CHECK(sample_negative(params, seed, 5) == sample_negative(params, seed, 5));
    CHECK_FALSE(sample_negative(params, seed, 5) == sample_negative(params, seed, 6));
  }

  SUBCASE("mean edge count within 3 sigma") {
    const auto params = NegDistParams::from_alpha(50, 5);
    const double slots = static_cast<double>(edge_slot_count(50));
    const int samples = 10000;
    double total = 0.0;
    for (int t = 0; t < samples; ++t) total += static_cast<double>(sample_negative(params, SeedSpec{9, 0}, t).edge_count());
    const double mean = total / samples;
    const double sigma = std::sqrt(slots * params.p * (1 - params.p) / samples);
    CHECK(std::abs(mean - params.p * slots) <= 3 * sigma);
  }

  SUBCASE("coupled uniforms never add edges when p decreases") {
    Rng r(5);
    for (int trial = 0; trial < 50; ++trial) {
      const auto u = sample_slot_uniforms(20, r);
      Graph previous = threshold_uniforms(20, u, 1.0);
      for (double p = 0.9; p >= 0.0; p -= 0.1) {
        Graph g = threshold_uniforms(20, u, p);
        CHECK(g.is_subgraph_of(previous));
        previous = g;
      }
    }
    Rng a(11), b(11);
    CHECK(threshold_uniforms(15, sample_slot_uniforms(15, a), 0.3) == sample_gnp(15, 0.3, b));
  }
}

TEST_CASE("positive sampler") {
  Rng rng(2);
  CHECK(sample_positive(PosDistParams::make(9, 9), rng) == Graph::complete(9));
  for (int t = 0; t < 200; ++t) CHECK(sample_positive(PosDistParams::make(30, 7), rng).edge_count() == 21);

  SUBCASE("supports are uniform over the 20 triples of [6]") {
    const auto params = PosDistParams::make(6, 3);
    std::map<std::vector<unsigned>, int> freq;
    const int samples = 100000;
    for (int t = 0; t < samples; ++t) {
      const Graph g = sample_positive(params, SeedSpec{4, 0}, t);
      std::vector<unsigned> support;
      for (unsigned v = 0; v < 6; ++v)
        if (g.neighbors(v).size() > 0) support.push_back(v);
      ++freq[support];
    }
    CHECK(freq.size() == 20);
    for (const auto& [support, count] : freq) CHECK(within_three_sigma(count / double(samples), 1.0 / 20, samples));
  }

  CHECK_THROWS_AS(PosDistParams::make(5, 1), ParameterError);
  CHECK_THROWS_AS(PosDistParams::make(5, 6), ParameterError);
}

TEST_CASE("clique search") {
  Graph triangle(3);
  triangle.add_edge(0, 1);
  triangle.add_edge(1, 2);
  triangle.add_edge(0, 2);
  CHECK(contains_clique(triangle, 3));
  CHECK_FALSE(contains_clique(Graph(5), 2));
  CHECK(contains_clique(Graph(5), 1));
  CHECK_THROWS_AS(contains_clique(Graph(5), 0), ParameterError);
  CHECK_THROWS_AS(contains_clique(Graph(5), 6), ParameterError);

  SUBCASE("agrees with naive enumeration for n <= 12") {
    Rng rng(3);
    for (int trial = 0; trial < 300; ++trial) {
      const unsigned n = 1 + static_cast<unsigned>(rng.below(12));
      const Graph g = cliquelab::testing::random_graph(n, 0.2 + 0.6 * rng.uniform01(), rng);
      for (unsigned k = 1; k <= n; ++k) CHECK(contains_clique(g, k) == cliquelab::testing::naive_contains_clique(g, k));
    }
  }

  SUBCASE("alpha-cliques are rare at the calibrated density") {
    const auto params = NegDistParams::from_alpha(50, 5);
    int hits = 0;
    for (int t = 0; t < 10000; ++t) hits += contains_clique(sample_negative(params, SeedSpec{21, 0}, t), 5);
    CHECK(hits / 10000.0 < 0.25);
  }
}

namespace {

// Average of [B subset of planted] over every planted support.
Rational enumerate_planted_inclusion(unsigned n, unsigned beta, unsigned ell) {
  const VertexSet b = VertexSet::range(0, ell);
  std::uint64_t hits = 0, total = 0;
  for_each_subset(n, beta, [&](const VertexSet& planted) {
    ++total;
    hits += b.is_subset_of(planted);
  });
  return Rational(BigInt(hits), BigInt(total));
}

}  // namespace

TEST_CASE("planted clique inclusion probability") {
  CHECK(clique_prob_positive(4, 2, 2) == Rational(1, 6));
  CHECK(enumerate_planted_inclusion(4, 2, 2) == Rational(1, 6));
  CHECK(clique_prob_positive(10, 4, 4) == Rational(BigInt(1), binomial(10, 4)));

  for (unsigned n = 2; n <= 12; ++n)
    for (unsigned beta = 2; beta <= n; ++beta)
      for (unsigned ell = 2; ell <= beta; ++ell) {
        const Rational exact = clique_prob_positive(n, beta, ell);
        CHECK(exact == enumerate_planted_inclusion(n, beta, ell));
        CHECK(exact <= power(Rational(beta, n), ell));
      }

  CHECK_THROWS_AS(clique_prob_positive(10, 4, 5), ParameterError);
  CHECK_THROWS_AS(clique_prob_positive(10, 4, 1), ParameterError);
}

TEST_CASE("random-graph clique inclusion probability") {
  CHECK(clique_prob_negative(0.37, 2) == 0.37);
  CHECK(clique_prob_negative(Rational(1, 2), 3) == Rational(1, 8));
  CHECK(clique_prob_negative(0.5, 3) == 0.125);
  CHECK_THROWS_AS(clique_prob_negative(1.5, 3), ParameterError);
  CHECK_THROWS_AS(clique_prob_negative(0.5, 1), ParameterError);

  const auto params = NegDistParams::with_edge_probability(30, 0.3);
  const VertexSet a{0, 1, 2, 3};
  const int samples = 100000;
  int hits = 0;
  for (int t = 0; t < samples; ++t) hits += sample_negative(params, SeedSpec{8, 1}, t).contains_clique_on(a);
  CHECK(within_three_sigma(hits / double(samples), std::pow(0.3, 6), samples));
}

TEST_CASE("GRAPH text format") {
  Graph g(5);
  g.add_edge(3, 1);
  g.add_edge(0, 4);
  g.add_edge(0, 1);
  const std::string text = to_graph_text(g);
  CHECK(text == "GRAPH n=5\n1 2\n1 5\n2 4\n\n");
  CHECK(parse_graph(text) == g);

  std::istringstream two(text + to_graph_text(Graph::complete(3)));
  const auto graphs = parse_graphs(two);
  REQUIRE(graphs.size() == 2);
  CHECK(graphs[1] == Graph::complete(3));

  CHECK_THROWS_AS(parse_graph("GRAPH n=3\n1 1\n"), ParseError);
  CHECK_THROWS_AS(parse_graph("GRAPH n=3\n1 2\n2 1\n"), ParseError);
  CHECK_THROWS_AS(parse_graph("GRAPH n=3\n1 4\n"), ParseError);
  CHECK_THROWS_AS(parse_graph("GRAF n=3\n"), ParseError);
  try {
    parse_graph("GRAPH n=4\n1 2\n3 3\n");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 3);
  }
}
