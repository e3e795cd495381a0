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

#include <set>
#include <sstream>

#include "cliquelab/approx.hpp"
#include "doctest.h"
#include "json.hpp"
#include "test_support.hpp"

using namespace cliquelab;
using cliquelab::testing::clique_edges;
using cliquelab::testing::for_each_graph_on;
using cliquelab::testing::naive_dnf;

namespace {

VertexSet S(std::initializer_list<unsigned> one_based) {
  VertexSet s;
  for (unsigned v : one_based) s.insert(v - 1);
  return s;
}

Approximator A(unsigned n, std::initializer_list<std::initializer_list<unsigned>> terms) {
  std::vector<VertexSet> t;
  for (auto x : terms) t.push_back(S(x));
  return Approximator(n, t);
}

Approximator random_approximator(unsigned n, Rng& rng, unsigned max_terms = 5, unsigned max_size = 4) {
  std::vector<VertexSet> terms;
  const unsigned count = static_cast<unsigned>(rng.below(max_terms + 1));
  for (unsigned i = 0; i < count; ++i)
    terms.push_back(sample_subset(n, 2 + static_cast<unsigned>(rng.below(max_size - 1)), rng));
  return Approximator(n, terms);
}

bool is_antichain(const Approximator& a) {
  const auto& t = a.terms();
  for (std::size_t i = 0; i < t.size(); ++i)
    for (std::size_t j = 0; j < t.size(); ++j)
      if (i != j && t[i].is_subset_of(t[j])) return false;
  return std::is_sorted(t.begin(), t.end());
}

// Pr over G(n,p) restricted to the listed edges, by direct enumeration.
Rational brute_probability(unsigned n, const std::vector<std::pair<unsigned, unsigned>>& edges, const Rational& p,
                           const std::function<bool(const Graph&)>& event) {
  Rational total = 0;
  for_each_graph_on(n, edges, [&](const Graph& g) {
    if (!event(g)) return;
    const auto k = static_cast<unsigned>(g.edge_count());
    total += power(p, k) * power(1 - p, static_cast<unsigned>(edges.size()) - k);
  });
  return total;
}

MonotoneCircuit circuit_from(unsigned n, const std::function<GateId(CircuitBuilder&)>& body) {
  CircuitBuilder b(n);
  const GateId out = body(b);
  return b.build(out);
}

}  // namespace

TEST_CASE("approximator representation") {
  const auto a = A(5, {{1, 2, 3}, {1, 2}, {4, 5}, {1, 2}});
  CHECK(a.terms() == std::vector<VertexSet>{S({1, 2}), S({4, 5})});
  CHECK(Approximator::constant_zero(4).is_constant_zero());
  CHECK(Approximator::constant_one(4).is_constant_one());
  CHECK(A(4, {{3}, {1, 2}}).is_constant_one());
  CHECK(A(4, {{3}, {1, 2}}).evaluate(Graph(4)));
  CHECK_FALSE(Approximator::constant_zero(4).evaluate(Graph::complete(4)));
  CHECK(A(6, {{1, 2}, {1, 2, 3}, {4, 5, 6}, {2, 4, 5, 6}}).size_histogram() == std::vector<std::size_t>{0, 0, 1, 1});
  CHECK_THROWS_AS(A(3, {{1, 4}}), ParameterError);
  CHECK(Approximator::from_family(a.to_family()) == a);
}

TEST_CASE("compression functions with the identity") {
  const auto id = CompressionParams::identity();
  CHECK(approx_and(A(4, {{1, 2}}), A(4, {{1, 3}}), id) == A(4, {{1, 2, 3}}));
  CHECK(approx_and(Approximator::constant_zero(4), A(4, {{1, 3}}), id).is_constant_zero());
  CHECK(approx_and(A(4, {{1, 2}, {3, 4}}), A(4, {{1, 2}}), id) == A(4, {{1, 2}}));
  CHECK(approx_or(A(4, {{1, 2}}), A(4, {{1, 2, 3}}), id) == A(4, {{1, 2}}));
  CHECK(approx_or(A(4, {{1, 2}}), Approximator::constant_one(4), id).is_constant_one());
  CHECK(approx_or(A(6, {{1, 2}}), A(6, {{3, 4}, {5, 6}}), id) == A(6, {{1, 2}, {3, 4}, {5, 6}}));
  CHECK_THROWS_AS(approx_or(A(4, {{1, 2}}), A(5, {{1, 2}}), id), ParameterError);

  SUBCASE("pointwise soundness over every graph on the relevant edges") {
    Rng rng(51);
    for (int t = 0; t < 150; ++t) {
      const unsigned n = 4 + static_cast<unsigned>(rng.below(5));
      const auto a = random_approximator(n, rng, 3, 3);
      const auto b = random_approximator(n, rng, 3, 3);
      const auto conj = approx_and(a, b, id);
      const auto disj = approx_or(a, b, id);
      CHECK(is_antichain(conj));
      CHECK(is_antichain(disj));
      const auto edges = clique_edges({a.terms(), b.terms(), conj.terms()});
      if (edges.size() > 18) continue;
      bool and_below = true, or_equal = true;
      for_each_graph_on(n, edges, [&](const Graph& g) {
        const bool x = naive_dnf(a.terms(), g), y = naive_dnf(b.terms(), g);
        and_below &= !naive_dnf(conj.terms(), g) || (x && y);
        or_equal &= naive_dnf(disj.terms(), g) == (x || y);
      });
      CHECK(and_below);
      CHECK(or_equal);
    }
  }

  SUBCASE("conjunction is exact on planted cliques") {
    Rng rng(52);
    for (int t = 0; t < 200; ++t) {
      const unsigned n = 4 + static_cast<unsigned>(rng.below(5));
      const auto a = random_approximator(n, rng);
      const auto b = random_approximator(n, rng);
      const auto conj = approx_and(a, b, id);
      for (unsigned beta = 2; beta <= n; ++beta)
        for_each_subset(n, beta, [&](const VertexSet& s) {
          const Graph g = Graph::clique_on(n, s);
          CHECK(naive_dnf(conj.terms(), g) == (naive_dnf(a.terms(), g) && naive_dnf(b.terms(), g)));
        });
    }
  }

  SUBCASE("singleton terms break the planted-clique identity") {
    // {1} is constant 1 and {2} is constant 1, but their union {1,2} reads an edge.
    const auto conj = approx_and(A(3, {{1}}), A(3, {{2}}), id);
    CHECK(conj == A(3, {{1, 2}}));
    CHECK_FALSE(conj.evaluate(Graph(3)));
  }
}

TEST_CASE("trim") {
  CHECK(trim(A(5, {{1, 2}, {1, 3, 4, 5}}), 3) == A(5, {{1, 2}}));
  CHECK(trim(A(5, {{1, 2}, {3, 4, 5}}), 3) == A(5, {{1, 2}, {3, 4, 5}}));
  CHECK(trim(A(5, {{1, 2, 3}, {3, 4, 5}}), 2).is_constant_zero());
  CHECK_THROWS_AS(CompressionParams::trim_only(1), ParameterError);

  Rng rng(53);
  for (int t = 0; t < 100; ++t) {
    const unsigned n = 4 + static_cast<unsigned>(rng.below(4));
    const auto a = random_approximator(n, rng, 4, 4);
    const auto tr = trim(a, 2 + static_cast<unsigned>(rng.below(2)));
    CHECK(is_antichain(tr));
    const auto edges = clique_edges({a.terms()});
    if (edges.size() > 18) continue;
    bool below = true;
    for_each_graph_on(n, edges, [&](const Graph& g) { below &= !naive_dnf(tr.terms(), g) || naive_dnf(a.terms(), g); });
    CHECK(below);
  }
}

TEST_CASE("closure") {
  SUBCASE("a robust star collapses to its centre") {
    const auto res = closure(A(5, {{1, 2}, {1, 3}, {1, 4}, {1, 5}}), ClosureParams{Rational(1, 2), Rational(1, 10)});
    CHECK(res.result == A(5, {{1}}));
    REQUIRE(res.log.size() == 1);
    CHECK(res.log[0].core == S({1}));
    CHECK(res.log[0].petals.size() == 4);
    CHECK(res.log[0].coverage.value == Rational(15, 16));
  }

  SUBCASE("nothing robust at low density") {
    const auto a = A(4, {{1, 2}, {3, 4}});
    const auto res = closure(a, ClosureParams{Rational(1, 100), Rational(1, 100)});
    CHECK(res.result == a);
    CHECK(res.log.empty());
  }

  SUBCASE("constants are fixed points") {
    const ClosureParams params{Rational(1, 2), Rational(1, 2)};
    CHECK(closure(Approximator::constant_one(5), params).result == Approximator::constant_one(5));
    CHECK(closure(Approximator::constant_zero(5), params).result == Approximator::constant_zero(5));
  }

  SUBCASE("large petal sets use Monte Carlo and stop on inconclusive verdicts") {
    // 25 edges from vertex 1: beyond exact capacity.
    std::vector<VertexSet> star;
    for (unsigned v = 1; v < 26; ++v) star.push_back(VertexSet{0, v});
    const Approximator big(26, star);
    const auto res = closure(big, ClosureParams{Rational(1, 2), Rational(1, 10), 4000, SeedSpec{1, 0}});
    CHECK(res.result == A(26, {{1}}));
    REQUIRE(res.log.size() == 1);
    CHECK_FALSE(res.log[0].coverage.exact);

    // 25 disjoint edges at p = 1/25: coverage is exactly 1 - (24/25)^25, the threshold itself.
    std::vector<VertexSet> matching;
    for (unsigned i = 0; i < 25; ++i) matching.push_back(VertexSet{2 * i, 2 * i + 1});
    const Rational eps = power(Rational(24, 25), 25);
    CHECK_THROWS_AS(closure(Approximator(50, matching), ClosureParams{Rational(1, 25), eps, 2000, SeedSpec{2, 0}}),
                    InconclusiveError);
  }

  SUBCASE("soundness and bookkeeping on random approximators") {
    Rng rng(54);
    std::size_t fired = 0;
    for (int t = 0; t < 300; ++t) {
      const unsigned n = 4 + static_cast<unsigned>(rng.below(4));
      const auto a = random_approximator(n, rng, 6, 3);
      const Rational p(1 + static_cast<long>(rng.below(3)), 4);
      const Rational eps(1 + static_cast<long>(rng.below(3)), 4);
      const auto res = closure(a, ClosureParams{p, eps});
      CHECK(is_antichain(res.result));
      fired += !res.log.empty();

      std::set<VertexSet> cores;
      for (const auto& r : res.log) {
        CHECK(cores.insert(r.core).second);
        CHECK(r.petals.intersection() == r.core);
        CHECK(r.coverage.value >= 1 - eps);
        const Rational err = replacement_negative_error(r, p);
        CHECK(err <= eps);
        // Oracle: newly accepted graphs contain K_core and none of the petal cliques.
        const auto edges = clique_edges({r.petals.sets(), {r.core}});
        if (edges.size() <= 16)
          CHECK(err == brute_probability(n, edges, p, [&](const Graph& g) {
                  return naive_dnf({r.core}, g) && !naive_dnf(r.petals.sets(), g);
                }));
      }

      const auto edges = clique_edges({a.terms(), res.result.terms()});
      if (edges.size() > 18) continue;
      bool above = true;
      for_each_graph_on(n, edges, [&](const Graph& g) {
        above &= !naive_dnf(a.terms(), g) || naive_dnf(res.result.terms(), g);
      });
      CHECK(above);

      // Fixed point: no candidate core has robust petals left.
      CHECK(closure(res.result, ClosureParams{p, eps}).log.empty());
    }
    CHECK(fired > 20);
  }
}

TEST_CASE("circuit approximation") {
  const auto id = CompressionParams::identity();
  const auto x12 = circuit_from(4, [](CircuitBuilder& b) { return b.input(0, 1); });
  CHECK(approximate_circuit(x12, id).output == A(4, {{1, 2}}));

  const auto x12_and_x13 = circuit_from(4, [](CircuitBuilder& b) { return b.and_gate(b.input(0, 1), b.input(0, 2)); });
  const auto res = approximate_circuit(x12_and_x13, id);
  CHECK(res.output == A(4, {{1, 2, 3}}));
  Graph cherry(4);
  cherry.add_edge(0, 1);
  cherry.add_edge(0, 2);
  CHECK(evaluate(x12_and_x13, cherry));
  CHECK_FALSE(res.output.evaluate(cherry));

  const auto depth2 = circuit_from(4, [](CircuitBuilder& b) {
    const GateId x12 = b.input(0, 1);
    return b.or_gate(b.and_gate(x12, b.input(0, 2)), b.and_gate(x12, b.input(0, 3)));
  });
  CHECK(approximate_circuit(depth2, id).output == A(4, {{1, 2, 3}, {1, 2, 4}}));

  const auto constants = circuit_from(3, [](CircuitBuilder& b) { return b.and_gate(b.constant(true), b.input(1, 2)); });
  CHECK(approximate_circuit(constants, id).output == A(3, {{2, 3}}));

  SUBCASE("trace") {
    const auto traced = approximate_circuit(depth2, CompressionParams::standard(Rational(1, 2), Rational(1, 2), 2));
    CHECK(traced.trace.gates.size() == depth2.gates().size());
    std::istringstream lines(traced.trace.to_json_lines());
    std::string line;
    std::size_t count = 0;
    while (std::getline(lines, line)) {
      const auto j = nlohmann::json::parse(line);
      CHECK(j["gate"] == count + 1);
      for (const char* key : {"op", "terms", "histogram", "replacements", "trimmed"}) CHECK(j.contains(key));
      ++count;
    }
    CHECK(count == depth2.gates().size());
  }

  SUBCASE("replacement count bound") {
    Rng rng(55);
    for (int t = 0; t < 30; ++t) {
      const unsigned n = 6;
      const auto c = cliquelab::testing::random_circuit(n, 8, 14, rng);
      const unsigned trim_c = 2 + static_cast<unsigned>(rng.below(2));
      const auto r = approximate_circuit(c, CompressionParams::standard(Rational(1, 2), Rational(1, 4), trim_c));
      for (const auto& g : r.trace.gates) {
        CHECK(g.replacements.size() <= static_cast<std::size_t>(std::pow(n, 2 * trim_c)));
        for (const auto& term : g.post.terms()) CHECK(term.size() <= trim_c);
      }
    }
  }
}

TEST_CASE("one-step errors") {
  const auto id = CompressionParams::identity();
  const auto pos = PosDistParams::make(4, 3);

  SUBCASE("identity conjunction has no negative error") {
    const auto c = circuit_from(4, [](CircuitBuilder& b) { return b.and_gate(b.input(0, 1), b.input(2, 3)); });
    const auto errs = exact_step_errors(approximate_circuit(c, id).trace, Rational(1, 3), pos);
    for (const auto& e : errs) CHECK(e.zeta_minus == 0);
    // x12 and x34 never hold together on a planted triangle, nor does K_1234.
    for (const auto& e : errs) CHECK(e.zeta_plus == 0);
  }

  SUBCASE("identity disjunction is exact") {
    const auto c = circuit_from(4, [](CircuitBuilder& b) {
      return b.or_gate(b.and_gate(b.input(0, 1), b.input(1, 2)), b.input(2, 3));
    });
    const auto errs = exact_step_errors(approximate_circuit(c, id).trace, Rational(1, 2), pos);
    CHECK(errs.back().kind == GateKind::kOr);
    CHECK(errs.back().zeta_plus == 0);
    CHECK(errs.back().zeta_minus == 0);
  }

  SUBCASE("trimming everything") {
    const auto c = circuit_from(6, [](CircuitBuilder& b) { return b.and_gate(b.input(0, 1), b.input(0, 2)); });
    const auto trace = approximate_circuit(c, CompressionParams::trim_only(2)).trace;
    CHECK(trace.gates.back().post.is_constant_zero());
    const auto planted = PosDistParams::make(6, 4);
    const auto errs = exact_step_errors(trace, Rational(1, 2), planted);
    // Oracle: Pr[{1,2,3} inside a uniform 4-subset of 6] = C(3,1)/C(6,4).
    CHECK(errs.back().zeta_plus == Rational(3, 15));
    CHECK(errs.back().zeta_minus == 0);
  }

  SUBCASE("Monte Carlo agrees with exact") {
    Rng rng(56);
    const std::uint64_t trials = 4000;
    for (int t = 0; t < 12; ++t) {
      const unsigned n = 6;
      const auto c = cliquelab::testing::random_circuit(n, 6, 10, rng);
      const auto trace = approximate_circuit(c, CompressionParams::standard(Rational(1, 2), Rational(1, 4), 3)).trace;
      const auto neg = NegDistParams::with_edge_probability(n, 0.5);
      const auto planted = PosDistParams::make(n, 3);
      std::vector<ExactStepError> exact;
      try {
        exact = exact_step_errors(trace, Rational(1, 2), planted);
      } catch (const CapacityError&) {
        continue;
      }
      const auto mc = estimate_step_errors(trace, neg, planted, trials, SeedSpec{57, static_cast<unsigned>(t)});
      REQUIRE(mc.size() == exact.size());
      for (std::size_t i = 0; i < mc.size(); ++i) {
        CHECK(cliquelab::testing::within_three_sigma(mc[i].zeta_plus.estimate, to_double(exact[i].zeta_plus), trials));
        CHECK(cliquelab::testing::within_three_sigma(mc[i].zeta_minus.estimate, to_double(exact[i].zeta_minus),
                                                     trials));
      }
    }
  }
}

TEST_CASE("simple approximator audit") {
  const auto single = audit_simple_approximator(A(10, {{1, 2}}), 5);
  CHECK(single.bound == Rational(1, 4));
  CHECK(single.acceptance == clique_prob_positive(10, 5, 2));
  REQUIRE(single.holds.has_value());
  CHECK(*single.holds);

  const auto one = audit_simple_approximator(Approximator::constant_one(10), 5);
  CHECK(one.constant_one);
  CHECK_FALSE(one.holds.has_value());
  CHECK(one.acceptance == 1);

  Rng rng(58);
  int audited = 0;
  for (int t = 0; t < 40 && audited < 10; ++t) {
    const auto a = random_approximator(10, rng, 8, 4);
    const auto fixed = closure(a, ClosureParams{Rational(1, 2), Rational(1, 4)}).result;
    if (fixed.is_constant_one() || fixed.is_constant_zero()) continue;
    const auto report = audit_simple_approximator(fixed, 5);
    CHECK(report.exact);
    REQUIRE(report.holds.has_value());
    CHECK(*report.holds);
    ++audited;
  }
  CHECK(audited == 10);
}
