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

// Acceptance run: one PASS/FAIL line per criterion. Tolerances are fixed
// below; the exit status is nonzero when any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "cliquelab/approx.hpp"
#include "cliquelab/circuit_io.hpp"
#include "cliquelab/distinguisher.hpp"
#include "cliquelab/process.hpp"
#include "cliquelab/sunflower.hpp"
#include "test_support.hpp"

using namespace cliquelab;
using cliquelab::testing::clique_edges;
using cliquelab::testing::for_each_graph_on;
using cliquelab::testing::naive_dnf;

namespace {

// Criterion 1.
constexpr unsigned kRefN = 100, kRefAlpha = 20, kRefBeta = 50;
constexpr unsigned kRefEll = 6;
constexpr std::uint64_t kRefTrials = 1000;
constexpr double kSuccessBar = 2.0 / 3.0;
constexpr double kRuntimeLimitSeconds = 300.0;
// Criterion 2.
constexpr int kAgreementInstances = 100;
constexpr std::uint64_t kAgreementTrials = 4000;
constexpr double kSigmaBound = 3.0;
constexpr double kMaxOutlierFraction = 0.02;  // 3-sigma misses allowed per suite
// Criterion 4.
constexpr std::uint64_t kPremiseTarget = 700;
// Criterion 5.
constexpr unsigned kRandomLiftings = 50;
// Criterion 6.
constexpr unsigned kMaxSoundnessEdges = 16;
constexpr int kAuditedFixedPoints = 10;
// Criterion 8.
constexpr std::uint64_t kSanitySamples = 10000;
constexpr double kSanityBound = 0.05;

int failures = 0;

void report(int id, bool pass, const std::string& detail) {
  std::printf("CRITERION %d %s: %s\n", id, pass ? "PASS" : "FAIL", detail.c_str());
  std::fflush(stdout);
  if (!pass) ++failures;
}

template <typename... Args>
std::string fmt(const char* f, Args... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

void criterion1() {
  const auto start = std::chrono::steady_clock::now();
  const auto params = plan_distinguisher(kRefN, kRefAlpha, kRefBeta, SeedSpec{2026, 0});
  const auto rep = measure_success(params, kRefTrials);
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  const bool ok = params.ell == kRefEll && params.feasible() && rep.accept_pos.estimate >= kSuccessBar &&
                  rep.reject_neg.estimate >= kSuccessBar && seconds <= kRuntimeLimitSeconds;
  report(1, ok,
         fmt("ell=%u m=%u tau=%u size=%llu accept_pos=%.4f reject_neg=%.4f trials=%llu time=%.1fs", params.ell,
             params.m, params.tau, static_cast<unsigned long long>(rep.circuit_size), rep.accept_pos.estimate,
             rep.reject_neg.estimate, static_cast<unsigned long long>(kRefTrials), seconds));
}

struct Agreement {
  int instances = 0;
  int outliers = 0;
  double z_sum = 0.0;
  bool degenerate_ok = true;

  void add(double estimate, double exact, std::uint64_t trials) {
    ++instances;
    const double sigma = std::sqrt(exact * (1.0 - exact) / static_cast<double>(trials));
    if (sigma == 0.0) {
      degenerate_ok &= estimate == exact;
      return;
    }
    const double z = (estimate - exact) / sigma;
    z_sum += z;
    if (std::abs(z) > kSigmaBound) ++outliers;
  }
  // No systematic drift: the mean z-score stays within 3 standard errors.
  bool ok() const {
    return instances >= kAgreementInstances && degenerate_ok &&
           outliers <= kMaxOutlierFraction * instances &&
           std::abs(z_sum) / std::sqrt(static_cast<double>(instances)) <= kSigmaBound;
  }
  std::string str(const char* name) const {
    return fmt("%s n=%d outliers=%d drift=%.2f", name, instances, outliers,
               instances ? z_sum / std::sqrt(static_cast<double>(instances)) : 0.0);
  }
};

void criterion2() {
  Agreement set_cov, clique_cov, neg_acc, pos_acc;
  Rng rng(202);
  std::uint64_t stream = 0;
  while (set_cov.instances < kAgreementInstances || clique_cov.instances < kAgreementInstances) {
    const unsigned n = 5 + static_cast<unsigned>(rng.below(4));
    const unsigned ell = 2 + static_cast<unsigned>(rng.below(2));
    const SetFamily f = random_uniform_family(n, ell, rng);
    const VertexSet core = f.intersection();
    const Rational p(1 + static_cast<int>(rng.below(9)), 10);
    const MonteCarloMode mc{kAgreementTrials, SeedSpec{31, stream++}};
    if (set_cov.instances < kAgreementInstances) {
      const auto exact = coverage_prob_set(f, core, p, ExactMode{});
      set_cov.add(coverage_prob_set(f, core, p, mc).as_double(), exact.as_double(), kAgreementTrials);
    }
    if (clique_cov.instances < kAgreementInstances) {
      try {
        const auto exact = coverage_prob_clique(f, core, p, ExactMode{});
        clique_cov.add(coverage_prob_clique(f, core, p, mc).as_double(), exact.as_double(), kAgreementTrials);
      } catch (const CapacityError&) {
      }
    }
  }
  for (int i = 0; i < kAgreementInstances; ++i) {
    const auto c = cliquelab::testing::random_circuit(6, 8, 16, rng);
    const auto neg = NegDistParams::with_edge_probability(6, 0.1 + 0.8 * rng.uniform01());
    const auto pos = PosDistParams::make(6, 2 + static_cast<unsigned>(rng.below(5)));
    neg_acc.add(estimate_acceptance(c, neg, kAgreementTrials, SeedSpec{41, static_cast<std::uint64_t>(i)}).estimate,
                exact_acceptance(c, neg), kAgreementTrials);
    pos_acc.add(estimate_acceptance(c, pos, kAgreementTrials, SeedSpec{42, static_cast<std::uint64_t>(i)}).estimate,
                to_double(exact_acceptance(c, pos)), kAgreementTrials);
  }
  report(2, set_cov.ok() && clique_cov.ok() && neg_acc.ok() && pos_acc.ok(),
         set_cov.str("set") + "; " + clique_cov.str("clique") + "; " + neg_acc.str("accept-neg") + "; " +
             pos_acc.str("accept-pos"));
}

void criterion3() {
  int cases = 0, violations = 0, mismatches = 0;
  for (unsigned ell : {2u, 3u})
    for (unsigned k : {2u, 3u, 4u})
      for (unsigned c : {0u, 1u})
        for (const Rational& p : {Rational(3, 10), Rational(1, 2), Rational(7, 10)}) {
          const auto r = verify_sunflower_is_rcs(ell, k, c, p);
          ++cases;
          violations += !r.within_bound;
          mismatches += r.failure != r.closed_form;
        }
  report(3, cases == 36 && violations == 0,
         fmt("cases=%d violations=%d closed-form mismatches=%d", cases, violations, mismatches));
}

void criterion4() {
  std::uint64_t premise = 0, generated = 0, counterexamples = 0;
  std::uint64_t stream = 0;
  for (unsigned ell : {2u, 3u})
    for (const Rational& p : {Rational(7, 10), Rational(4, 5), Rational(9, 10), Rational(19, 20)})
      for (const Rational& eps : {Rational(1, 4), Rational(1, 2), Rational(9, 10)}) {
        const auto r = verify_rs_implies_rcs(40, 7, ell, p, eps, SeedSpec{404, stream++}, 20000);
        premise += r.premise_satisfied;
        generated += r.generated;
        counterexamples += r.counterexamples.size();
      }
  report(4, premise >= kPremiseTarget && counterexamples == 0,
         fmt("premise-satisfying=%llu generated=%llu counterexamples=%llu", static_cast<unsigned long long>(premise),
             static_cast<unsigned long long>(generated), static_cast<unsigned long long>(counterexamples)));
}

unsigned cells_of(const Lifting& phi) {
  std::set<Cell> cells;
  for (const auto& image : phi.images()) cells.insert(image.begin(), image.end());
  return static_cast<unsigned>(cells.size());
}

bool chain_fits(const Lifting& phi) {
  for (unsigned t = 0; t <= phi.n(); ++t)
    if (cells_of(interpolate(phi, t)) > kMaxRelevantCells) return false;
  return true;
}

SetFamily small_family(unsigned n, unsigned k, unsigned sets, Rng& rng) {
  std::set<VertexSet> chosen;
  while (chosen.size() < sets) chosen.insert(sample_subset(n, k, rng));
  return SetFamily(n, std::vector<VertexSet>(chosen.begin(), chosen.end()), k);
}

void criterion5() {
  struct Instance {
    unsigned n, k, ell, sets;
  };
  const Instance instances[] = {{4, 2, 2, 2}, {4, 2, 2, 3}, {5, 2, 2, 3}, {4, 3, 3, 2},
                                {5, 3, 2, 2}, {5, 2, 3, 2}, {4, 1, 2, 3}};
  const std::vector<Rational> ps{Rational(1, 4), Rational(1, 2), Rational(3, 4)};
  Rng rng(505);
  std::uint64_t liftings = 0, chains = 0, violations = 0, short_instances = 0;
  for (const auto& inst : instances) {
    const SetFamily f = small_family(inst.n, inst.k, inst.sets, rng);
    std::vector<Lifting> phis{lifting_left(f, inst.ell)};
    if (inst.ell == inst.k) phis.push_back(lifting_square(f, inst.ell));
    unsigned drawn = 0;
    for (int tries = 0; drawn < kRandomLiftings && tries < 100000; ++tries) {
      Lifting phi = random_proper_lifting(f, inst.ell, rng);
      if (!chain_fits(phi)) continue;
      phis.push_back(std::move(phi));
      ++drawn;
    }
    if (drawn < kRandomLiftings) ++short_instances;
    for (const auto& phi : phis) {
      if (!validate_proper(phi) || !chain_fits(phi)) {
        ++violations;
        continue;
      }
      ++liftings;
      for (const auto& r : verify_comparison_chain(phi, ps)) {
        ++chains;
        if (!r.non_decreasing || !r.lhs_le_rhs) ++violations;
      }
    }
  }
  report(5, violations == 0 && short_instances == 0,
         fmt("instances=%zu liftings=%llu chains=%llu violations=%llu short=%llu", std::size(instances),
             static_cast<unsigned long long>(liftings), static_cast<unsigned long long>(chains),
             static_cast<unsigned long long>(violations), static_cast<unsigned long long>(short_instances)));
}

Approximator random_approximator(unsigned n, Rng& rng, unsigned max_terms, unsigned max_size) {
  std::vector<VertexSet> terms;
  const unsigned count = static_cast<unsigned>(rng.below(max_terms + 1));
  for (unsigned i = 0; i < count; ++i)
    terms.push_back(sample_subset(n, 2 + static_cast<unsigned>(rng.below(max_size - 1)), rng));
  return Approximator(n, terms);
}

void criterion6() {
  Rng rng(606);
  std::uint64_t checked = 0, skipped = 0, pointwise = 0, replacements = 0, replacement_bad = 0;
  const CompressionParams id = CompressionParams::identity();
  for (int t = 0; t < 300; ++t) {
    const unsigned n = 4 + static_cast<unsigned>(rng.below(5));
    const auto a = random_approximator(n, rng, 5, 3);
    const auto b = random_approximator(n, rng, 3, 3);
    const Rational p(1 + static_cast<int>(rng.below(3)), 4);
    const Rational eps(1 + static_cast<int>(rng.below(3)), 4);
    const auto cl = closure(a, ClosureParams{p, eps});
    const auto tr = trim(a, 2 + static_cast<unsigned>(rng.below(2)));
    const auto conj = approx_and(a, b, id);
    const auto disj = approx_or(a, b, id);
    for (const auto& r : cl.log) {
      ++replacements;
      if (!r.coverage.exact || replacement_negative_error(r, p) > eps) ++replacement_bad;
    }
    const auto edges = clique_edges({a.terms(), b.terms(), cl.result.terms(), conj.terms()});
    if (edges.size() > kMaxSoundnessEdges) {
      ++skipped;
      continue;
    }
    ++checked;
    bool ok = true;
    for_each_graph_on(n, edges, [&](const Graph& g) {
      const bool x = naive_dnf(a.terms(), g), y = naive_dnf(b.terms(), g);
      ok &= !x || naive_dnf(cl.result.terms(), g);
      ok &= !naive_dnf(tr.terms(), g) || x;
      ok &= naive_dnf(disj.terms(), g) == (x || y);
      ok &= !naive_dnf(conj.terms(), g) || (x && y);
    });
    pointwise += !ok;
  }

  std::uint64_t circuits = 0, count_bad = 0;
  for (int t = 0; t < 60; ++t) {
    const unsigned n = 4 + static_cast<unsigned>(rng.below(5));
    const auto c = cliquelab::testing::random_circuit(n, 10, 30, rng);
    const unsigned cut = 2 + static_cast<unsigned>(rng.below(2));
    const auto params = CompressionParams::standard(Rational(1, 2), Rational(1, 4), cut);
    const auto res = approximate_circuit(c, params);
    ++circuits;
    if (static_cast<double>(res.trace.replacement_count()) > std::pow(static_cast<double>(n), 2.0 * cut)) ++count_bad;
    for (const auto& g : res.trace.gates)
      for (const auto& r : g.replacements) {
        ++replacements;
        if (!r.coverage.exact || replacement_negative_error(r, Rational(1, 2)) > Rational(1, 4)) ++replacement_bad;
      }
  }

  int audited = 0, audit_bad = 0;
  for (int t = 0; t < 200 && audited < kAuditedFixedPoints; ++t) {
    const auto a = random_approximator(8, rng, 8, 4);
    const auto fixed = closure(a, ClosureParams{Rational(1, 2), Rational(1, 4)}).result;
    if (fixed.is_constant_one() || fixed.is_constant_zero()) continue;
    const auto r = audit_simple_approximator(fixed, 4);
    ++audited;
    if (!r.exact || !r.holds.has_value() || !*r.holds) ++audit_bad;
  }
  report(6,
         pointwise == 0 && replacement_bad == 0 && count_bad == 0 && audited == kAuditedFixedPoints &&
             audit_bad == 0 && checked >= 200,
         fmt("pointwise checked=%llu skipped=%llu violations=%llu; replacements=%llu over-eps=%llu; circuits=%llu "
             "count-violations=%llu; audits=%d failed=%d",
             static_cast<unsigned long long>(checked), static_cast<unsigned long long>(skipped),
             static_cast<unsigned long long>(pointwise), static_cast<unsigned long long>(replacements),
             static_cast<unsigned long long>(replacement_bad), static_cast<unsigned long long>(circuits),
             static_cast<unsigned long long>(count_bad), audited, audit_bad));
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void criterion7() {
  int sort_bad = 0, threshold_bad = 0, golden_bad = 0;
  for (unsigned m = 1; m <= 12; ++m) {
    const auto net = build_sorting_network(m);
    for (std::uint32_t bits = 0; bits < (1u << m); ++bits) {
      std::vector<int> v(m);
      for (unsigned i = 0; i < m; ++i) v[i] = (bits >> i) & 1;
      net.apply(std::span<int>(v));
      if (!std::is_sorted(v.rbegin(), v.rend())) {
        ++sort_bad;
        break;
      }
    }
    CircuitBuilder b(m + 1);
    std::vector<GateId> inputs;
    for (unsigned i = 0; i < m; ++i) inputs.push_back(b.input(0, i + 1));
    const MonotoneCircuit base = b.build(inputs.back());
    for (unsigned tau = 1; tau <= m; ++tau) {
      const auto c = build_threshold(m, tau, inputs, base);
      for (std::uint32_t bits = 0; bits < (1u << m); ++bits) {
        Graph g(m + 1);
        for (unsigned i = 0; i < m; ++i)
          if ((bits >> i) & 1) g.add_edge(0, i + 1);
        if (evaluate(c, g) != (static_cast<unsigned>(__builtin_popcount(bits)) >= tau)) {
          ++threshold_bad;
          break;
        }
      }
    }
  }
  for (const char* name : {"clique_123.mono", "threshold_3_2.mono"}) {
    const std::string text = read_file(std::string(CLIQUELAB_GOLDEN_DIR) + "/" + name);
    try {
      if (text.empty() || to_mono_text(parse_mono(text)) != text) ++golden_bad;
    } catch (const Error&) {
      ++golden_bad;
    }
  }
  if (to_mono_text(build_clique_indicator(VertexSet{0, 1, 2}, 3)) !=
      read_file(std::string(CLIQUELAB_GOLDEN_DIR) + "/clique_123.mono"))
    ++golden_bad;
  report(7, sort_bad == 0 && threshold_bad == 0 && golden_bad == 0,
         fmt("sorting failures=%d threshold failures=%d golden mismatches=%d", sort_bad, threshold_bad, golden_bad));
}

void criterion8() {
  const auto neg = NegDistParams::from_alpha(50, 5);
  std::uint64_t hits = 0;
  for (std::uint64_t t = 0; t < kSanitySamples; ++t) hits += contains_clique(sample_negative(neg, SeedSpec{808, 0}, t), 5);
  const double fraction = static_cast<double>(hits) / static_cast<double>(kSanitySamples);
  report(8, fraction <= kSanityBound,
         fmt("p=%.4f samples=%llu with-5-clique=%llu fraction=%.4f", neg.p,
             static_cast<unsigned long long>(kSanitySamples), static_cast<unsigned long long>(hits), fraction));
}

}  // namespace

int main() {
  const std::vector<std::function<void()>> criteria = {criterion1, criterion2, criterion3, criterion4,
                                                       criterion5, criterion6, criterion7, criterion8};
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    try {
      criteria[i]();
    } catch (const std::exception& e) {
      report(static_cast<int>(i + 1), false, std::string("exception: ") + e.what());
    }
  }
  return failures == 0 ? 0 : 1;
}
