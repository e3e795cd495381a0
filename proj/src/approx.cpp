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

#include "cliquelab/approx.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include "json.hpp"

#include "cliquelab/enumeration.hpp"
#include "cliquelab/parallel.hpp"

namespace cliquelab {

Approximator::Approximator(unsigned n, std::vector<VertexSet> terms) : n_(n) {
  std::sort(terms.begin(), terms.end());
  terms.erase(std::unique(terms.begin(), terms.end()), terms.end());
  for (const auto& t : terms) {
    if (t.bound() > n_) throw ParameterError("term " + t.to_string() + " is not a subset of the universe");
    const bool absorbed = std::any_of(terms_.begin(), terms_.end(), [&](const VertexSet& s) { return s.is_subset_of(t); });
    if (!absorbed) terms_.push_back(t);
  }
}

bool Approximator::evaluate(const Graph& g) const {
  if (g.n() != n_) throw ParameterError("graph and approximator vertex counts differ");
  return std::any_of(terms_.begin(), terms_.end(),
                     [&](const VertexSet& t) { return t.size() <= 1 || g.contains_clique_on(t); });
}

bool Approximator::evaluate_on_clique(const VertexSet& b) const {
  return std::any_of(terms_.begin(), terms_.end(),
                     [&](const VertexSet& t) { return t.size() <= 1 || t.is_subset_of(b); });
}

std::vector<std::size_t> Approximator::size_histogram() const {
  std::vector<std::size_t> h(terms_.empty() ? 1 : terms_.back().size() + 1, 0);
  for (const auto& t : terms_) ++h[t.size()];
  return h;
}

namespace {

void check_same_universe(const Approximator& a, const Approximator& b) {
  if (a.n() != b.n()) throw ParameterError("approximators live on different universes");
}

// Intersections of two or more terms, in canonical order.
std::vector<VertexSet> candidate_cores(const std::vector<VertexSet>& terms) {
  std::set<VertexSet> found;
  std::vector<VertexSet> frontier;
  for (std::size_t i = 0; i < terms.size(); ++i)
    for (std::size_t j = i + 1; j < terms.size(); ++j)
      if (found.insert(terms[i] & terms[j]).second) frontier.push_back(terms[i] & terms[j]);
  while (!frontier.empty()) {
    std::vector<VertexSet> next;
    for (const auto& x : frontier)
      for (const auto& t : terms) {
        const VertexSet y = x & t;
        if (y != x && found.insert(y).second) next.push_back(y);
      }
    frontier = std::move(next);
  }
  return {found.begin(), found.end()};
}

Coverage robust_coverage(const SetFamily& petals, const VertexSet& core, const ClosureParams& params,
                         std::uint64_t check_id, bool& robust) {
  try {
    Coverage cov = coverage_prob_clique(petals, core, params.p, ExactMode{});
    robust = cov.value >= 1 - params.eps;
    return cov;
  } catch (const CapacityError&) {
  }
  const auto verdict = check_robust(petals, core, params.p, params.eps, RobustnessKind::kClique,
                                    MonteCarloMode{params.mc_trials, params.seed.substream(check_id)});
  if (verdict.verdict == Verdict::kInconclusive) {
    const auto& e = verdict.probability.estimate;
    throw InconclusiveError("robustness of " + std::to_string(petals.size()) + " petals around core " +
                            core.to_string() + " is inconclusive: estimate " + std::to_string(e.estimate) +
                            " +- " + std::to_string(e.half_width) + " against threshold " +
                            std::to_string(to_double(verdict.threshold)));
  }
  robust = verdict.verdict == Verdict::kPass;
  return verdict.probability;
}

}  // namespace

ClosureResult closure(const Approximator& a, const ClosureParams& params) {
  if (params.p < 0 || params.p > 1) throw ParameterError("p outside [0, 1]");
  if (params.eps < 0 || params.eps > 1) throw ParameterError("eps outside [0, 1]");
  ClosureResult out{a, {}};
  std::uint64_t checks = 0;
  // Verdicts only depend on (petals, core), so a negative one stays valid.
  std::set<std::pair<std::vector<VertexSet>, VertexSet>> rejected;
  bool changed = true;
  while (changed) {
    changed = false;
    const auto& terms = out.result.terms();
    for (const auto& core : candidate_cores(terms)) {
      std::vector<VertexSet> petals;
      VertexSet meet;
      bool first = true;
      for (const auto& t : terms)
        if (core.is_subset_of(t) && core != t) {
          petals.push_back(t);
          meet = first ? t : (meet & t);
          first = false;
        }
      if (petals.size() < 2 || meet != core) continue;
      if (rejected.count({petals, core})) continue;
      const SetFamily family(a.n(), petals);
      bool robust = false;
      Coverage cov = robust_coverage(family, core, params, checks++, robust);
      if (!robust) {
        rejected.insert({petals, core});
        continue;
      }
      auto next = terms;
      next.push_back(core);
      out.log.push_back({family, core, std::move(cov)});
      out.result = Approximator(a.n(), std::move(next));
      changed = true;
      break;
    }
  }
  return out;
}

Approximator trim(const Approximator& a, unsigned c) {
  std::vector<VertexSet> kept;
  for (const auto& t : a.terms())
    if (t.size() <= c) kept.push_back(t);
  return Approximator(a.n(), std::move(kept));
}

CompressionParams CompressionParams::standard(const Rational& p, const Rational& eps, unsigned c) {
  if (p <= 0 || p >= 1) throw ParameterError("p must lie in (0, 1)");
  if (eps <= 0 || eps >= 1) throw ParameterError("eps must lie in (0, 1)");
  if (c < 2) throw ParameterError("c must be at least 2");
  CompressionParams params;
  params.closure = ClosureParams{p, eps, 20000, SeedSpec{}};
  params.trim_c = c;
  return params;
}

CompressionParams CompressionParams::trim_only(unsigned c) {
  if (c < 2) throw ParameterError("c must be at least 2");
  CompressionParams params;
  params.trim_c = c;
  return params;
}

CompressionOutcome compress(const Approximator& a, const CompressionParams& params) {
  CompressionOutcome out{a, {}, {}};
  if (params.closure) {
    auto cl = closure(a, *params.closure);
    out.result = std::move(cl.result);
    out.replacements = std::move(cl.log);
  }
  if (params.trim_c) {
    for (const auto& t : out.result.terms())
      if (t.size() > *params.trim_c) out.trimmed.push_back(t);
    out.result = trim(out.result, *params.trim_c);
  }
  return out;
}

Approximator and_terms(const Approximator& a, const Approximator& b) {
  check_same_universe(a, b);
  std::vector<VertexSet> unions;
  for (const auto& x : a.terms())
    for (const auto& y : b.terms()) unions.push_back(x | y);
  return Approximator(a.n(), std::move(unions));
}

Approximator or_terms(const Approximator& a, const Approximator& b) {
  check_same_universe(a, b);
  auto all = a.terms();
  all.insert(all.end(), b.terms().begin(), b.terms().end());
  return Approximator(a.n(), std::move(all));
}

Approximator approx_and(const Approximator& a, const Approximator& b, const CompressionParams& params) {
  return compress(and_terms(a, b), params).result;
}

Approximator approx_or(const Approximator& a, const Approximator& b, const CompressionParams& params) {
  return compress(or_terms(a, b), params).result;
}

namespace {

nlohmann::json set_json(const VertexSet& s) {
  auto j = nlohmann::json::array();
  s.for_each([&](unsigned v) { j.push_back(v + 1); });
  return j;
}

nlohmann::json coverage_json(const Coverage& c) {
  if (c.exact) return {{"exact", true}, {"value", c.value.str()}};
  return {{"exact", false}, {"estimate", c.estimate.estimate}, {"half_width", c.estimate.half_width},
          {"trials", c.estimate.trials}};
}

const char* op_name(GateKind k) {
  switch (k) {
    case GateKind::kInput:
      return "input";
    case GateKind::kAnd:
      return "and";
    case GateKind::kOr:
      return "or";
    case GateKind::kConst0:
      return "const0";
    case GateKind::kConst1:
      return "const1";
  }
  return "?";
}

}  // namespace

std::size_t ApproxTrace::replacement_count() const {
  std::size_t total = 0;
  for (const auto& g : gates) total += g.replacements.size();
  return total;
}

std::string ApproxTrace::to_json_lines() const {
  std::string out;
  for (const auto& g : gates) {
    nlohmann::json j;
    j["gate"] = g.gate + 1;
    j["op"] = op_name(g.kind);
    auto terms = nlohmann::json::array();
    for (const auto& t : g.post.terms()) terms.push_back(set_json(t));
    j["terms"] = terms;
    j["histogram"] = g.post.size_histogram();
    auto reps = nlohmann::json::array();
    for (const auto& r : g.replacements) {
      auto petals = nlohmann::json::array();
      for (const auto& s : r.petals.sets()) petals.push_back(set_json(s));
      reps.push_back({{"petals", petals}, {"core", set_json(r.core)}, {"coverage", coverage_json(r.coverage)}});
    }
    j["replacements"] = reps;
    auto trimmed = nlohmann::json::array();
    for (const auto& t : g.trimmed) trimmed.push_back(set_json(t));
    j["trimmed"] = trimmed;
    out += j.dump();
    out += '\n';
  }
  return out;
}

ApproximationResult approximate_circuit(const MonotoneCircuit& c, const CompressionParams& params) {
  const unsigned n = c.n_vertices();
  ApproximationResult out;
  out.trace.n = n;
  out.trace.gates.reserve(c.gates().size());
  for (GateId id = 0; id < c.gates().size(); ++id) {
    const Gate& g = c.gates()[id];
    GateRecord rec;
    rec.gate = id;
    rec.kind = g.kind;
    switch (g.kind) {
      case GateKind::kInput:
        rec.pre = rec.post = Approximator::edge(n, g.a, g.b);
        break;
      case GateKind::kConst0:
        rec.pre = rec.post = Approximator::constant_zero(n);
        break;
      case GateKind::kConst1:
        rec.pre = rec.post = Approximator::constant_one(n);
        break;
      case GateKind::kAnd:
      case GateKind::kOr: {
        rec.left = g.a;
        rec.right = g.b;
        const auto& x = out.trace.gates[g.a].post;
        const auto& y = out.trace.gates[g.b].post;
        rec.pre = g.kind == GateKind::kAnd ? and_terms(x, y) : or_terms(x, y);
        auto outcome = compress(rec.pre, params);
        rec.post = std::move(outcome.result);
        rec.replacements = std::move(outcome.replacements);
        rec.trimmed = std::move(outcome.trimmed);
        break;
      }
    }
    out.trace.gates.push_back(std::move(rec));
  }
  out.output = out.trace.gates.at(c.output()).post;
  return out;
}

namespace {

// Per gate: (exact gate on the operands' approximators, compressed value).
template <typename Eval>
void gate_values(const ApproxTrace& trace, Eval&& eval, std::vector<char>& before, std::vector<char>& after) {
  const std::size_t g = trace.gates.size();
  after.assign(g, 0);
  before.assign(g, 0);
  for (std::size_t i = 0; i < g; ++i) {
    const auto& rec = trace.gates[i];
    after[i] = eval(i, rec.post);
    if (rec.kind == GateKind::kAnd)
      before[i] = after[rec.left] && after[rec.right];
    else if (rec.kind == GateKind::kOr)
      before[i] = after[rec.left] || after[rec.right];
    else
      before[i] = after[i];
  }
}

}  // namespace

std::vector<StepError> estimate_step_errors(const ApproxTrace& trace, const NegDistParams& neg,
                                            const PosDistParams& pos, std::uint64_t trials, const SeedSpec& seed) {
  if (neg.n != trace.n || pos.n != trace.n) throw ParameterError("distribution and trace vertex counts differ");
  if (trials == 0) throw ParameterError("need at least one trial");
  const std::size_t g = trace.gates.size();
  using Counts = std::vector<std::uint64_t>;
  auto count_events = [&](const Distribution& dist, const SeedSpec& s, bool positive) {
    return parallel_reduce<Counts>(
        trials,
        [&](std::uint64_t begin, std::uint64_t end) {
          Counts local(g, 0);
          std::vector<char> before, after;
          for (std::uint64_t t = begin; t < end; ++t) {
            Rng rng = Rng::for_trial(s, t);
            const Graph graph = sample(dist, rng);
            gate_values(
                trace, [&](std::size_t, const Approximator& a) { return a.evaluate(graph); }, before, after);
            for (std::size_t i = 0; i < g; ++i)
              local[i] += positive ? (before[i] && !after[i]) : (!before[i] && after[i]);
          }
          return local;
        },
        [](Counts a, const Counts& b) {
          for (std::size_t i = 0; i < b.size(); ++i) a[i] += b[i];
          return a;
        });
  };
  const Counts plus = count_events(pos, seed.substream(1), true);
  const Counts minus = count_events(neg, seed.substream(2), false);
  std::vector<StepError> out;
  for (std::size_t i = 0; i < g; ++i)
    out.push_back({static_cast<GateId>(i), trace.gates[i].kind, FrequencyEstimate::from_counts(plus[i], trials),
                   FrequencyEstimate::from_counts(minus[i], trials)});
  return out;
}

std::vector<ExactStepError> exact_step_errors(const ApproxTrace& trace, const Rational& p, const PosDistParams& pos) {
  if (pos.n != trace.n) throw ParameterError("distribution and trace vertex counts differ");
  const std::size_t g = trace.gates.size();

  // Negative side: enumerate the edges read by any term of size >= 2.
  std::map<std::pair<unsigned, unsigned>, unsigned> index;
  for (const auto& rec : trace.gates)
    for (const auto& t : rec.post.terms()) {
      const auto m = t.members();
      for (std::size_t i = 0; i < m.size(); ++i)
        for (std::size_t j = i + 1; j < m.size(); ++j) index.emplace(std::pair{m[i], m[j]}, 0);
    }
  unsigned r = 0;
  for (auto& [edge, id] : index) id = r++;
  if (r > kExactCapacity)
    throw CapacityError("exact step errors need " + std::to_string(r) + " relevant edges; capacity is " +
                        std::to_string(kExactCapacity));
  std::vector<std::vector<std::uint32_t>> masks(g);
  std::vector<char> trivially_true(g, 0);
  for (std::size_t i = 0; i < g; ++i)
    for (const auto& t : trace.gates[i].post.terms()) {
      if (t.size() <= 1) {
        trivially_true[i] = 1;
        continue;
      }
      std::uint32_t m = 0;
      const auto mem = t.members();
      for (std::size_t a = 0; a < mem.size(); ++a)
        for (std::size_t b = a + 1; b < mem.size(); ++b) m |= 1u << index.at({mem[a], mem[b]});
      masks[i].push_back(m);
    }

  std::vector<BernoulliProfile> minus(g, BernoulliProfile{r, std::vector<std::uint64_t>(r + 1, 0)});
  std::vector<char> before, after;
  for (std::uint64_t s = 0; s < (std::uint64_t{1} << r); ++s) {
    const auto state = static_cast<std::uint32_t>(s);
    gate_values(
        trace,
        [&](std::size_t i, const Approximator&) {
          if (trivially_true[i]) return true;
          return std::any_of(masks[i].begin(), masks[i].end(), [&](std::uint32_t m) { return (m & ~state) == 0; });
        },
        before, after);
    for (std::size_t i = 0; i < g; ++i)
      if (!before[i] && after[i]) ++minus[i].counts[std::popcount(state)];
  }

  // Positive side: every support is equally likely.
  const BigInt supports = binomial(pos.n, pos.beta);
  if (supports > kMaxPlantedSupports) throw CapacityError("too many planted supports for exact step errors");
  std::vector<std::uint64_t> plus(g, 0);
  for_each_subset(pos.n, pos.beta, [&](const VertexSet& b) {
    gate_values(
        trace, [&](std::size_t, const Approximator& a) { return a.evaluate_on_clique(b); }, before, after);
    for (std::size_t i = 0; i < g; ++i)
      if (before[i] && !after[i]) ++plus[i];
  });

  std::vector<ExactStepError> out;
  for (std::size_t i = 0; i < g; ++i)
    out.push_back({static_cast<GateId>(i), trace.gates[i].kind, Rational(BigInt(plus[i]), supports),
                   minus[i].expectation(p)});
  return out;
}

Rational replacement_negative_error(const Replacement& r, const Rational& p) {
  const Rational miss = r.coverage.exact ? 1 - r.coverage.value : 1 - Rational(r.coverage.estimate.estimate);
  return power(p, static_cast<unsigned>(choose2(r.core.size()))) * miss;
}

AuditReport audit_simple_approximator(const Approximator& a, unsigned beta, std::uint64_t mc_trials,
                                      const SeedSpec& seed) {
  const unsigned n = a.n();
  const auto pos = PosDistParams::make(n, beta);
  AuditReport report;
  report.histogram = a.size_histogram();
  report.constant_one = a.is_constant_one();
  const Rational density(beta, n);
  for (std::size_t l = 2; l < report.histogram.size(); ++l)
    report.bound += power(density, static_cast<unsigned>(l)) * static_cast<unsigned long long>(report.histogram[l]);

  const BigInt supports = binomial(n, beta);
  if (supports <= kMaxPlantedSupports) {
    std::uint64_t accepted = 0;
    for_each_subset(n, beta, [&](const VertexSet& b) { accepted += a.evaluate_on_clique(b); });
    report.exact = true;
    report.acceptance = Rational(BigInt(accepted), supports);
  } else {
    const std::uint64_t hits = parallel_sum<std::uint64_t>(mc_trials, [&](std::uint64_t begin, std::uint64_t end) {
      std::uint64_t local = 0;
      for (std::uint64_t t = begin; t < end; ++t) {
        Rng rng = Rng::for_trial(seed, t);
        local += a.evaluate_on_clique(sample_subset(n, pos.beta, rng));
      }
      return local;
    });
    report.exact = false;
    report.estimate = FrequencyEstimate::from_counts(hits, mc_trials);
    report.acceptance = Rational(report.estimate.estimate);
  }
  if (!report.constant_one) {
    const Rational lower = report.exact ? report.acceptance
                                        : Rational(std::max(0.0, report.estimate.estimate - report.estimate.half_width));
    report.holds = lower <= report.bound;
  }
  return report;
}

}  // namespace cliquelab
