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

#include "cliquelab/distinguisher.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "json.hpp"

#include "cliquelab/parallel.hpp"

namespace cliquelab {

namespace {

constexpr std::uint64_t kSubsetStream = 0;
constexpr std::uint64_t kPositiveStream = 1;
constexpr std::uint64_t kNegativeStream = 2;

void check_shape(const DistinguisherParams& p) {
  if (p.n > kMaxVertices) throw ParameterError("n exceeds " + std::to_string(kMaxVertices));
  if (p.ell < 2 || p.ell > p.beta || p.beta > p.n)
    throw ParameterError("need 2 <= ell <= beta <= n");
  if (p.tau < 1 || p.tau > p.m) throw ParameterError("need 1 <= tau <= m");
}

nlohmann::json ci_json(const FrequencyEstimate& f) {
  return {std::max(0.0, f.estimate - f.half_width), std::min(1.0, f.estimate + f.half_width)};
}

}  // namespace

CliqueSizeChoice select_clique_size(unsigned n, unsigned alpha, unsigned beta, unsigned ell_cap) {
  if (alpha < 4 || alpha > beta || beta > n) throw ParameterError("need 4 <= alpha <= beta <= n");
  const double log_p = -2.0 * std::log(static_cast<double>(n)) / (alpha - 1.0);
  const double log_density = std::log(static_cast<double>(beta) / n);
  const double log_five = std::log(kFeasibilityFactor);
  double best = -std::numeric_limits<double>::infinity();
  for (unsigned ell = 2; ell <= ell_cap; ++ell) {
    const double log_q = ell * log_density;
    const double log_ind = static_cast<double>(choose2(ell)) * log_p;
    const double margin = log_q - (log_five + log_ind);
    if (margin >= 0.0) {
      CliqueSizeChoice c;
      c.ell = ell;
      c.gamma = (alpha - 1.0) / 2.0 * -log_density / std::log(static_cast<double>(n));
      c.q = std::exp(log_q);
      c.p_ind = std::exp(log_ind);
      return c;
    }
    best = std::max(best, margin);
  }
  throw InfeasibleError("no clique size up to " + std::to_string(ell_cap) + " satisfies (beta/n)^l >= 5 p^C(l,2)",
                        std::exp(best));
}

std::uint64_t choose_trial_count(double q, double delta, double k) {
  if (!(q > 0.0 && q <= 1.0)) throw ParameterError("q must lie in (0, 1]");
  if (!(delta > 0.0 && delta <= 1.0)) throw ParameterError("delta must lie in (0, 1]");
  const double m = std::ceil(k / (q * delta));
  if (m > static_cast<double>(kMaxTrialCount))
    throw CapacityError("m = " + std::to_string(m) + " exceeds " + std::to_string(kMaxTrialCount));
  return static_cast<std::uint64_t>(m);
}

unsigned choose_threshold(double p_ind, std::uint64_t m) {
  if (m == 0) throw ParameterError("m must be positive");
  const double tau = std::ceil(4.0 * p_ind * static_cast<double>(m)) + 1.0;
  return static_cast<unsigned>(std::clamp(tau, 1.0, static_cast<double>(m)));
}

DistinguisherParams plan_distinguisher(unsigned n, unsigned alpha, unsigned beta, const SeedSpec& seed,
                                       double delta) {
  const CliqueSizeChoice choice = select_clique_size(n, alpha, beta);
  DistinguisherParams p;
  p.n = n;
  p.alpha = alpha;
  p.beta = beta;
  p.ell = choice.ell;
  p.m = static_cast<unsigned>(choose_trial_count(choice.q, delta));
  p.tau = choose_threshold(choice.p_ind, p.m);
  p.seed = seed;
  p.q = choice.q;
  p.p_ind = choice.p_ind;
  p.gamma = choice.gamma;
  return p;
}

DistinguisherLayout build_distinguisher_layout(const DistinguisherParams& params) {
  check_shape(params);
  DistinguisherLayout layout;
  Rng rng = Rng::for_trial(params.seed.substream(kSubsetStream), 0);
  CircuitBuilder builder(params.n);
  layout.subsets.reserve(params.m);
  layout.indicator_outputs.reserve(params.m);
  for (unsigned i = 0; i < params.m; ++i) {
    layout.subsets.push_back(sample_subset(params.n, params.ell, rng));
    layout.indicator_outputs.push_back(add_clique_indicator(builder, layout.subsets.back()));
  }
  const GateId out = add_threshold(builder, layout.indicator_outputs, params.tau);
  layout.circuit = builder.build(out);
  return layout;
}

MonotoneCircuit build_distinguisher(const DistinguisherParams& params) {
  return build_distinguisher_layout(params).circuit;
}

std::uint64_t expected_distinguisher_size(unsigned ell, unsigned m) {
  return static_cast<std::uint64_t>(m) * (choose2(ell) - 1) + 2 * build_sorting_network(m).comparators.size();
}

std::vector<std::uint32_t> satisfied_indicator_counts(const DistinguisherLayout& layout, const Distribution& dist,
                                                      std::uint64_t trials, const SeedSpec& seed) {
  if (vertex_count(dist) != layout.circuit.n_vertices())
    throw ParameterError("circuit and distribution vertex counts differ");
  using Counts = std::vector<std::uint32_t>;
  const std::uint64_t blocks = (trials + 63) / 64;
  return parallel_reduce<Counts>(
      blocks,
      [&](std::uint64_t begin, std::uint64_t end) {
        Counts local;
        std::vector<Graph> batch;
        for (std::uint64_t b = begin; b < end; ++b) {
          batch.clear();
          const std::uint64_t first = b * 64;
          const std::uint64_t last = std::min(trials, first + 64);
          for (std::uint64_t t = first; t < last; ++t) {
            Rng rng = Rng::for_trial(seed, t);
            batch.push_back(sample(dist, rng));
          }
          const auto values = evaluate_lanes(layout.circuit, [&](unsigned u, unsigned v) {
            std::uint64_t lanes = 0;
            for (std::size_t i = 0; i < batch.size(); ++i)
              if (batch[i].has_edge(u, v)) lanes |= std::uint64_t{1} << i;
            return lanes;
          });
          for (std::size_t i = 0; i < batch.size(); ++i) {
            std::uint32_t count = 0;
            for (GateId g : layout.indicator_outputs) count += (values[g] >> i) & 1;
            local.push_back(count);
          }
        }
        return local;
      },
      [](Counts a, const Counts& b) {
        a.insert(a.end(), b.begin(), b.end());
        return a;
      });
}

bool SuccessReport::passes() const {
  return 3 * accept_pos.successes >= 2 * accept_pos.trials && 3 * reject_neg.successes >= 2 * reject_neg.trials;
}

std::string SuccessReport::to_json() const {
  nlohmann::json j;
  j["n"] = params.n;
  j["alpha"] = params.alpha;
  j["beta"] = params.beta;
  j["ell"] = params.ell;
  j["m"] = params.m;
  j["tau"] = params.tau;
  j["trials"] = trials;
  j["accept_pos"] = accept_pos.estimate;
  j["ci_pos"] = ci_json(accept_pos);
  j["reject_neg"] = reject_neg.estimate;
  j["ci_neg"] = ci_json(reject_neg);
  j["circuit_size"] = circuit_size;
  j["seed"] = {{"master_seed", params.seed.master_seed}, {"stream_id", params.seed.stream_id}};
  return j.dump();
}

SuccessReport measure_success(const DistinguisherParams& params, std::uint64_t trials) {
  return measure_success(params, build_distinguisher(params), trials);
}

SuccessReport measure_success(const DistinguisherParams& params, const MonotoneCircuit& circuit,
                              std::uint64_t trials) {
  if (trials < 100) throw ParameterError("measure_success needs at least 100 trials");
  if (circuit.n_vertices() != params.n) throw ParameterError("circuit and parameter vertex counts differ");
  const auto neg = NegDistParams::from_alpha(params.n, params.alpha);
  const auto pos = PosDistParams::make(params.n, params.beta);
  SuccessReport report;
  report.params = params;
  report.trials = trials;
  report.circuit_size = circuit.size();
  report.accept_pos = estimate_acceptance(circuit, pos, trials, params.seed.substream(kPositiveStream));
  const auto accept_neg = estimate_acceptance(circuit, neg, trials, params.seed.substream(kNegativeStream));
  report.reject_neg = FrequencyEstimate::from_counts(trials - accept_neg.successes, trials);
  return report;
}

}  // namespace cliquelab
