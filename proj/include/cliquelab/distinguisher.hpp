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

#ifndef CLIQUELAB_DISTINGUISHER_HPP_
#define CLIQUELAB_DISTINGUISHER_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "cliquelab/acceptance.hpp"
#include "cliquelab/circuit.hpp"
#include "cliquelab/distributions.hpp"
#include "cliquelab/random.hpp"

namespace cliquelab {

inline constexpr unsigned kDefaultCliqueSizeCap = 64;
inline constexpr double kDefaultDelta = 0.1;
/// Numerator of the trial count m = ceil(K / (q * delta)).
inline constexpr double kTrialConstant = 8.0;
inline constexpr std::uint64_t kMaxTrialCount = 10'000'000;
/// Required ratio q / p_ind for a usable clique size.
inline constexpr double kFeasibilityFactor = 5.0;

/// No clique size up to the cap passes the feasibility gate.
class InfeasibleError : public ParameterError {
 public:
  InfeasibleError(const std::string& what, double best_ratio) : ParameterError(what), best_ratio_(best_ratio) {}
  /// Largest q / (5 p_ind) seen over the scanned sizes (below 1).
  double best_ratio() const { return best_ratio_; }

 private:
  double best_ratio_;
};

struct CliqueSizeChoice {
  unsigned ell = 0;
  double gamma = 0.0;  // (alpha - 1)/2 * log(n/beta) / log(n)
  double q = 0.0;      // (beta/n)^ell
  double p_ind = 0.0;  // p^C(ell, 2)
};

/// Smallest ell in [2, ell_cap] with (beta/n)^ell >= 5 p^C(ell,2), compared
/// in log space. Requires 4 <= alpha <= beta <= n.
CliqueSizeChoice select_clique_size(unsigned n, unsigned alpha, unsigned beta,
                                    unsigned ell_cap = kDefaultCliqueSizeCap);

/// m = ceil(K / (q delta)). Requires 0 < q <= 1, 0 < delta <= 1.
std::uint64_t choose_trial_count(double q, double delta = kDefaultDelta, double k = kTrialConstant);

/// tau = ceil(4 p_ind m) + 1, clamped to [1, m].
unsigned choose_threshold(double p_ind, std::uint64_t m);

struct DistinguisherParams {
  unsigned n = 0;
  unsigned alpha = 0;
  unsigned beta = 0;
  unsigned ell = 0;
  unsigned m = 0;
  unsigned tau = 0;
  SeedSpec seed;
  // Feasibility certificate; filled in by plan_distinguisher.
  double q = 0.0;
  double p_ind = 0.0;
  double gamma = 0.0;

  /// True when q >= 5 p_ind.
  bool feasible() const { return q > 0.0 && q >= kFeasibilityFactor * p_ind; }
};

/// Selects ell, m and tau for (n, alpha, beta). Throws InfeasibleError or
/// CapacityError.
DistinguisherParams plan_distinguisher(unsigned n, unsigned alpha, unsigned beta, const SeedSpec& seed,
                                       double delta = kDefaultDelta);

/// The assembled circuit with the pieces a structural audit needs.
struct DistinguisherLayout {
  MonotoneCircuit circuit;
  std::vector<VertexSet> subsets;         // A_1..A_m
  std::vector<GateId> indicator_outputs;  // output gate of each K_{A_i}
};

/// Threshold tau over m clique indicators on independent uniform ell-subsets
/// drawn from params.seed. Checks 2 <= ell <= beta <= n and 1 <= tau <= m
/// but not feasibility.
DistinguisherLayout build_distinguisher_layout(const DistinguisherParams& params);
MonotoneCircuit build_distinguisher(const DistinguisherParams& params);

/// m (C(ell,2) - 1) + 2 |Batcher(m)|.
std::uint64_t expected_distinguisher_size(unsigned ell, unsigned m);

/// Number of satisfied indicators in each of `trials` seeded samples.
std::vector<std::uint32_t> satisfied_indicator_counts(const DistinguisherLayout& layout, const Distribution& dist,
                                                      std::uint64_t trials, const SeedSpec& seed);

struct SuccessReport {
  DistinguisherParams params;
  std::uint64_t trials = 0;
  FrequencyEstimate accept_pos;
  FrequencyEstimate reject_neg;
  std::uint64_t circuit_size = 0;

  /// Both rates reach 2/3.
  bool passes() const;
  /// JSON object with keys n, alpha, beta, ell, m, tau, trials, accept_pos,
  /// ci_pos, reject_neg, ci_neg, circuit_size, seed.
  std::string to_json() const;
};

/// Builds the circuit and estimates both rates with `trials` samples per
/// distribution (trials >= 100). The negative side is G(n, p) with p
/// derived from alpha.
SuccessReport measure_success(const DistinguisherParams& params, std::uint64_t trials);
SuccessReport measure_success(const DistinguisherParams& params, const MonotoneCircuit& circuit,
                              std::uint64_t trials);

}  // namespace cliquelab

#endif  // CLIQUELAB_DISTINGUISHER_HPP_
