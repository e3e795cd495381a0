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

#ifndef CLIQUELAB_SUNFLOWER_HPP_
#define CLIQUELAB_SUNFLOWER_HPP_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "cliquelab/acceptance.hpp"
#include "cliquelab/common.hpp"
#include "cliquelab/graph.hpp"
#include "cliquelab/random.hpp"

namespace cliquelab {

/// Distinct subsets of [n], optionally all of one size.
class SetFamily {
 public:
  SetFamily() = default;
  /// Rejects out-of-range members, duplicates, and (when `uniformity` is
  /// given) sets of the wrong size.
  SetFamily(unsigned n, std::vector<VertexSet> sets, std::optional<unsigned> uniformity = std::nullopt);

  unsigned n() const { return n_; }
  const std::vector<VertexSet>& sets() const { return sets_; }
  std::size_t size() const { return sets_.size(); }
  bool empty() const { return sets_.empty(); }
  const VertexSet& operator[](std::size_t i) const { return sets_[i]; }
  std::optional<unsigned> uniformity() const { return uniformity_; }

  VertexSet union_of() const;
  /// Intersection of all members; empty for the empty family.
  VertexSet intersection() const;
  SetFamily subfamily(std::span<const std::size_t> indices) const;

  friend bool operator==(const SetFamily&, const SetFamily&) = default;

 private:
  unsigned n_ = 0;
  std::vector<VertexSet> sets_;
  std::optional<unsigned> uniformity_;
};

/// "FAMILY n=<n>" then one "S: v1 v2 ..." line per set, 1-based, ascending.
std::string to_family_text(const SetFamily& f);
SetFamily parse_family(const std::string& text);

struct SunflowerWitness {
  std::vector<std::size_t> petal_indices;  // ascending
  VertexSet core;
};

/// True when the chosen members pairwise intersect exactly in `core`.
bool is_sunflower(const SetFamily& f, std::span<const std::size_t> petals, const VertexSet& core);

inline constexpr std::uint64_t kDefaultSearchBudget = 50'000'000;

/// Exact search for k members with a common pairwise intersection: for each
/// candidate core (a pairwise intersection) backtrack over members whose
/// parts outside the core are pairwise disjoint. Returns none when |f| < k.
/// Throws CapacityError when the search visits more than `budget` nodes.
std::optional<SunflowerWitness> find_k_sunflower(const SetFamily& f, unsigned k,
                                                 std::uint64_t budget = kDefaultSearchBudget);

/// l! (k-1)^l.
std::uint64_t erdos_rado_bound(unsigned ell, unsigned k);

struct ErdosRadoReport {
  unsigned ell = 0;
  unsigned k = 0;
  std::size_t family_size = 0;
  std::uint64_t families_checked = 0;
  std::vector<SetFamily> without_sunflower;
};

/// Draws `count` random l-uniform families of `family_size` distinct sets
/// (default erdos_rado_bound(ell, k)) on universes of size in [min_n, max_n]
/// and records any family with no k-sunflower.
ErdosRadoReport verify_erdos_rado(unsigned ell, unsigned k, unsigned min_n, unsigned max_n, std::uint64_t count,
                                  const SeedSpec& seed, std::size_t family_size = 0);

/// Exhaustive search for an l-uniform family on [n] with `size` members and
/// no k-sunflower. Returns one such family, or none once the search space is
/// exhausted.
std::optional<SetFamily> find_sunflower_free_family(unsigned n, unsigned ell, unsigned k, std::size_t size,
                                                    std::uint64_t budget = kDefaultSearchBudget);

struct ExactMode {};
struct MonteCarloMode {
  std::uint64_t trials = 0;
  SeedSpec seed;
};
using CoverageMode = std::variant<ExactMode, MonteCarloMode>;

/// Exact rational, or a frequency with a 99% CI.
struct Coverage {
  bool exact = true;
  Rational value;             // exact mode
  FrequencyEstimate estimate;  // Monte-Carlo mode
  unsigned relevant = 0;      // size of the enumerated/sampled universe

  double as_double() const { return exact ? to_double(value) : estimate.estimate; }
};

/// Pr_W[some S in f has S subset of W u core], W a p-random subset of [n].
/// Exact mode needs |union(f) \ core| <= kExactCapacity.
Coverage coverage_prob_set(const SetFamily& f, const VertexSet& core, const Rational& p, const CoverageMode& mode);

/// Pr_G[some S in f has K_S subset of G u K_core], G ~ G(n, p).
/// Exact mode needs at most kExactCapacity relevant edges.
Coverage coverage_prob_clique(const SetFamily& f, const VertexSet& core, const Rational& p,
                              const CoverageMode& mode);

enum class RobustnessKind { kSet, kClique };
enum class Verdict { kPass, kFail, kInconclusive };

const char* verdict_name(Verdict v);

struct RobustnessVerdict {
  RobustnessKind kind = RobustnessKind::kSet;
  Coverage probability;
  Rational threshold;  // 1 - eps
  Verdict verdict = Verdict::kFail;
};

/// Compares coverage against 1 - eps. Exact mode never returns
/// kInconclusive; Monte-Carlo mode does when the 99% CI straddles 1 - eps.
RobustnessVerdict check_robust(const SetFamily& f, const VertexSet& core, const Rational& p, const Rational& eps,
                               RobustnessKind kind, const CoverageMode& mode);

/// Core {0..c-1} plus k pairwise disjoint petals of l - c fresh vertices.
SetFamily canonical_sunflower(unsigned ell, unsigned k, unsigned c);

struct SunflowerRcsReport {
  unsigned ell = 0, k = 0, c = 0;
  Rational p;
  Rational failure;      // 1 - exact clique coverage
  Rational closed_form;  // (1 - p^(C(l,2) - C(c,2)))^k
  double bound = 0.0;    // exp(-k p^C(l,2))
  bool within_bound = false;
};

/// Exact clique coverage of the canonical sunflower against exp(-k p^C(l,2)).
SunflowerRcsReport verify_sunflower_is_rcs(unsigned ell, unsigned k, unsigned c, const Rational& p);

struct RsImpliesRcsReport {
  std::uint64_t generated = 0;
  std::uint64_t premise_satisfied = 0;
  std::vector<SetFamily> counterexamples;
};

/// Random l-uniform families on universes of size <= max_n. For each family
/// f with core C = intersection(f) whose exact set coverage at p^l is at
/// least 1 - eps/l^2, checks exact clique coverage at p is at least 1 - eps.
/// Stops after `premise_target` premise-satisfying families or
/// `max_attempts` draws.
RsImpliesRcsReport verify_rs_implies_rcs(std::uint64_t premise_target, unsigned max_n, unsigned ell,
                                         const Rational& p, const Rational& eps, const SeedSpec& seed,
                                         std::uint64_t max_attempts = 1'000'000);

/// Random l-uniform family generator used by the lemma checks:
/// mostly families of supersets of a random core, sometimes unstructured.
SetFamily random_uniform_family(unsigned n, unsigned ell, Rng& rng);

}  // namespace cliquelab

#endif  // CLIQUELAB_SUNFLOWER_HPP_
