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

#ifndef CLIQUELAB_APPROX_HPP_
#define CLIQUELAB_APPROX_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cliquelab/acceptance.hpp"
#include "cliquelab/circuit.hpp"
#include "cliquelab/common.hpp"
#include "cliquelab/distributions.hpp"
#include "cliquelab/graph.hpp"
#include "cliquelab/sunflower.hpp"

namespace cliquelab {

/// A disjunction of clique indicators, OR over K_A for A in terms(). Kept as
/// an antichain in canonical order (size, then lexicographic). The empty
/// family is constant 0; a term of size <= 1 is the empty conjunction, so any
/// such term makes the approximator constant 1.
class Approximator {
 public:
  Approximator() = default;
  explicit Approximator(unsigned n) : n_(n) {}
  /// Drops duplicates and every term that contains another term.
  Approximator(unsigned n, std::vector<VertexSet> terms);

  static Approximator constant_zero(unsigned n) { return Approximator(n); }
  static Approximator constant_one(unsigned n) { return Approximator(n, {VertexSet{}}); }
  static Approximator edge(unsigned n, unsigned u, unsigned v) { return Approximator(n, {VertexSet{u, v}}); }
  static Approximator from_family(const SetFamily& f) { return Approximator(f.n(), f.sets()); }

  unsigned n() const { return n_; }
  const std::vector<VertexSet>& terms() const { return terms_; }
  bool is_constant_zero() const { return terms_.empty(); }
  bool is_constant_one() const { return !terms_.empty() && terms_.front().size() <= 1; }

  bool evaluate(const Graph& g) const;
  /// Value on the graph K_B plus isolated vertices.
  bool evaluate_on_clique(const VertexSet& b) const;

  /// M_l: number of terms of size l, indexed by l.
  std::vector<std::size_t> size_histogram() const;

  SetFamily to_family() const { return SetFamily(n_, terms_); }

  friend bool operator==(const Approximator&, const Approximator&) = default;

 private:
  unsigned n_ = 0;
  std::vector<VertexSet> terms_;
};

/// Settings for cl_{p,eps}. Robustness is decided exactly when the relevant
/// edges fit kExactCapacity, otherwise by Monte Carlo, where an inconclusive
/// verdict raises InconclusiveError.
struct ClosureParams {
  Rational p;
  Rational eps;
  std::uint64_t mc_trials = 20000;
  SeedSpec seed;
};

/// One closure step: `petals` (all terms strictly containing `core`, whose
/// intersection is `core`) replaced by `core`.
struct Replacement {
  SetFamily petals;
  VertexSet core;
  Coverage coverage;
};

struct ClosureResult {
  Approximator result;
  std::vector<Replacement> log;
};

/// Repeatedly replaces a robust clique sunflower by its core until none is
/// found. Candidate cores are intersections of two or more terms, visited
/// smallest first; for a core C the tested petals are all terms strictly
/// containing C, which suffices because coverage is monotone in the family.
ClosureResult closure(const Approximator& a, const ClosureParams& params);

/// Deletes terms with more than c elements.
Approximator trim(const Approximator& a, unsigned c);

/// The compression icomp = trim_c o cl_{p,eps}; either part may be off.
struct CompressionParams {
  std::optional<ClosureParams> closure;
  std::optional<unsigned> trim_c;

  static CompressionParams identity() { return {}; }
  /// Requires 0 < p < 1, 0 < eps < 1 and c >= 2.
  static CompressionParams standard(const Rational& p, const Rational& eps, unsigned c);
  static CompressionParams trim_only(unsigned c);
};

struct CompressionOutcome {
  Approximator result;
  std::vector<Replacement> replacements;
  std::vector<VertexSet> trimmed;
};

CompressionOutcome compress(const Approximator& a, const CompressionParams& params);

/// Pairwise unions X u Y, absorbed, then compressed.
Approximator approx_and(const Approximator& a, const Approximator& b, const CompressionParams& params);
/// Union of the two families, absorbed, then compressed.
Approximator approx_or(const Approximator& a, const Approximator& b, const CompressionParams& params);

/// The uncompressed operands of the two compression functions.
Approximator and_terms(const Approximator& a, const Approximator& b);
Approximator or_terms(const Approximator& a, const Approximator& b);

struct GateRecord {
  GateId gate = 0;
  GateKind kind = GateKind::kInput;
  GateId left = 0, right = 0;  // operands of AND/OR gates
  Approximator pre;            // before compression
  Approximator post;           // the gate's approximator
  std::vector<Replacement> replacements;
  std::vector<VertexSet> trimmed;
};

struct ApproxTrace {
  unsigned n = 0;
  std::vector<GateRecord> gates;  // indexed by gate id

  std::size_t replacement_count() const;
  /// One JSON object per gate: gate (1-based id), op, terms, histogram,
  /// replacements (petals, core, coverage), trimmed.
  std::string to_json_lines() const;
};

struct ApproximationResult {
  Approximator output;
  ApproxTrace trace;
};

/// Gate-by-gate transformation: an input x_uv becomes {{u,v}}, constants
/// become the constant approximators, AND/OR gates go through approx_and /
/// approx_or.
ApproximationResult approximate_circuit(const MonotoneCircuit& c, const CompressionParams& params);

/// Per-gate one-step errors. zeta_plus: on the planted distribution, the
/// gate applied to its operands' approximators is 1 but the compressed
/// approximator is 0. zeta_minus: on G(n, p), 0 before and 1 after. Input and
/// constant gates have no error.
struct StepError {
  GateId gate = 0;
  GateKind kind = GateKind::kInput;
  FrequencyEstimate zeta_plus;
  FrequencyEstimate zeta_minus;
};

std::vector<StepError> estimate_step_errors(const ApproxTrace& trace, const NegDistParams& neg,
                                            const PosDistParams& pos, std::uint64_t trials, const SeedSpec& seed);

struct ExactStepError {
  GateId gate = 0;
  GateKind kind = GateKind::kInput;
  Rational zeta_plus;
  Rational zeta_minus;
};

/// Exact errors: the negative side enumerates the edges read by any
/// approximator in the trace (at most kExactCapacity), the positive side all
/// C(n, beta) supports (at most kMaxPlantedSupports).
std::vector<ExactStepError> exact_step_errors(const ApproxTrace& trace, const Rational& p, const PosDistParams& pos);

/// Pr_{G(n,p)}[K_core in G and no petal clique in G] for one replacement,
/// i.e. p^C(|core|,2) (1 - coverage); exact when the coverage is.
Rational replacement_negative_error(const Replacement& r, const Rational& p);

struct AuditReport {
  std::vector<std::size_t> histogram;  // M_l
  Rational bound;                      // sum over l >= 2 of (beta/n)^l M_l
  bool constant_one = false;
  bool exact = true;
  Rational acceptance;          // exact Pr over the planted distribution
  FrequencyEstimate estimate;   // when C(n, beta) exceeds kMaxPlantedSupports
  /// acceptance <= bound; unset for a constant-1 approximator, which the
  /// union bound does not cover.
  std::optional<bool> holds;
};

AuditReport audit_simple_approximator(const Approximator& a, unsigned beta, std::uint64_t mc_trials = 100000,
                                      const SeedSpec& seed = {});

}  // namespace cliquelab

#endif  // CLIQUELAB_APPROX_HPP_
